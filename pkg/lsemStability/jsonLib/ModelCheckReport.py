def asJSON(self):
    from lsemStability.jsonLib import finite_or_none

    return {
        "alpha_min": finite_or_none(self.alpha_min),
        "lambda_param": finite_or_none(self.lambda_param),
        "satisfied": self.satisfied,
        "ratios": {
            key: [finite_or_none(r) for r in values]
            for key, values in sorted(self.per_index_ratios.items())
        },
    }
