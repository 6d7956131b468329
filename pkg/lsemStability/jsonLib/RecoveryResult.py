def asJSON(self):
    from lsemStability.jsonLib import matrix_to_list, finite_or_none

    return {
        "lambda": matrix_to_list(self.lambda_hat),
        "omega": matrix_to_list(self.omega_hat),
        "min_pivots": [finite_or_none(p) for p in self.min_pivots],
    }


def save(self, path):
    from lsemStability.jsonLib import save_json

    save_json(self.asJSON(), path)
