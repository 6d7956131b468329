# Code for writing a ConditionReport as JSON
def asJSON(self):
    from lsemStability.jsonLib import finite_or_none

    edges, counts = self.histogram
    return {
        "trials": self.trials,
        "mean_kappa": finite_or_none(self.mean_kappa),
        "failed": self.failed_trials,
        "kappas": [float(k) for k in self.kappas],
        "histogram": {
            "edges": [float(e) for e in edges],
            "counts": [int(c) for c in counts],
        },
    }


def save(self, path):
    from lsemStability.jsonLib import save_json

    save_json(self.asJSON(), path)
