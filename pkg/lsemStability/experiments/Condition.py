"""
Randomized Condition Number
===========================

``condition`` estimates the randomized condition number of an instance:
the mean over ``--trials`` random perturbations of Sigma of::

    RelDist(Lambda, Lambda~) / RelDist(Sigma, Sigma~)

where ``RelDist(A, B)`` is the largest relative change over the non-zero
entries of ``A``. ``--mode`` selects the perturbation (``gaussian`` noise of
std ``--eps``, ``relative`` noise of relative size exactly ``--eps`` or a
``uniform`` shift by ``--eps``) and ``--entries`` whether only the non-zero
entries of Sigma move::

    lsemlab.py condition --seed 1 --sigma sigma.csv --graph graph.json \\
        --mode relative --eps 1e-9

Outputs are ``report.json``, ``kappa.csv`` and ``histogram.csv``.
``--sweep`` additionally runs relative perturbations of size ``1e-7``,
``1e-8`` and ``1e-9`` into ``sweep.csv``, to show the estimate settling as
the perturbation shrinks. On a path, ``--check-model`` writes
``model-check.json``: the local-dominance ratios of Sigma and, when the data
properties hold, the resulting upper bound on the condition number.
"""
import pandas as pd
from lsemStability.errors import BoundInapplicable, NotAPath
from lsemStability.stability import (
    baseline_recovery,
    check_model_assumptions,
    condition_number_sweep,
    randomized_condition_number,
    theoretical_kappa_bound,
)
from lsemStability.experiments import (
    add_input_arguments,
    add_perturbation_arguments,
    histogram_frame,
    kappa_frame,
    load_inputs,
    perturbation_spec,
)

COMMANDS = ["Condition"]


class Condition:
    """Randomized condition number of a covariance matrix."""

    command = "condition"
    stochastic = True
    plot = "set logscale x; plot 'histogram.csv' using 1:3 with steps"

    @classmethod
    def add_arguments(self, parser):
        add_input_arguments(parser)
        add_perturbation_arguments(parser)
        parser.add_argument(
            "--sweep", action="store_true", help="also sweep relative perturbation sizes"
        )
        parser.add_argument(
            "--check-model", action="store_true", help="check the data properties (paths only)"
        )

    @classmethod
    def model_check(self, sigma, g, gamma):
        if not g.is_path:
            raise NotAPath("--check-model needs a path graph")
        check = check_model_assumptions(sigma, baseline_recovery(sigma, g))
        data = check.asJSON()
        data["bound"] = None
        if check.satisfied:
            try:
                data["bound"] = theoretical_kappa_bound(
                    check.alpha_min, gamma, g.n, check.lambda_param, strict=False
                )
            except BoundInapplicable as e:
                data["bound_error"] = str(e)
        return data

    @classmethod
    def action(self, runner, args):
        sigma, g = load_inputs(args)
        spec = perturbation_spec(args)
        report = randomized_condition_number(sigma, g, spec, args.trials, runner.rng(0))
        runner.add_json("report.json", report.asJSON())
        runner.add_csv("kappa.csv", kappa_frame(report))
        runner.add_csv("histogram.csv", histogram_frame(report))
        if args.sweep:
            rows = [
                [gamma, r.mean_kappa, r.failed_trials]
                for gamma, r in condition_number_sweep(sigma, g, args.trials, runner.rng(1))
            ]
            runner.add_csv("sweep.csv", pd.DataFrame(rows, columns=["gamma", "mean_kappa", "failed"]))
        if args.check_model:
            gamma = spec.magnitude if spec.mode == "relative" else 0.0
            runner.add_json("model-check.json", self.model_check(sigma, g, gamma))
