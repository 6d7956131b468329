"""
Bad Regions
===========

An unstable instance is only worrying if its neighbours are unstable too.
The ``bad-region`` command jitters the parameters of a base instance with
independent ``N(0, region_std^2)`` noise on their non-zero entries and
measures the randomized condition number around each jittered center::

    lsemlab.py bad-region --seed 3 --region-std 1e-3 --target lambda

``--target`` picks which parameters are jittered (``lambda``, ``omega`` or
``both``) and ``--base`` whether the base instance is the hand-built
unstable path (``instability``, distance ``--instance-eps`` from
singularity) or a random path (``random``). ``--region-std`` has no
default and must be given, on the command line or in the config file.

``regions.csv`` has one row per center: its index, the mean condition
number, the number of failed trials, the local-dominance ``alpha`` of the
center and the condition-number bound it implies (empty when the data
properties do not hold). Centers whose own recovery breaks down are kept
with an empty mean.
"""
import math
import warnings
import numpy as np
import pandas as pd
from lsemStability.errors import (
    BaselineRecoveryFailed,
    BoundInapplicable,
    ValidationError,
)
from lsemStability.instances import jitter_parameters
from lsemStability.scm import forward_covariance
from lsemStability.stability import (
    check_model_assumptions,
    randomized_condition_number,
    theoretical_kappa_bound,
)
from lsemStability.experiments import (
    add_generator_arguments,
    add_perturbation_arguments,
    make_instance,
    perturbation_spec,
    require,
)

COMMANDS = ["BadRegion"]


def _limit_bound(sigma, lam):
    try:
        check = check_model_assumptions(sigma, lam)
    except ValidationError:
        return math.nan, math.nan
    try:
        bound = theoretical_kappa_bound(check.alpha_min, 0.0, lam.shape[0], check.lambda_param)
    except BoundInapplicable:
        bound = math.nan
    return check.alpha_min, bound


class BadRegion:
    """Condition numbers at jittered copies of an instance."""

    command = "bad-region"
    stochastic = True
    plot = "set logscale y; plot 'regions.csv' using 1:2 with points"

    @classmethod
    def add_arguments(self, parser):
        parser.add_argument(
            "--region-std",
            type=float,
            default=None,
            help="standard deviation of the parameter jitter (required)",
        )
        parser.add_argument(
            "--target",
            dest="jitter_target",
            choices=["lambda", "omega", "both"],
            default="lambda",
            help="which parameters to jitter",
        )
        parser.add_argument(
            "--base",
            dest="instance",
            choices=["instability", "random"],
            default="instability",
            help="the instance the region is centered on",
        )
        parser.add_argument(
            "--instance-eps",
            type=float,
            default=1e-6,
            help="distance of the unstable path from singularity",
        )
        parser.add_argument("--centers", type=int, default=20, help="number of jittered centers")
        add_generator_arguments(parser)
        add_perturbation_arguments(parser)

    @classmethod
    def action(self, runner, args):
        require(args, "region_std")
        base = make_instance(args, runner.rng(0))
        spec = perturbation_spec(args)
        rows = []
        for c in range(args.centers):
            center = jitter_parameters(base, args.region_std, runner.rng(1 + c), args.jitter_target)
            sigma = np.asarray(forward_covariance(center))
            alpha, bound = _limit_bound(sigma, center.lambda_)
            try:
                report = randomized_condition_number(
                    sigma, center.graph, spec, args.trials, runner.rng(1 + args.centers + c)
                )
            except BaselineRecoveryFailed as e:
                warnings.warn("Center %i: %s" % (c, e))
                rows.append([c, math.nan, args.trials, alpha, bound])
                continue
            rows.append([c, report.mean_kappa, report.failed_trials, alpha, bound])
        runner.add_csv(
            "regions.csv",
            pd.DataFrame(rows, columns=["center", "mean_kappa", "failed", "alpha_min", "bound"]),
        )
