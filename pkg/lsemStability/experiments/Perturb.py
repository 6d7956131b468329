"""
Perturbation Experiments
========================

The ``perturb`` command measures the randomized condition number of a single
bow-free path instance under three sources of error, chosen with
``--source``:

``perturbation``
    Sigma is the exact covariance, perturbed entrywise as set by ``--mode``
    and ``--eps`` (by default Gaussian noise with standard deviation
    ``1e-6`` on the non-zero entries).

``sampling``
    Sigma is replaced by the empirical covariance of ``--samples`` draws from
    the model; there is no explicit perturbation.

``both``
    The empirical covariance is perturbed in turn.

For example::

    lsemlab.py perturb --seed 7 --source both --n 20 --h 0.2 --samples 100000

The command writes the true Lambda (``lambda.csv``), Lambda recovered from
one representative perturbed covariance (``lambda-recovered.csv``) and their
difference (``lambda-difference.csv``) as matrix CSVs, one condition number
per trial in ``kappa.csv``, its histogram in ``histogram.csv`` and the full
report in ``report.json``. Pass ``--instance instability`` to run on the
hand-built unstable path instead of a random one.
"""
import warnings
import numpy as np
from lsemStability.errors import NumericalError
from lsemStability.recovery import recover
from lsemStability.scm import forward_covariance, sample_covariance, sample_observations
from lsemStability.stability import baseline_recovery, condition_trials, perturb
from lsemStability.experiments import (
    add_instance_arguments,
    add_perturbation_arguments,
    histogram_frame,
    kappa_frame,
    make_instance,
    perturbation_spec,
)

COMMANDS = ["Perturb"]


class Perturb:
    """Randomized condition number under sampling and/or perturbation error."""

    command = "perturb"
    stochastic = True
    plot = "set logscale x; plot 'histogram.csv' using 1:3 with steps"

    @classmethod
    def add_arguments(self, parser):
        add_instance_arguments(parser)
        add_perturbation_arguments(parser)
        parser.add_argument(
            "--source",
            choices=["both", "sampling", "perturbation"],
            default="both",
            help="which errors to apply to Sigma",
        )
        parser.add_argument(
            "--samples", type=int, default=100000, help="samples per empirical covariance"
        )

    @classmethod
    def perturber(self, p, sigma, args):
        spec = perturbation_spec(args)
        if args.source == "perturbation":
            return lambda rng: perturb(sigma, spec, rng)

        def sampled(rng):
            empirical = np.asarray(sample_covariance(sample_observations(p, args.samples, rng)))
            if args.source == "both":
                return perturb(empirical, spec, rng)
            return empirical

        return sampled

    @classmethod
    def action(self, runner, args):
        p = make_instance(args, runner.rng(0))
        sigma = np.asarray(forward_covariance(p))
        make_perturbed = self.perturber(p, sigma, args)
        lam = baseline_recovery(sigma, p.graph)
        report = condition_trials(sigma, lam, p.graph, make_perturbed, args.trials, runner.rng(1))

        runner.add_matrix("lambda.csv", p.lambda_)
        try:
            lam_tilde = recover(make_perturbed(runner.rng(2)), p.graph).lambda_hat
        except NumericalError as e:
            warnings.warn("Representative recovery failed: %s" % e)
        else:
            runner.add_matrix("lambda-recovered.csv", lam_tilde)
            runner.add_matrix("lambda-difference.csv", lam_tilde - p.lambda_)
        runner.add_csv("kappa.csv", kappa_frame(report))
        runner.add_csv("histogram.csv", histogram_frame(report))
        runner.add_json("report.json", report.asJSON())
