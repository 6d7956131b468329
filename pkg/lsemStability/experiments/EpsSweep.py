"""
Perturbing Observational Data
=============================

The ``eps-sweep`` command works on observational data rather than on a
covariance matrix. Given a CSV of samples (a header row of variable names,
then one row per sample) and a graph JSON, it forms the empirical covariance,
recovers Lambda, and then for each noise level ``eps`` repeatedly adds
independent ``N(0, eps^2)`` noise to every data entry, recomputes the
covariance, recovers again and averages the randomized condition number::

    lsemlab.py eps-sweep --seed 5 --data data.csv --graph graph.json \\
        --eps-list 1e-1 1e-2 1e-3 1e-4 1e-5 1e-6 --runs 100

If the graph JSON carries a ``names`` list, data columns are picked and
ordered by those names; otherwise the columns are taken in file order and
must match the number of vertices. ``--center`` subtracts column means
before the covariance is formed.

``eps-sweep.csv`` has columns ``eps``, ``mean_kappa`` and ``failed``;
``lambda.csv`` is the Lambda recovered from the unperturbed data.
"""
import numpy as np
import pandas as pd
from lsemStability import MixedGraph, ObservationBatch
from lsemStability.errors import ShapeMismatch
from lsemStability.scm import load_observations, sample_covariance
from lsemStability.stability import baseline_recovery, condition_trials
from lsemStability.experiments import require

COMMANDS = ["EpsSweep"]


class EpsSweep:
    """Condition number against the size of noise added to the data."""

    command = "eps-sweep"
    stochastic = True
    plot = "set logscale xy; plot 'eps-sweep.csv' using 1:2 with linespoints"

    @classmethod
    def add_arguments(self, parser):
        parser.add_argument("--data", default=None, help="observational data CSV", metavar="FILE")
        parser.add_argument("--graph", default=None, help="graph JSON", metavar="FILE")
        parser.add_argument(
            "--eps-list",
            type=float,
            nargs="+",
            default=[10.0 ** -k for k in range(1, 9)],
            help="noise levels to sweep",
        )
        parser.add_argument("--runs", type=int, default=100, help="runs per noise level")
        parser.add_argument(
            "--center", action="store_true", help="subtract column means first"
        )

    @classmethod
    def action(self, runner, args):
        require(args, "data", "graph")
        g = MixedGraph.load(args.graph)
        batch = load_observations(args.data)
        if g.names:
            batch = batch.select(g.names)
        elif batch.n != g.n:
            raise ShapeMismatch(
                "Data has %i columns but the graph has %i vertices" % (batch.n, g.n)
            )
        data = np.asarray(batch)
        sigma = np.asarray(sample_covariance(batch, center=args.center))
        lam = baseline_recovery(sigma, g)

        rows = []
        for k, eps in enumerate(args.eps_list):

            def noisy(rng, eps=eps):
                perturbed = data + rng.normal(0.0, eps, data.shape)
                return sample_covariance(ObservationBatch(perturbed), center=args.center)

            report = condition_trials(sigma, lam, g, noisy, args.runs, runner.rng(k))
            rows.append([eps, report.mean_kappa, report.failed_trials])

        runner.add_csv("eps-sweep.csv", pd.DataFrame(rows, columns=["eps", "mean_kappa", "failed"]))
        runner.add_matrix("lambda.csv", lam)
