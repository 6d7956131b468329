"""
Graph Families
==============

Beyond paths, the ``graph-families`` command measures randomized condition
numbers on bow-free DAGs built from layers of ``k`` vertices:

``clique-20-2``, ``clique-30-5``
    Clique of paths: every vertex points at every vertex of the next layer.

``layered-0.2``, ``layered-0.5``, ``layered-0.8``
    The 30-vertex, width-5 clique of paths with each directed edge dropped
    independently with the given probability.

``path-20``
    Width 1, i.e. the 20-vertex bow-free path, for comparison.

Every pair of vertices not joined by a directed edge gets a bidirected edge.
Run all presets, or a few with ``--preset``::

    lsemlab.py graph-families --seed 11 --preset clique-20-2 layered-0.5

An instance whose own recovery is numerically singular is redrawn. For each
preset the command writes ``kappa-PRESET.csv`` and ``histogram-PRESET.csv``;
``summary.csv`` lists the mean condition number, failed trials and redraws.
"""
import warnings
import numpy as np
import pandas as pd
from lsemStability.errors import BaselineRecoveryFailed, NumericalError
from lsemStability.graphs import clique_of_paths, layered_graph
from lsemStability.instances import GeneratorConfig, MAX_REDRAWS, random_parameters
from lsemStability.scm import forward_covariance
from lsemStability.stability import randomized_condition_number
from lsemStability.experiments import (
    add_perturbation_arguments,
    histogram_frame,
    kappa_frame,
    perturbation_spec,
)

COMMANDS = ["GraphFamilies"]

# name: (n, k, edge drop probability)
PRESETS = {
    "clique-20-2": (20, 2, None),
    "clique-30-5": (30, 5, None),
    "layered-0.2": (30, 5, 0.2),
    "layered-0.5": (30, 5, 0.5),
    "layered-0.8": (30, 5, 0.8),
    "path-20": (20, 1, None),
}


def preset_graph(name, rng):
    n, k, p = PRESETS[name]
    if p is None:
        return clique_of_paths(n, k)
    return layered_graph(n, k, p, rng)


class GraphFamilies:
    """Condition numbers on clique-of-paths and layered graphs."""

    command = "graph-families"
    stochastic = True
    plot = "set logscale x; plot 'histogram-clique-20-2.csv' using 1:3 with steps"

    @classmethod
    def add_arguments(self, parser):
        parser.add_argument(
            "--preset",
            nargs="+",
            choices=list(PRESETS),
            default=list(PRESETS),
            help="graph families to run",
        )
        parser.add_argument(
            "--h", type=float, default=0.2, help="edge weights are drawn from U[-h, h]"
        )
        parser.add_argument(
            "--d", type=int, default=None, help="dimension of the Gram vectors behind Omega"
        )
        add_perturbation_arguments(parser)

    @classmethod
    def measure(self, runner, index, name, cfg, spec, trials):
        for attempt in range(MAX_REDRAWS):
            rng = runner.rng(index, attempt)
            g = preset_graph(name, rng)
            p = random_parameters(g, cfg, rng)
            sigma = np.asarray(forward_covariance(p))
            try:
                report = randomized_condition_number(
                    sigma, g, spec, trials, runner.rng(index, attempt, 1)
                )
            except BaselineRecoveryFailed as e:
                warnings.warn("%s: redrawing instance (%s)" % (name, e))
                continue
            return report, attempt
        raise NumericalError(
            "%s: no recoverable instance in %i draws" % (name, MAX_REDRAWS)
        )

    @classmethod
    def action(self, runner, args):
        cfg = GeneratorConfig(h=args.h, d=args.d)
        spec = perturbation_spec(args)
        rows = []
        for name in args.preset:
            index = list(PRESETS).index(name)
            report, redraws = self.measure(runner, index, name, cfg, spec, args.trials)
            n, k, p = PRESETS[name]
            rows.append([name, n, k, p, report.mean_kappa, report.failed_trials, redraws])
            runner.add_csv("kappa-%s.csv" % name, kappa_frame(report))
            runner.add_csv("histogram-%s.csv" % name, histogram_frame(report))
        columns = ["preset", "n", "k", "p", "mean_kappa", "failed", "redraws"]
        runner.add_csv("summary.csv", pd.DataFrame(rows, columns=columns))
