"""
Local Dominance
===============

The ``local-dominance`` command draws random bow-free path instances and
writes the near-diagonal entries of their covariance matrices, so you can
see whether the diagonal dominates its neighbours::

    lsemlab.py local-dominance --seed 1 --n 50 --h 1 --runs 3

For each run ``r`` the file ``local-dominance-r.csv`` has one row per
vertex ``i`` with columns ``i``, ``sigma_ii``, ``sigma_i_ip1``,
``sigma_im1_i`` and ``sigma_im1_ip1`` (absolute values; empty where the
neighbour does not exist). ``summary.csv`` lists, per run, the smallest
``alpha`` for which the local-dominance inequalities hold and whether the
instance meets all the data properties.
"""
import pandas as pd
from lsemStability.graphs import path_graph
from lsemStability.instances import GeneratorConfig, random_parameters
from lsemStability.scm import forward_covariance
from lsemStability.stability import check_model_assumptions, local_dominance_profile
from lsemStability.experiments import add_generator_arguments

COMMANDS = ["LocalDominance"]


class LocalDominance:
    """Near-diagonal covariance entries of random bow-free paths."""

    command = "local-dominance"
    stochastic = True
    plot = (
        "plot 'local-dominance-0.csv' using 1:2 title 'sigma_ii', "
        "'' using 1:3 title 'sigma_i_ip1', '' using 1:4 title 'sigma_im1_i', "
        "'' using 1:5 title 'sigma_im1_ip1'"
    )

    @classmethod
    def add_arguments(self, parser):
        add_generator_arguments(parser, n=50, h=1.0)
        parser.add_argument("--runs", type=int, default=3, help="number of instances")

    @classmethod
    def action(self, runner, args):
        g = path_graph(args.n)
        cfg = GeneratorConfig(h=args.h, d=args.d)
        summary = []
        for run in range(args.runs):
            p = random_parameters(g, cfg, runner.rng(run))
            sigma = forward_covariance(p)
            runner.add_csv("local-dominance-%i.csv" % run, local_dominance_profile(sigma))
            check = check_model_assumptions(sigma, p.lambda_)
            summary.append(
                {
                    "run": run,
                    "alpha_min": check.alpha_min,
                    "lambda_param": check.lambda_param,
                    "satisfied": check.satisfied,
                }
            )
        columns = ["run", "alpha_min", "lambda_param", "satisfied"]
        runner.add_csv("summary.csv", pd.DataFrame(summary, columns=columns))
