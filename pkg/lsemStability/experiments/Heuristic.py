"""
Well- or Ill-conditioned?
=========================

The ``heuristic`` command decides whether an instance is well-conditioned.
Given a covariance matrix (``--sigma``, matrix CSV) or observational data
(``--data``) and a graph (``--graph``), it repeatedly adds independent
``N(0, eps^2)`` noise to every entry of Sigma, recovers Lambda and records
``max |Lambda~ - Lambda| / max |Sigma~ - Sigma|``. If the mean reaches
``--tau`` the instance is *ill-conditioned*::

    lsemlab.py heuristic --seed 2 --sigma sigma.csv --graph graph.json --tau 1000

By default ``eps = 1/n^4`` with ``n^4`` rounds; ``--eps`` and ``--trials``
override them, which is advisable beyond a few dozen vertices. The verdict
is printed and ``heuristic.json`` holds it together with the mean and the
full condition report.
"""
from lsemStability.stability import condition_heuristic
from lsemStability.experiments import add_input_arguments, load_inputs

COMMANDS = ["Heuristic"]


class Heuristic:
    """Classify an instance as well- or ill-conditioned."""

    command = "heuristic"
    stochastic = True
    plot = None

    @classmethod
    def add_arguments(self, parser):
        add_input_arguments(parser)
        parser.add_argument(
            "--tau", type=float, default=1000.0, help="ill-conditioning threshold"
        )
        parser.add_argument("--trials", type=int, default=None, help="rounds (default n^4)")
        parser.add_argument("--eps", type=float, default=None, help="noise std (default 1/n^4)")

    @classmethod
    def action(self, runner, args):
        sigma, g = load_inputs(args)
        verdict, mean, report = condition_heuristic(
            sigma,
            g,
            args.tau,
            runner.rng(0),
            trials=args.trials,
            eps=args.eps,
            full_output=True,
        )
        print("%s (mean kappa %.6g, threshold %g)" % (verdict, mean, args.tau))
        runner.add_json(
            "heuristic.json",
            {
                "verdict": verdict,
                "mean_kappa": report.asJSON()["mean_kappa"],
                "tau": args.tau,
                "report": report.asJSON(),
            },
        )
