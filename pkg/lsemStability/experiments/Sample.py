"""
Sampling
========

``sample`` draws ``--samples`` independent observations from the model in a
parameter file. ``data.csv`` has a header row of variable names (taken from
the graph, or ``x0``, ``x1``, ...) and one row per sample; ``sigma-hat.csv``
is their empirical second-moment matrix::

    lsemlab.py sample --seed 9 --params parameters.json --samples 100000
"""
from lsemStability import Parameters
from lsemStability.scm import observations_frame, sample_covariance, sample_observations
from lsemStability.experiments import require

COMMANDS = ["Sample"]


class Sample:
    """Draw observations from a parameter file."""

    command = "sample"
    stochastic = True

    @classmethod
    def add_arguments(self, parser):
        parser.add_argument("--params", default=None, help="parameters JSON", metavar="FILE")
        parser.add_argument("--samples", type=int, default=1000, help="number of samples")

    @classmethod
    def action(self, runner, args):
        require(args, "params")
        p = Parameters.load(args.params)
        batch = sample_observations(p, args.samples, runner.rng(0))
        runner.add_csv("data.csv", observations_frame(batch))
        runner.add_matrix("sigma-hat.csv", sample_covariance(batch))
