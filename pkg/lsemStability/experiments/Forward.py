"""
Forward Covariance
==================

``forward`` computes ``Sigma = (I - Lambda)^{-T} Omega (I - Lambda)^{-1}``
for a parameter file and writes it as ``sigma.csv``::

    lsemlab.py forward --params parameters.json
"""
from lsemStability import Parameters
from lsemStability.scm import forward_covariance
from lsemStability.experiments import require

COMMANDS = ["Forward"]


class Forward:
    """Exact covariance matrix of a parameter file."""

    command = "forward"
    stochastic = False

    @classmethod
    def add_arguments(self, parser):
        parser.add_argument("--params", default=None, help="parameters JSON", metavar="FILE")

    @classmethod
    def action(self, runner, args):
        require(args, "params")
        p = Parameters.load(args.params)
        runner.add_matrix("sigma.csv", forward_covariance(p))
