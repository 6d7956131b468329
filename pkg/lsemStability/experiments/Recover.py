"""
Recovery
========

``recover`` recovers Lambda (and with ``--omega`` also Omega) from a
covariance matrix or observational data under a bow-free graph::

    lsemlab.py recover --sigma sigma.csv --graph graph.json --omega

Paths use the closed-form recurrence, other graphs a per-node linear solve.
Outputs are ``lambda.csv`` (and ``omega.csv``) as matrix CSVs plus
``recovery.json`` with the smallest relative pivot met at each node. A
numerically singular system stops the command with exit code 3.
"""
from lsemStability.recovery import recover
from lsemStability.experiments import add_input_arguments, load_inputs

COMMANDS = ["Recover"]


class Recover:
    """Recover the parameters behind a covariance matrix."""

    command = "recover"
    stochastic = False

    @classmethod
    def add_arguments(self, parser):
        add_input_arguments(parser)
        parser.add_argument("--omega", action="store_true", help="also recover Omega")

    @classmethod
    def action(self, runner, args):
        sigma, g = load_inputs(args)
        result = recover(sigma, g, omega=args.omega)
        runner.add_matrix("lambda.csv", result.lambda_hat)
        if args.omega:
            runner.add_matrix("omega.csv", result.omega_hat)
        runner.add_json("recovery.json", result.asJSON())
