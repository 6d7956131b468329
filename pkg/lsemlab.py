#!env python
import sys
from argparse import ArgumentParser
from lsemStability.errors import NumericalError, ValidationError
from lsemStability.experiments import ExperimentRunner
from lsemStability.jsonLib import load_json

import logging
import os

LOGLEVEL = os.environ.get("LOGLEVEL", "WARNING").upper()
logging.basicConfig(level=LOGLEVEL)

import warnings


def warning_on_one_line(message, category, filename, lineno, file=None, line=None):
    return "# [warning] %s\n" % (message)


warnings.formatwarning = warning_on_one_line


def build_parser(runner):
    common = ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument(
        "--out", default="results", help="directory for output files", metavar="DIR"
    )
    common.add_argument(
        "--config", default=None, help="JSON file of option defaults", metavar="CONFIG"
    )
    parser = ArgumentParser(
        description="Stability experiments for linear structural equation models"
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    runner.add_subparsers(subparsers, [common])
    return parser


def apply_config(parser, runner, args, argv):
    """Re-parse with the ``--config`` file supplying defaults, so explicit
  flags still win."""
    config = load_json(args.config)
    if not isinstance(config, dict):
        raise ValidationError("Config file %s must hold a JSON object" % args.config)
    sub = runner.subparsers[args.command]
    known = set(vars(args)) - {"command", "config"}
    for key in sorted(set(config) - known):
        warnings.warn("Ignoring unknown config key %r" % key)
    sub.set_defaults(**{k: v for k, v in config.items() if k in known})
    return parser.parse_args(argv)


def main(argv=None):
    runner = ExperimentRunner()
    parser = build_parser(runner)
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return 2
    try:
        if args.config:
            args = apply_config(parser, runner, args, argv)
        runner.run(args)
    except ValidationError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except NumericalError as e:
        print("numerical failure: %s" % e, file=sys.stderr)
        return 3
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
