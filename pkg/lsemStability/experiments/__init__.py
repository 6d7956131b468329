"""Experiment plugins behind the ``lsemlab.py`` command line.

Each plugin module lists the classes it provides in ``COMMANDS``. A command
class has a ``command`` name, a ``stochastic`` flag, and two classmethods:
``add_arguments(parser)`` declares its options and ``action(runner, args)``
does the work, handing every output file to the runner. Nothing is written
until the action has finished, so a failing command leaves no partial
results behind."""
import hashlib
import importlib
import inspect
import json
import logging
import os
import warnings
import numpy as np
import pandas as pd
import lsemStability
from lsemStability import Covariance, MixedGraph
from lsemStability.errors import ValidationError, ShapeMismatch
from lsemStability.linalg import format_matrix_csv, read_matrix_csv
from lsemStability.graphs import path_graph
from lsemStability.instances import (
    GeneratorConfig,
    instability_instance,
    random_parameters,
)
from lsemStability.scm import load_observations, sample_covariance
from lsemStability.stability import PerturbationSpec, perturbations


class ExperimentRunner:
    DEFAULT_EXPERIMENTS = [
        "LocalDominance",
        "Perturb",
        "BadRegion",
        "EpsSweep",
        "GraphFamilies",
        "Heuristic",
        "Generate",
        "Forward",
        "Sample",
        "Recover",
        "Condition",
    ]

    def __init__(self):
        self.commands = {}
        self.subparsers = {}
        self.seed = None
        self.outputs = {}
        self.plot = None
        for plugin in self.DEFAULT_EXPERIMENTS:
            self._load_plugin(plugin)

    def _load_plugin(self, plugin):
        if "." not in plugin:
            plugin = "lsemStability.experiments." + plugin
        mod = importlib.import_module(plugin)
        if not hasattr(mod, "COMMANDS"):
            warnings.warn("Module %s is not an experiment plugin" % plugin)
            return
        self._register_plugin(mod)

    def _register_plugin(self, mod):
        classes = dict(inspect.getmembers(mod, inspect.isclass))
        for name in mod.COMMANDS:
            cls = classes[name]
            self.commands[cls.command] = cls

    def add_subparsers(self, subparsers, parents):
        for name, cls in self.commands.items():
            doc = (cls.__doc__ or "").strip().splitlines()
            sub = subparsers.add_parser(
                name, parents=parents, help=doc[0] if doc else None
            )
            cls.add_arguments(sub)
            sub.set_defaults(command=name)
            self.subparsers[name] = sub

    def rng(self, *index):
        """Generator for the independent stream of this run labelled by
  ``index`` (one or more non-negative integers)."""
        return np.random.default_rng([self.seed, *(index or (0,))])

    def run(self, args):
        cls = self.commands[args.command]
        if cls.stochastic and args.seed is None:
            raise ValidationError("Command %s needs --seed" % args.command)
        if args.seed is not None and args.seed < 0:
            raise ValidationError("Seed must be non-negative, got %i" % args.seed)
        self.seed = args.seed
        self.outputs = {}
        self.plot = getattr(cls, "plot", None)
        logger = logging.getLogger("lsemStability")
        logger.info("Running %s with seed %s", args.command, args.seed)
        cls.action(self, args)
        self._flush(args)
        return self.outputs

    # Outputs are buffered as text and only written by _flush

    def add_text(self, name, text):
        self.outputs[name] = text

    def add_csv(self, name, frame):
        self.add_text(name, frame.to_csv(index=False, float_format="%.17g"))

    def add_matrix(self, name, m):
        self.add_text(name, format_matrix_csv(m))

    def add_json(self, name, data):
        self.add_text(name, json.dumps(data, indent=2, sort_keys=True) + "\n")

    def _manifest(self, args):
        config = {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in ("config", "out") and _jsonable(v)
        }
        return {
            "experiment": args.command,
            "seed": args.seed,
            "version": lsemStability.__version__,
            "config": config,
            "outputs": {
                name: hashlib.sha256(text.encode("utf-8")).hexdigest()
                for name, text in sorted(self.outputs.items())
            },
            "plot": self.plot,
        }

    def _flush(self, args):
        os.makedirs(args.out, exist_ok=True)
        for name, text in self.outputs.items():
            with open(os.path.join(args.out, name), "w") as f:
                f.write(text)
        with open(os.path.join(args.out, "manifest.json"), "w") as f:
            json.dump(self._manifest(args), f, indent=2, sort_keys=True)
            f.write("\n")


def _jsonable(value):
    try:
        json.dumps(value)
    except TypeError:
        return False
    return True


def require(args, *names):
    """Options that may come from either the command line or ``--config``
  but must be present one way or the other."""
    for name in names:
        if getattr(args, name, None) is None:
            raise ValidationError(
                "Missing required option --%s" % name.replace("_", "-")
            )


def add_generator_arguments(parser, n=20, h=0.2):
    parser.add_argument("--n", type=int, default=n, help="number of vertices")
    parser.add_argument(
        "--h", type=float, default=h, help="edge weights are drawn from U[-h, h]"
    )
    parser.add_argument(
        "--d", type=int, default=None, help="dimension of the Gram vectors behind Omega"
    )


def add_input_arguments(parser):
    parser.add_argument("--sigma", default=None, help="covariance matrix CSV", metavar="FILE")
    parser.add_argument("--data", default=None, help="observational data CSV", metavar="FILE")
    parser.add_argument("--graph", default=None, help="graph JSON", metavar="FILE")
    parser.add_argument(
        "--center",
        action="store_true",
        help="subtract column means before forming the covariance of --data",
    )


def load_inputs(args):
    """The ``(Sigma, graph)`` pair named by ``--sigma``/``--data`` and
  ``--graph``. Data columns are matched to the graph's variable names when
  the graph carries them."""
    require(args, "graph")
    g = MixedGraph.load(args.graph)
    if (args.sigma is None) == (args.data is None):
        raise ValidationError("Give exactly one of --sigma and --data")
    if args.sigma is not None:
        sigma = Covariance(read_matrix_csv(args.sigma))
    else:
        batch = load_observations(args.data)
        if g.names:
            batch = batch.select(g.names)
        sigma = sample_covariance(batch, center=args.center)
    if sigma.n != g.n:
        raise ShapeMismatch(
            "Covariance is %ix%i but the graph has %i vertices" % (sigma.n, sigma.n, g.n)
        )
    return np.asarray(sigma), g


def kappa_frame(report):
    return pd.DataFrame({"trial": np.arange(len(report.kappas)), "kappa": report.kappas})


def histogram_frame(report):
    edges, counts = report.histogram
    return pd.DataFrame({"lower": edges[:-1], "upper": edges[1:], "count": counts})


def add_instance_arguments(parser, n=20, h=0.2):
    parser.add_argument(
        "--instance",
        choices=["random", "instability"],
        default="random",
        help="a random bow-free path or the hand-built unstable path",
    )
    parser.add_argument(
        "--instance-eps",
        type=float,
        default=1e-6,
        help="distance of the unstable path from singularity",
    )
    add_generator_arguments(parser, n=n, h=h)


def make_instance(args, rng):
    if args.instance == "instability":
        return instability_instance(args.instance_eps)
    return random_parameters(path_graph(args.n), GeneratorConfig(h=args.h, d=args.d), rng)


def add_perturbation_arguments(parser, eps=1e-6):
    parser.add_argument(
        "--mode",
        choices=[p.name for p in perturbations],
        default="gaussian",
        help="how Sigma is perturbed",
    )
    parser.add_argument(
        "--eps", type=float, default=eps, help="perturbation size (std or gamma)"
    )
    parser.add_argument(
        "--entries",
        dest="target",
        choices=["nonzero", "all"],
        default="nonzero",
        help="which entries of Sigma are perturbed",
    )
    parser.add_argument(
        "--asymmetric",
        action="store_true",
        help="perturb (i,j) and (j,i) independently",
    )
    parser.add_argument("--trials", type=int, default=100, help="perturbations per instance")


def perturbation_spec(args):
    return PerturbationSpec(
        args.mode, args.eps, target=args.target, symmetric=not args.asymmetric
    )
