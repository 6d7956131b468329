"""
Generating Instances
====================

The ``generate`` command writes a parameter file (``parameters.json``) and
its graph (``graph.json``) for the other commands to consume::

    lsemlab.py generate --seed 4 --family path --n 20 --h 0.2
    lsemlab.py generate --seed 4 --family layered --n 30 --k 5 --p 0.5
    lsemlab.py generate --family instability --instance-eps 1e-6

Families are ``path``, ``clique`` (clique of paths with layer width
``--k``), ``layered`` (clique of paths with each edge dropped with
probability ``--p``), ``graph`` (any bow-free graph read from ``--graph``)
and ``instability`` (the hand-built unstable four-vertex path, which needs
no seed). Lambda is drawn uniformly from ``[-h, h]`` on the directed edges
and Omega is the Gram matrix of random unit vectors, each orthogonal to
those of its parents, in dimension ``--d``.
"""
from lsemStability import MixedGraph
from lsemStability.errors import ValidationError
from lsemStability.graphs import clique_of_paths, layered_graph, path_graph
from lsemStability.instances import GeneratorConfig, instability_instance, random_parameters
from lsemStability.experiments import add_generator_arguments, require

COMMANDS = ["Generate"]


class Generate:
    """Write a random or hand-built instance to parameters.json."""

    command = "generate"
    stochastic = False

    @classmethod
    def add_arguments(self, parser):
        parser.add_argument(
            "--family",
            choices=["path", "clique", "layered", "graph", "instability"],
            default="path",
            help="kind of instance",
        )
        add_generator_arguments(parser)
        parser.add_argument("--k", type=int, default=1, help="layer width")
        parser.add_argument("--p", type=float, default=0.5, help="edge drop probability")
        parser.add_argument("--graph", default=None, help="graph JSON", metavar="FILE")
        parser.add_argument(
            "--instance-eps",
            type=float,
            default=1e-6,
            help="distance of the unstable path from singularity",
        )

    @classmethod
    def graph(self, runner, args):
        if args.family == "path":
            return path_graph(args.n)
        if args.family == "clique":
            return clique_of_paths(args.n, args.k)
        if args.family == "layered":
            return layered_graph(args.n, args.k, args.p, runner.rng(1))
        require(args, "graph")
        return MixedGraph.load(args.graph)

    @classmethod
    def action(self, runner, args):
        if args.family == "instability":
            p = instability_instance(args.instance_eps)
        else:
            if args.seed is None:
                raise ValidationError("Random instances need --seed")
            p = random_parameters(
                self.graph(runner, args), GeneratorConfig(h=args.h, d=args.d), runner.rng(0)
            )
        runner.add_json("parameters.json", p.asJSON())
        runner.add_json("graph.json", p.graph.asJSON())
