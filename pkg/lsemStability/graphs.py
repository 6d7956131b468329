"""Constructors for the graph families used throughout: bow-free paths,
clique-of-paths and randomly thinned layered graphs."""
from itertools import combinations, product
from more_itertools import pairwise, chunked
from lsemStability import MixedGraph
from lsemStability.errors import InvalidSize, ValidationError


def bow_free_complement(n, directed):
    """Every pair not joined by a directed edge (in either direction)."""
    adjacent = set((min(i, j), max(i, j)) for i, j in directed)
    return [pair for pair in combinations(range(n), 2) if pair not in adjacent]


def path_graph(n):
    if n < 2:
        raise InvalidSize("A path needs at least 2 vertices, got %i" % n)
    directed = list(pairwise(range(n)))
    return MixedGraph(n, directed, bow_free_complement(n, directed))


def _layers(n, k):
    if k < 1 or n < 1 or n % k:
        raise InvalidSize("Layer width %i must be positive and divide n=%i" % (k, n))
    return [list(layer) for layer in chunked(range(n), k)]


def clique_of_paths(n, k):
    """``n/k`` consecutive layers of ``k`` vertices, each vertex pointing at
  every vertex of the next layer. ``k=1`` gives the bow-free path."""
    layers = _layers(n, k)
    directed = [
        edge for upper, lower in pairwise(layers) for edge in product(upper, lower)
    ]
    return MixedGraph(n, directed, bow_free_complement(n, directed))


def layered_graph(n, k, p, rng):
    """``clique_of_paths(n, k)`` with every directed edge dropped
  independently with probability ``p``; the bidirected set is recomputed as
  the complement of the edges that survive."""
    if not 0 <= p <= 1:
        raise ValidationError("Drop probability must lie in [0, 1], got %r" % p)
    full = sorted(clique_of_paths(n, k).directed)
    keep = rng.random(len(full)) >= p
    directed = [edge for edge, kept in zip(full, keep) if kept]
    return MixedGraph(n, directed, bow_free_complement(n, directed))
