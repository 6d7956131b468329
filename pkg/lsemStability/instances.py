"""Instance factories: the random generative model (uniform edge weights,
Gram-vector noise covariance) and the hand-built unstable path."""
import logging
import warnings
import numpy as np
from lsemStability import Parameters
from lsemStability.errors import DegenerateDraw, NotBowFree, ValidationError
from lsemStability.graphs import path_graph
from lsemStability.linalg import psd_check

MAX_REDRAWS = 100
DEGENERACY = 1e-12


class GeneratorConfig:
    """Settings of the random generative model.

  ``h`` is the half-width of the uniform distribution of the edge weights;
  ``d`` is the dimension of the Gram vectors behind Omega (``None`` means
  ``max(1000, 4n)``)."""

    def __init__(self, h=0.5, d=None, seed=None):
        if h < 0:
            raise ValidationError("h must be non-negative, got %r" % h)
        if d is not None and d < 2:
            raise ValidationError("Gram dimension d must be at least 2, got %r" % d)
        self.h = float(h)
        self.d = d
        self.seed = seed

    def dimension(self, n):
        return self.d if self.d is not None else max(1000, 4 * n)

    @property
    def sigma_h_squared(self):
        """Variance ``h^2 / 3`` of a single edge weight."""
        return self.h ** 2 / 3.0

    def rng(self):
        return np.random.default_rng(self.seed)


def _draw_orthogonal(d, basis, rng):
    """A uniform unit vector orthogonal to the span of ``basis`` rows."""
    q = None
    if len(basis):
        q, _ = np.linalg.qr(np.asarray(basis).T)
    for _ in range(MAX_REDRAWS):
        v = rng.standard_normal(d)
        v /= np.linalg.norm(v)
        if q is not None:
            # Project twice so the result is orthogonal to machine precision
            v = v - q @ (q.T @ v)
            v = v - q @ (q.T @ v)
        norm = np.linalg.norm(v)
        if norm >= DEGENERACY:
            return v / norm
    raise DegenerateDraw(
        "Could not draw a vector orthogonal to %i others in dimension %i" % (len(basis), d)
    )


def orthogonal_chain_vectors(n, d, rng, depth=1):
    """``n`` unit vectors in dimension ``d``, each orthogonal to the
  ``depth`` vectors before it. Returned as the rows of an ``n x d`` array."""
    if d < 2:
        raise ValidationError("Dimension must be at least 2, got %i" % d)
    vectors = np.zeros((n, d))
    for i in range(n):
        vectors[i] = _draw_orthogonal(d, vectors[max(0, i - depth) : i], rng)
    return vectors


def graph_gram_vectors(g, d, rng):
    """Unit vectors with ``v_j`` orthogonal to ``v_i`` for every directed
  edge ``i -> j``; on a path this is exactly the chain construction."""
    if g.max_indegree > 1 and d < 4 * g.max_indegree:
        raise ValidationError(
            "Gram dimension %i too small for in-degree %i (need d >= 4k)"
            % (d, g.max_indegree)
        )
    vectors = np.zeros((g.n, d))
    for v in g.topological_order():
        vectors[v] = _draw_orthogonal(d, vectors[g.parents(v)], rng)
    return vectors


def random_parameters(g, cfg, rng):
    """Draw (Lambda, Omega) for a bow-free graph.

  Lambda has i.i.d. ``U[-h, h]`` entries on the directed edges. Omega is the
  Gram matrix of :func:`graph_gram_vectors`, so its diagonal is exactly 1 and
  every directed pair has Omega zero by construction. Pairs joined by
  neither kind of edge are zeroed as well; the Gram vectors are then no
  longer an exact factor and are dropped."""
    if not g.is_bow_free():
        raise NotBowFree("Random parameters need a bow-free graph")
    edges = sorted(g.directed)
    lam = np.zeros((g.n, g.n))
    if edges:
        rows, cols = zip(*edges)
        lam[list(rows), list(cols)] = rng.uniform(-cfg.h, cfg.h, len(edges))

    vectors = graph_gram_vectors(g, cfg.dimension(g.n), rng)
    omega = vectors @ vectors.T
    np.fill_diagonal(omega, 1.0)
    for i, j in edges:
        omega[i, j] = omega[j, i] = 0.0

    unrelated = [
        (i, j)
        for i in range(g.n)
        for j in range(i + 1, g.n)
        if (i, j) not in g.bidirected and (i, j) not in g.directed and (j, i) not in g.directed
    ]
    if unrelated:
        warnings.warn(
            "Zeroing %i Omega entries outside the bidirected pattern" % len(unrelated)
        )
        for i, j in unrelated:
            omega[i, j] = omega[j, i] = 0.0
        vectors = None
        if not psd_check(omega):
            logger = logging.getLogger("lsemStability")
            logger.warning("Pattern-zeroed Omega is not PSD")
            return Parameters(g, lam, omega, check=False)
    return Parameters(g, lam, omega, gram_vectors=vectors)


def instability_instance(eps):
    """The four-vertex bow-free path whose condition number grows like
  ``1/eps``: it sits at distance ``eps`` from a point where the recurrence
  denominator for ``Lambda[2,3]`` vanishes."""
    if eps < 0:
        raise ValidationError("eps must be non-negative, got %r" % eps)
    g = path_graph(4)
    lam = np.zeros((4, 4))
    lam[0, 1] = np.sqrt(2)
    lam[1, 2] = -np.sqrt(2)
    lam[2, 3] = 0.5
    omega = np.array(
        [
            [1.0, 0.0, 0.5, 0.5],
            [0.0, 1.0, 0.0, 0.5],
            [0.5, 0.0, 1.0 + eps, 0.0],
            [0.5, 0.5, 0.0, 1.0],
        ]
    )
    return Parameters(g, lam, omega)


def jitter_parameters(p, std, rng, target="lambda"):
    """Add ``N(0, std^2)`` to every non-zero entry of Lambda, of Omega
  (symmetrically), or of both. The result is not re-validated: Omega may
  stop being PSD, which the sup in the condition number allows."""
    if std < 0:
        raise ValidationError("Jitter std must be non-negative, got %r" % std)
    if target not in ("lambda", "omega", "both"):
        raise ValidationError("Unknown jitter target %r" % target)
    lam, omega = p.lambda_.copy(), p.omega.copy()
    if target in ("lambda", "both"):
        mask = lam != 0
        lam[mask] += rng.normal(0.0, std, int(mask.sum()))
    if target in ("omega", "both"):
        noise = np.triu(rng.normal(0.0, std, omega.shape))
        noise = noise + np.triu(noise, 1).T
        omega = omega + np.where(omega != 0, noise, 0.0)
    jittered = p.copy(lambda_=lam, omega=omega, check=False)
    if target == "lambda":
        jittered.gram_vectors = p.gram_vectors
    return jittered


def divergence_probe(h, trials, d, rng, n=3):
    """Fraction of random path instances with ``|Sigma[0,1]| >= Sigma[0,0]``.

  With ``Omega[0,1] = 0`` and ``Omega[0,0] = 1`` this is the event
  ``|Lambda[0,1]| >= 1``, of probability ``(h-1)/h`` once ``h > 1``."""
    from lsemStability.scm import forward_covariance

    if h <= 0:
        raise ValidationError("h must be positive, got %r" % h)
    g = path_graph(n)
    cfg = GeneratorConfig(h=h, d=d)
    base = int(rng.integers(2 ** 32))
    hits = 0
    for trial in range(trials):
        p = random_parameters(g, cfg, np.random.default_rng([base, trial]))
        sigma = np.asarray(forward_covariance(p))
        if abs(sigma[0, 1]) >= sigma[0, 0]:
            hits += 1
    return hits / trials
