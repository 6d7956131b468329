"""Recovering Lambda (and Omega) from a data covariance matrix.

Two solvers are provided: the closed-form recurrence for bow-free paths and
a column-by-column linear solve for general bow-free DAGs. On a path the
two are algebraically identical."""
import logging
import numpy as np
from lsemStability import RecoveryResult
from lsemStability.errors import (
    NearSingularSystem,
    NotAPath,
    NotBowFree,
    ShapeMismatch,
)
from lsemStability.linalg import solve_dense, PIVOT_THRESHOLD


def _square(sigma, n=None):
    sigma = np.asarray(sigma, dtype=np.float64)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise ShapeMismatch("Sigma must be square, got %s" % (sigma.shape,))
    if n is not None and sigma.shape[0] != n:
        raise ShapeMismatch("Sigma is %ix%i, expected n=%i" % (sigma.shape + (n,)))
    return sigma


def recurrence_step(sigma, i, lam_prev):
    """One step of the path recurrence: the coefficient on edge
  ``(i, i+1)`` given the coefficient ``lam_prev`` on edge ``(i-1, i)``.

  Returns ``(numerator, denominator)``; for ``i == 0`` these are
  ``Sigma[0,1]`` and ``Sigma[0,0]``."""
    if i == 0:
        return sigma[0, 1], sigma[0, 0]
    numerator = -lam_prev * sigma[i - 1, i + 1] + sigma[i, i + 1]
    denominator = -lam_prev * sigma[i - 1, i] + sigma[i, i]
    return numerator, denominator


def recover_path_lambda(sigma, n=None):
    """Recover Lambda on the bow-free path ``0 -> 1 -> ... -> n-1``.

  Base case ``Lambda[0,1] = Sigma[0,1] / Sigma[0,0]``; then for ``i >= 1``::

      Lambda[i,i+1] = (-Lambda[i-1,i] Sigma[i-1,i+1] + Sigma[i,i+1])
                      / (-Lambda[i-1,i] Sigma[i-1,i] + Sigma[i,i])

  A denominator smaller than ``1e-12 * |Sigma[i,i]|`` raises
  :class:`NearSingularSystem` naming the target node ``i+1``."""
    sigma = _square(sigma, n)
    n = sigma.shape[0]
    if n < 2:
        raise ShapeMismatch("Path recovery needs n >= 2")
    lam = np.zeros((n, n))
    min_pivots = [np.inf] * n
    lam_prev = 0.0
    for i in range(n - 1):
        numerator, denominator = recurrence_step(sigma, i, lam_prev)
        reference = abs(sigma[i, i])
        relative = abs(denominator) / reference if reference > 0 else 0.0
        min_pivots[i + 1] = relative
        if relative < PIVOT_THRESHOLD:
            raise NearSingularSystem(
                "Recurrence denominator vanishes at node %i (relative size %.3g)"
                % (i + 1, relative),
                node=i + 1,
                pivot=relative,
            )
        lam[i, i + 1] = lam_prev = numerator / denominator
    return RecoveryResult(lam, min_pivots=min_pivots)


def recover_bowfree_lambda(sigma, g):
    """Recover Lambda on a bow-free DAG, one column at a time in topological
  order.

  For node ``v`` with parents ``P`` bow-freeness gives ``Omega[p,v] = 0`` for
  every ``p`` in ``P``, i.e. ``[(I-Lambda)^T Sigma (I-Lambda)][p,v] = 0``.
  With ``M = (I - Lambda)^T Sigma`` this is the linear system
  ``M[P,P] lambda_v = M[P,v]``; the rows of ``M`` indexed by ``P`` only
  involve columns of Lambda that are already known."""
    sigma = _square(sigma, g.n)
    if not g.is_bow_free():
        raise NotBowFree("Graph has a vertex pair with both edge kinds")
    n = g.n
    lam = np.zeros((n, n))
    min_pivots = [np.inf] * n
    logger = logging.getLogger("lsemStability")
    for v in g.topological_order():
        parents = g.parents(v)
        if not parents:
            continue
        m = sigma[parents, :] - lam[:, parents].T @ sigma
        a = m[:, parents]
        b = m[:, v]
        try:
            x, pivot = solve_dense(
                a, b, scale=np.abs(np.diag(sigma)[parents]), full_output=True
            )
        except NearSingularSystem as e:
            raise NearSingularSystem(
                "Near-singular system at node %i (relative pivot %.3g)" % (v, e.pivot),
                node=v,
                pivot=e.pivot,
            )
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug("Node %i: parents %s, min pivot %.3g", v, parents, pivot)
        lam[parents, v] = x
        min_pivots[v] = pivot
    return RecoveryResult(lam, min_pivots=min_pivots)


def recover_omega(sigma, lambda_hat):
    """``Omega = (I - Lambda)^T Sigma (I - Lambda)``, symmetrised.

  Entries off the bidirected pattern are left as computed: their size
  measures how far Sigma is from the hypothesised model."""
    sigma = np.asarray(sigma, dtype=np.float64)
    lambda_hat = np.asarray(lambda_hat, dtype=np.float64)
    if sigma.shape != lambda_hat.shape or sigma.ndim != 2:
        raise ShapeMismatch(
            "Sigma %s and Lambda %s must be equal square shapes"
            % (sigma.shape, lambda_hat.shape)
        )
    b = np.eye(sigma.shape[0]) - lambda_hat
    omega = b.T @ sigma @ b
    return (omega + omega.T) / 2.0


def recover(sigma, g, omega=False):
    """Pick the path recurrence when ``g`` is a path, else the general
  solver; optionally fill in ``omega_hat``."""
    if g.is_path:
        result = recover_path_lambda(sigma, g.n)
    else:
        result = recover_bowfree_lambda(sigma, g)
    if omega:
        result.omega_hat = recover_omega(sigma, result.lambda_hat)
    return result


def verify_recurrence_identity(p):
    """Largest residual of the identity behind the path recurrence::

      -L[i,i+1] L[i-1,i] S[i-1,i] + L[i,i+1] S[i,i]
          == -L[i-1,i] S[i-1,i+1] + S[i,i+1]

  evaluated on the exact covariance of ``p``."""
    from lsemStability.scm import forward_covariance

    if not p.graph.is_path:
        raise NotAPath("Recurrence identity only holds on paths, got %r" % p.graph)
    s = np.asarray(forward_covariance(p))
    lam = p.lambda_
    residual = 0.0
    for i in range(1, p.n - 1):
        lhs = -lam[i, i + 1] * lam[i - 1, i] * s[i - 1, i] + lam[i, i + 1] * s[i, i]
        rhs = -lam[i - 1, i] * s[i - 1, i + 1] + s[i, i + 1]
        residual = max(residual, abs(lhs - rhs))
    return residual
