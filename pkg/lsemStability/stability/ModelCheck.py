"""Checking a bow-free path instance against the local-dominance data
properties, and the condition-number bound those properties buy.

The data properties ask, for a constant ``alpha <= 1/5``, that every
near-diagonal entry of Sigma be small next to the diagonal::

    |Sigma[i-1,i]|, |Sigma[i,i+1]|, |Sigma[i-1,i+1]| <= alpha Sigma[i,i]

and that every edge weight satisfy ``1/n^2 <= |Lambda[i,i+1]| <= 1``. Under
them the relative condition number of path recovery is at most
``lambda beta_c / (1 - gamma)`` where ``lambda = 1/min |Lambda[i,i+1]|``.
"""
import math
import warnings
import numpy as np
import pandas as pd
from lsemStability.errors import (
    BoundInapplicable,
    NotAPath,
    ShapeMismatch,
    ValidationError,
)

ALPHA_LIMIT = 0.2


class ModelCheckReport:
    """Outcome of :func:`check_model_assumptions`.

  ``per_index_ratios`` maps ``previous``, ``next`` and ``skip`` to arrays of
  ``|Sigma[i-1,i]|``, ``|Sigma[i,i+1]|`` and ``|Sigma[i-1,i+1]|`` divided by
  ``Sigma[i,i]``; indices where the neighbour does not exist hold NaN."""

    def __init__(self, alpha_min, lambda_param, satisfied, per_index_ratios):
        self.alpha_min = alpha_min
        self.lambda_param = lambda_param
        self.satisfied = satisfied
        self.per_index_ratios = per_index_ratios

    def __repr__(self):
        return "<ModelCheckReport alpha_min=%.4g lambda=%.4g %s>" % (
            self.alpha_min,
            self.lambda_param,
            "satisfied" if self.satisfied else "violated",
        )

    from lsemStability.jsonLib.ModelCheckReport import asJSON


def _path_weights(lam, n):
    lam = np.asarray(lam, dtype=np.float64)
    if lam.shape != (n, n):
        raise ShapeMismatch("Lambda is %s but Sigma is %ix%i" % (lam.shape, n, n))
    off_path = lam.copy()
    off_path[np.arange(n - 1), np.arange(1, n)] = 0.0
    if np.any(off_path != 0):
        rows, cols = np.nonzero(off_path)
        raise NotAPath(
            "Lambda[%i,%i] is non-zero off the path edges" % (rows[0], cols[0])
        )
    return np.abs(np.diag(lam, 1))


def check_model_assumptions(sigma, lam, alpha_threshold=ALPHA_LIMIT):
    """Measure how well a bow-free path instance meets the data properties.

  Ratios are taken for ``i = 0 .. n-2``; ``alpha_min`` is the largest of
  them, i.e. the smallest ``alpha`` for which every inequality holds."""
    sigma = np.asarray(sigma, dtype=np.float64)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise ShapeMismatch("Sigma must be square, got %s" % (sigma.shape,))
    n = sigma.shape[0]
    if n < 2:
        raise NotAPath("A path needs at least 2 vertices")
    weights = _path_weights(lam, n)
    diagonal = np.diag(sigma)
    if np.any(diagonal <= 0):
        raise ValidationError("Sigma must have a strictly positive diagonal")

    ratios = {key: np.full(n, np.nan) for key in ("previous", "next", "skip")}
    for i in range(n - 1):
        ratios["next"][i] = abs(sigma[i, i + 1]) / diagonal[i]
        if i >= 1:
            ratios["previous"][i] = abs(sigma[i - 1, i]) / diagonal[i]
            ratios["skip"][i] = abs(sigma[i - 1, i + 1]) / diagonal[i]
    alpha_min = float(np.nanmax(np.concatenate(list(ratios.values()))))

    smallest = float(np.min(weights))
    lambda_param = 1.0 / smallest if smallest > 0 else math.inf
    satisfied = bool(
        alpha_min <= alpha_threshold
        and smallest >= 1.0 / n ** 2
        and float(np.max(weights)) <= 1.0
    )
    return ModelCheckReport(alpha_min, lambda_param, satisfied, ratios)


def tau_sequence(n, gamma):
    """Growth bounds for the recovered path weights under a relative
  perturbation ``gamma``: ``tau_1 = 1 + 2 gamma`` and each later edge adds
  ``5 gamma``. One entry per edge."""
    if n < 2:
        raise NotAPath("A path needs at least 2 vertices")
    return 1.0 + 2.0 * gamma + 5.0 * gamma * np.arange(n - 1)


def bound_terms(alpha, gamma, n):
    """``(tau, beta_c)`` with ``tau = 1 + 5 n gamma`` and::

      beta_c = ((3 + 3 tau) alpha + (tau + 1))
               / (1 - (tau + 2) alpha - (tau + 1) alpha^2 - 4 n gamma)
  """
    tau = 1.0 + 5.0 * n * gamma
    denominator = 1.0 - (tau + 2.0) * alpha - (tau + 1.0) * alpha ** 2 - 4.0 * n * gamma
    if denominator <= 0:
        raise BoundInapplicable(
            "beta_c denominator is %.4g <= 0 for alpha=%g, gamma=%g, n=%i"
            % (denominator, alpha, gamma, n)
        )
    return tau, ((3.0 + 3.0 * tau) * alpha + (tau + 1.0)) / denominator


def theoretical_kappa_bound(alpha, gamma, n, lambda_param, strict=True):
    """Upper bound ``lambda beta_c / (1 - gamma)`` on the relative condition
  number of recovery on a bow-free path.

  With ``strict`` a ``gamma`` above ``1/n^6`` raises
  :class:`BoundInapplicable`; otherwise it only warns, since the formula
  stays well defined as long as the ``beta_c`` denominator is positive."""
    if not 0 <= alpha <= ALPHA_LIMIT:
        raise BoundInapplicable("alpha=%g outside [0, 1/5]" % alpha)
    if gamma < 0 or gamma >= 1:
        raise BoundInapplicable("gamma=%g outside [0, 1)" % gamma)
    if gamma > 1.0 / n ** 6:
        if strict:
            raise BoundInapplicable("gamma=%g exceeds 1/n^6 for n=%i" % (gamma, n))
        warnings.warn("gamma=%g exceeds 1/n^6 for n=%i" % (gamma, n))
    if not lambda_param > 0:
        raise BoundInapplicable("lambda must be positive, got %r" % lambda_param)
    _, beta_c = bound_terms(alpha, gamma, n)
    return lambda_param * beta_c / (1.0 - gamma)


def local_dominance_profile(sigma):
    """Absolute near-diagonal entries of Sigma, one row per vertex.

  Columns ``i``, ``sigma_ii``, ``sigma_i_ip1``, ``sigma_im1_i`` and
  ``sigma_im1_ip1``; entries past either end of the path are NaN."""
    sigma = np.abs(np.asarray(sigma, dtype=np.float64))
    n = sigma.shape[0]
    index = np.arange(n)
    nan = np.full(n, np.nan)
    ahead = nan.copy()
    behind = nan.copy()
    straddle = nan.copy()
    ahead[:-1] = sigma[index[:-1], index[:-1] + 1]
    behind[1:] = sigma[index[1:] - 1, index[1:]]
    straddle[1:-1] = sigma[index[1:-1] - 1, index[1:-1] + 1]
    return pd.DataFrame(
        {
            "i": index,
            "sigma_ii": np.diag(sigma),
            "sigma_i_ip1": ahead,
            "sigma_im1_i": behind,
            "sigma_im1_ip1": straddle,
        }
    )
