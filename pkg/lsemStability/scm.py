"""The forward model of a linear SEM: exact covariance, sampling and
empirical covariance, plus the path-specific expansions of Sigma."""
import logging
import numpy as np
import pandas as pd
from lsemStability import Covariance, ObservationBatch
from lsemStability.errors import (
    NotAPath,
    EmptyBatch,
    NonPsdOmega,
    InputFileError,
    ValidationError,
)
from lsemStability.linalg import unit_upper_triangular_inverse, psd_check

NOISE_JITTER = 1e-12


def _propagator(p):
    """``(I - Lambda)^{-1}``, inverted in the graph's topological order."""
    order = p.graph.topological_order()
    return unit_upper_triangular_inverse(np.eye(p.n) - p.lambda_, order=order)


def forward_covariance(p):
    """``Sigma = (I - Lambda)^{-T} Omega (I - Lambda)^{-1}``."""
    inverse = _propagator(p)
    sigma = inverse.T @ p.omega @ inverse
    return Covariance((sigma + sigma.T) / 2.0, check=False)


def _noise_factor(p):
    """A matrix ``R`` with ``R^T R = Omega``; ``eta = g R`` for standard
  normal rows ``g``."""
    if p.gram_vectors is not None:
        # V = R^T Q^T with V V^T = Omega, so R is an exact factor even when
        # Omega is singular.
        return np.linalg.qr(p.gram_vectors.T, mode="r")
    scale = max(1.0, float(np.max(np.diag(p.omega))))
    try:
        return np.linalg.cholesky(p.omega + NOISE_JITTER * scale * np.eye(p.n)).T
    except np.linalg.LinAlgError:
        if not psd_check(p.omega):
            raise NonPsdOmega("Omega is not positive semidefinite; cannot sample noise")
    # PSD but singular beyond the default jitter
    logger = logging.getLogger("lsemStability")
    logger.info("Omega is singular; sampling with jitter %g", 1e3 * NOISE_JITTER * scale)
    try:
        return np.linalg.cholesky(p.omega + 1e3 * NOISE_JITTER * scale * np.eye(p.n)).T
    except np.linalg.LinAlgError:
        raise NonPsdOmega("Jittered Cholesky of Omega failed")


def sample_observations(p, m, rng):
    """Draw ``m`` independent samples ``X = (I - Lambda)^{-T} eta``."""
    if m < 1:
        raise EmptyBatch("Need at least one sample, got %i" % m)
    factor = _noise_factor(p)
    noise = rng.standard_normal((m, factor.shape[0])) @ factor
    return ObservationBatch(noise @ _propagator(p), names=p.graph.names)


def sample_covariance(batch, center=False):
    """Second-moment estimate ``(1/m) sum_r x_r x_r^T``.

  The model has zero mean, so no centering is done unless ``center`` is set
  (useful for external data)."""
    x = np.asarray(batch, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 1:
        raise EmptyBatch("Cannot form a covariance from an empty batch")
    if center:
        x = x - x.mean(axis=0)
    sigma = x.T @ x / x.shape[0]
    return Covariance((sigma + sigma.T) / 2.0, check=False)


def _require_path(p):
    if not p.graph.is_path:
        raise NotAPath("Operation only defined on bow-free paths, got %r" % p.graph)


def cumulative_path_weight(p, l, k):
    """``prod_{j=l}^{k-1} Lambda[j, j+1]``, or 1 when ``l >= k``."""
    _require_path(p)
    if l >= k:
        return 1.0
    return float(np.prod([p.lambda_[j, j + 1] for j in range(l, k)]))


def _path_weights(p, i):
    # Entry k is the cumulative weight from k to i, for k = 0..i
    return np.array([cumulative_path_weight(p, k, i) for k in range(i + 1)])


def sigma_entry_expansion(p, i, j):
    """``Sigma[i,j] = sum_{k<=i} sum_{k'<=j} W(k,i) W(k',j) Omega[k,k']``
  where ``W`` is :func:`cumulative_path_weight`."""
    _require_path(p)
    wi, wj = _path_weights(p, i), _path_weights(p, j)
    return float(wi @ p.omega[: i + 1, : j + 1] @ wj)


def path_power_sums(p):
    """``P_i = sum_{k<=i} W(k,i)^2`` for every vertex ``i``."""
    _require_path(p)
    return np.array([np.sum(_path_weights(p, i) ** 2) for i in range(p.n)])


def cross_term_mass(p, i, j):
    """The off-diagonal part of the expansion of ``Sigma[i,j]`` taken in
  absolute value: ``sum_{k != k'} |W(k,i) W(k',j) Omega[k,k']|``."""
    _require_path(p)
    wi, wj = _path_weights(p, i), _path_weights(p, j)
    block = np.abs(np.outer(wi, wj) * p.omega[: i + 1, : j + 1])
    diagonal = sum(block[k, k] for k in range(min(i, j) + 1))
    return float(np.sum(block) - diagonal)


def load_observations(path, center=False):
    """Read observational data: a header row of variable names, then one
  row per sample."""
    try:
        frame = pd.read_csv(path)
    except FileNotFoundError:
        raise InputFileError("Data file %s not found" % path, path=path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise InputFileError("Could not parse data file %s: %s" % (path, e), path=path)
    if frame.empty:
        raise EmptyBatch("Data file %s has no samples" % path)
    try:
        data = frame.to_numpy(dtype=np.float64)
    except ValueError:
        raise ValidationError("Data file %s has non-numeric entries" % path)
    if center:
        data = data - data.mean(axis=0)
    return ObservationBatch(data, names=[str(c) for c in frame.columns])


def observations_frame(batch):
    return pd.DataFrame(np.asarray(batch), columns=batch.names)


def save_observations(batch, path):
    observations_frame(batch).to_csv(path, index=False, float_format="%.17g")
