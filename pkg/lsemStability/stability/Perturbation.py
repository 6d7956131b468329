"""Perturbation modes for covariance matrices.

Each mode is a small class with a ``name`` and an ``apply`` method taking the
matrix, the :class:`PerturbationSpec` and a numpy ``Generator``. The
``perturbations`` list at the bottom is the registry :func:`perturb` looks
modes up in."""
import numpy as np
from lsemStability.errors import ValidationError


def _mirror(noise):
    upper = np.triu(noise)
    return upper + np.triu(upper, 1).T


class GaussianAdditive:
    """Independent ``N(0, eps^2)`` noise on every targeted entry."""

    name = "gaussian"

    def apply(self, sigma, spec, rng):
        noise = rng.normal(0.0, spec.magnitude, sigma.shape)
        if spec.symmetric:
            noise = _mirror(noise)
        return sigma + np.where(spec.mask(sigma), noise, 0.0)


class RelativeGamma:
    """Entry ``(i,j)`` moves by at most ``gamma |Sigma[i,j]|``.

  Draws ``e[i,j]`` uniformly in ``[-|Sigma[i,j]|, |Sigma[i,j]|]`` and then
  rescales all of them together so that the largest relative error is
  exactly ``gamma``."""

    name = "relative"

    def apply(self, sigma, spec, rng):
        scale = np.abs(sigma)
        e = rng.uniform(-1.0, 1.0, sigma.shape) * scale
        if spec.symmetric:
            e = _mirror(e)
        e = np.where(spec.mask(sigma), e, 0.0)
        nonzero = scale > 0
        if not nonzero.any() or spec.magnitude == 0:
            return sigma.copy()
        worst = np.max(np.abs(e[nonzero]) / scale[nonzero])
        if worst == 0:
            return sigma.copy()
        return sigma + e * (spec.magnitude / worst)


class UniformAdditive:
    """The constant ``gamma`` added to every targeted entry."""

    name = "uniform"

    def apply(self, sigma, spec, rng):
        return sigma + np.where(spec.mask(sigma), spec.magnitude, 0.0)


perturbations = [GaussianAdditive, RelativeGamma, UniformAdditive]


class PerturbationSpec:
    """How to perturb a covariance matrix.

  ``mode`` names an entry of ``perturbations`` (``gaussian``, ``relative`` or
  ``uniform``); ``magnitude`` is the standard deviation for ``gaussian`` and
  the bound/shift ``gamma`` otherwise. ``target`` is ``nonzero`` (only entries
  where Sigma is non-zero move) or ``all``. With ``symmetric`` set the
  perturbation of ``(i,j)`` is mirrored onto ``(j,i)``."""

    def __init__(self, mode="gaussian", magnitude=1e-6, target="nonzero", symmetric=True):
        if mode not in [p.name for p in perturbations]:
            raise ValidationError(
                "Unknown perturbation mode %r (expected one of %s)"
                % (mode, ", ".join(p.name for p in perturbations))
            )
        if target not in ("nonzero", "all"):
            raise ValidationError("Perturbation target must be 'nonzero' or 'all', got %r" % target)
        if not magnitude >= 0:
            raise ValidationError("Perturbation magnitude must be non-negative, got %r" % magnitude)
        self.mode = mode
        self.magnitude = float(magnitude)
        self.target = target
        self.symmetric = bool(symmetric)

    def __repr__(self):
        return "<PerturbationSpec %s %g on %s entries%s>" % (
            self.mode,
            self.magnitude,
            self.target,
            " (symmetric)" if self.symmetric else "",
        )

    def mask(self, sigma):
        if self.target == "all":
            return np.ones(sigma.shape, dtype=bool)
        return sigma != 0

    def asJSON(self):
        return {
            "mode": self.mode,
            "magnitude": self.magnitude,
            "target": self.target,
            "symmetric": self.symmetric,
        }


def perturb(sigma, spec, rng):
    """Return a perturbed copy of ``sigma`` as a plain array."""
    sigma = np.array(sigma, dtype=np.float64)
    for mode in perturbations:
        if mode.name == spec.mode:
            return mode().apply(sigma, spec, rng)
    raise ValidationError("Unknown perturbation mode %r" % spec.mode)
