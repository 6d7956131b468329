"""Condition numbers of parameter recovery.

The relative distance between two matrices is the largest relative change
over the entries where the reference is non-zero. A *randomized condition
number* averages, over random perturbations of Sigma, the ratio of the
relative change in the recovered Lambda to the relative change in Sigma.
:func:`condition_heuristic` is the absolute-norm variant used to sort
instances into well- and ill-conditioned ones."""
import logging
import math
import warnings
import numpy as np
from lsemStability.errors import (
    AllZeroReference,
    BaselineRecoveryFailed,
    NearSingularSystem,
    NumericalError,
    ShapeMismatch,
    ValidationError,
)
from lsemStability.recovery import recover
from lsemStability.stability.Perturbation import (
    PerturbationSpec,
    perturb,
    perturbations,
)
from lsemStability.stability.ModelCheck import (
    ModelCheckReport,
    check_model_assumptions,
    theoretical_kappa_bound,
    bound_terms,
    tau_sequence,
    local_dominance_profile,
)

HISTOGRAM_BINS = 30


def rel_dist(a, b):
    """``max |a_ij - b_ij| / |a_ij|`` over the entries where ``a`` is
  non-zero. Not symmetric in its arguments."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeMismatch("Cannot compare %s with %s" % (a.shape, b.shape))
    support = a != 0
    if not support.any():
        raise AllZeroReference("Relative distance to an all-zero matrix is undefined")
    return float(np.max(np.abs(a[support] - b[support]) / np.abs(a[support])))


class ConditionReport:
    """Per-trial condition numbers from a randomized experiment.

  ``kappas`` holds one value per successful trial; trials whose recovery
  broke down are only counted in ``failed_trials``. The histogram has
  ``HISTOGRAM_BINS`` log-spaced bins over the observed range, with zero
  values counted in the lowest bin."""

    def __init__(self, trials, kappas, failed_trials=0):
        self.trials = trials
        self.kappas = np.asarray(kappas, dtype=np.float64)
        self.failed_trials = failed_trials
        self.mean_kappa = float(np.mean(self.kappas)) if len(self.kappas) else math.nan
        self.histogram = self._histogram()

    def _histogram(self):
        if not len(self.kappas):
            return np.array([]), np.array([], dtype=int)
        positive = self.kappas[self.kappas > 0]
        low = float(np.min(positive)) if len(positive) else 1.0
        high = max(float(np.max(self.kappas)), low)
        if high == low:
            high = low * 10.0
        edges = np.geomspace(low, high, HISTOGRAM_BINS + 1)
        counts, _ = np.histogram(np.clip(self.kappas, low, high), bins=edges)
        return edges, counts

    def __repr__(self):
        return "<ConditionReport %i trials, %i failed, mean kappa %.4g>" % (
            self.trials,
            self.failed_trials,
            self.mean_kappa,
        )

    from lsemStability.jsonLib.ConditionReport import asJSON, save


def relative_kappa(sigma, sigma_tilde, lam, lam_tilde):
    return rel_dist(lam, lam_tilde) / rel_dist(sigma, sigma_tilde)


def absolute_kappa(sigma, sigma_tilde, lam, lam_tilde):
    return np.max(np.abs(lam_tilde - lam)) / np.max(np.abs(sigma_tilde - sigma))


def baseline_recovery(sigma, g):
    """Lambda recovered from the unperturbed Sigma; a breakdown here means
  there is nothing to measure against."""
    try:
        return recover(sigma, g).lambda_hat
    except NearSingularSystem as e:
        raise BaselineRecoveryFailed(
            "Recovery from the unperturbed covariance failed: %s" % e, node=e.node
        )


def condition_trials(sigma, lam, g, make_perturbed, trials, rng, kappa=relative_kappa):
    """Run ``trials`` perturb-and-recover rounds.

  ``make_perturbed`` receives a per-trial generator and returns the
  perturbed Sigma; ``lam`` is the baseline Lambda to compare against. Trial
  ``r`` draws from ``default_rng([base, r])`` with ``base`` taken from
  ``rng``, so results do not depend on the order trials run in. Relative
  condition numbers need a baseline Lambda with a non-zero entry."""
    if trials < 1:
        raise ValidationError("Need at least one trial, got %i" % trials)
    if kappa is relative_kappa and not np.any(np.asarray(lam) != 0):
        raise AllZeroReference(
            "Baseline Lambda is all zero; relative changes in it are undefined"
        )
    sigma = np.asarray(sigma, dtype=np.float64)
    base = int(rng.integers(2 ** 32))
    logger = logging.getLogger("lsemStability")
    kappas = []
    failed = 0
    for r in range(trials):
        sigma_tilde = np.asarray(make_perturbed(np.random.default_rng([base, r])))
        try:
            lam_tilde = recover(sigma_tilde, g).lambda_hat
        except NumericalError as e:
            if logger.isEnabledFor(logging.DEBUG):
                logger.debug("Trial %i: recovery failed (%s)", r, e)
            failed += 1
            continue
        try:
            with np.errstate(divide="ignore", invalid="ignore"):
                k = float(kappa(sigma, sigma_tilde, lam, lam_tilde))
        except ZeroDivisionError:
            k = math.inf
        if not math.isfinite(k):
            if logger.isEnabledFor(logging.DEBUG):
                logger.debug("Trial %i: perturbation left Sigma unchanged", r)
            failed += 1
            continue
        kappas.append(k)
    if failed:
        warnings.warn(
            "%i of %i trials failed and were left out of the mean" % (failed, trials)
        )
    report = ConditionReport(trials, kappas, failed)
    logger.info("%r", report)
    return report


def randomized_condition_number(sigma, g, spec, trials, rng):
    """Average of ``RelDist(Lambda, Lambda~) / RelDist(Sigma, Sigma~)`` over
  ``trials`` perturbations drawn according to ``spec``."""
    if spec.magnitude == 0:
        raise ValidationError("A zero perturbation gives an undefined condition number")
    sigma = np.asarray(sigma, dtype=np.float64)
    lam = baseline_recovery(sigma, g)
    return condition_trials(
        sigma, lam, g, lambda r: perturb(sigma, spec, r), trials, rng
    )


def condition_heuristic(
    sigma, g, tau_threshold, rng, trials=None, eps=None, full_output=False
):
    """Sort an instance into ``well-conditioned`` or ``ill-conditioned``.

  Each round adds independent ``N(0, eps^2)`` noise to every entry of Sigma,
  recovers Lambda again and records
  ``max |Lambda~ - Lambda| / max |Sigma~ - Sigma|``. If the mean over all
  rounds reaches ``tau_threshold`` the instance is ill-conditioned. The
  defaults ``eps = 1/n^4`` and ``trials = n^4`` get expensive quickly; pass
  smaller values for larger graphs.

  Returns ``(verdict, mean)``, plus the :class:`ConditionReport` with
  ``full_output``."""
    if not tau_threshold > 0:
        raise ValidationError("Threshold must be positive, got %r" % tau_threshold)
    n = g.n
    if eps is None:
        eps = 1.0 / n ** 4
    if trials is None:
        trials = n ** 4
    spec = PerturbationSpec("gaussian", eps, target="all", symmetric=False)
    if spec.magnitude == 0:
        raise ValidationError("eps must be positive")
    sigma = np.asarray(sigma, dtype=np.float64)
    lam = baseline_recovery(sigma, g)
    report = condition_trials(
        sigma,
        lam,
        g,
        lambda r: perturb(sigma, spec, r),
        trials,
        rng,
        kappa=absolute_kappa,
    )
    mean = report.mean_kappa
    if math.isnan(mean) or mean >= tau_threshold:
        verdict = "ill-conditioned"
    else:
        verdict = "well-conditioned"
    logger = logging.getLogger("lsemStability")
    logger.info(
        "Mean kappa %.4g against threshold %g: %s (%i failed trials)",
        mean,
        tau_threshold,
        verdict,
        report.failed_trials,
    )
    if full_output:
        return verdict, mean, report
    return verdict, mean


def condition_number_sweep(sigma, g, trials, rng, gammas=(1e-7, 1e-8, 1e-9)):
    """Randomized condition numbers under relative perturbations of
  shrinking size; the means should settle as ``gamma`` goes to zero.

  Returns a list of ``(gamma, ConditionReport)``."""
    return [
        (
            gamma,
            randomized_condition_number(
                sigma, g, PerturbationSpec("relative", gamma), trials, rng
            ),
        )
        for gamma in gammas
    ]
