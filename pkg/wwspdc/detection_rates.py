"""
Single and coincidence detection rates.

Each rate is available three ways: closed-form rules, Monte Carlo estimates
over a vacuum sample stream, and (for the Hilbert normalization) the
Weyl-symbol evaluation of the field-operator words. The stochastic-model
rates are half the Hilbert-normalized ones.

Monte Carlo rules:

    single (stochastic)       <i_a> - <i_a0> = <i_a1>
    coincidence (stochastic)  Cov(i_a0, i_b1) + Cov(i_a1, i_b0)
    coincidence (hilbert)     |<E_A0 E_B1 + E_A1 E_B0>|^2, field form

Error bars come from evaluating the whole expression per batch.
"""
import logging
from collections.abc import Callable, Iterable
from typing import Optional

import numpy as np
from scipy.optimize import curve_fit

from .base import (
    ConfigError,
    Convention,
    DomainError,
    EfficiencyPair,
    Party,
    RateEstimate,
    value_of,
)
from .gaussian_modes import VacuumSample, batched_estimate
from .polarization_fields import (
    AnalyzerAngles,
    alice_fields,
    bob_fields,
    party_intensities,
    total_field_form,
)
from .ww_algebra import dagger_form, expand_product, vacuum_expectation, weyl_symbol_of_sum

logger = logging.getLogger(__name__)

# Above this |D| the O(|D|^2) truncation is logged as questionable
PERTURBATIVE_WARN_D = 0.2


def check_d(D: complex) -> complex:
    """Validate D for the perturbative rules"""
    D = complex(D)
    if not np.isfinite(D):
        raise DomainError(f"D must be finite, got {D}")
    if abs(D) >= 1.0:
        raise DomainError(f"|D| must be < 1, got |D|={abs(D):.6g}")
    if abs(D) > PERTURBATIVE_WARN_D:
        logger.warning("|D|=%.3g exceeds %.1f; second-order rates may be inaccurate", abs(D), PERTURBATIVE_WARN_D)
    return D


def _party_fields(sample: VacuumSample, D: complex, angle: float, party: Party):
    if Party(party) is Party.ALICE:
        return alice_fields(sample, D, angle)
    return bob_fields(sample, D, angle)


def _batch_statistic(
    stream: Iterable[VacuumSample], statistic: Callable[[VacuumSample], complex]
) -> RateEstimate:
    values = []
    sizes = []
    for batch in stream:
        if len(batch) < 2:
            raise ConfigError("Per-batch covariances need at least 2 samples per batch")
        values.append(statistic(batch))
        sizes.append(len(batch))
    if not values:
        raise ConfigError("Empty sample stream")
    return RateEstimate.from_batches(np.array(values), sum(sizes), batch_sizes=sizes)


def _cov(x, y) -> float:
    """Unbiased sample covariance of two real arrays"""
    n = x.size
    return float((np.mean(x * y) - np.mean(x) * np.mean(y)) * n / (n - 1))


# Closed forms

def analytic_single(D: complex, convention: Convention = Convention.STOCHASTIC, party: Party = Party.ALICE) -> float:
    """|D|^2/2 (stochastic) or |D|^2 (hilbert), for either party and any angle"""
    D = check_d(D)
    Party(party)  # same rule for both parties
    return Convention(convention).factor * abs(D) ** 2 / 2.0


def analytic_coincidence(
    D: complex, angles: AnalyzerAngles, convention: Convention = Convention.STOCHASTIC
) -> float:
    D = check_d(D)
    return Convention(convention).factor * abs(D) ** 2 / 2.0 * np.cos(angles.theta - angles.phi) ** 2


def analytic_intensity_form_coincidence(D: complex, angles: AnalyzerAngles) -> float:
    """Expectation of Cov(i_a, i_b) - Cov(i_a0, i_b0).

    Equals |D|^2 cos^2(theta - phi) plus a residual
    (|D|^2/2 + |D|^4/4) sin^2(theta + phi) from the D-dressed <E_A E_B*>.
    """
    D = check_d(D)
    d2 = abs(D) ** 2
    return d2 * np.cos(angles.theta - angles.phi) ** 2 + (d2 / 2 + d2**2 / 4) * np.sin(angles.theta + angles.phi) ** 2


# Weyl-symbol route (hilbert normalization)

def operator_single(D: complex, angle: float, party: Party = Party.ALICE) -> float:
    """<0|E^- E^+|0> evaluated through Weyl symbols"""
    e_plus = total_field_form(D, angle, party)
    words = expand_product([dagger_form(e_plus), e_plus])
    return float(vacuum_expectation(weyl_symbol_of_sum(words)).real)


def operator_coincidence(D: complex, angles: AnalyzerAngles) -> float:
    """Symmetrized <0|E_A^- E_B^- E_B^+ E_A^+|0> evaluated through Weyl symbols"""
    e_a = total_field_form(D, angles.theta, Party.ALICE)
    e_b = total_field_form(D, angles.phi, Party.BOB)
    ba = expand_product([dagger_form(e_a), dagger_form(e_b), e_b, e_a])
    ab = expand_product([dagger_form(e_b), dagger_form(e_a), e_a, e_b])
    total = 0.5 * vacuum_expectation(weyl_symbol_of_sum(ba)) + 0.5 * vacuum_expectation(weyl_symbol_of_sum(ab))
    return float(total.real)


# Monte Carlo estimates

def mc_single(
    stream: Iterable[VacuumSample],
    D: complex,
    angle: float,
    convention: Convention = Convention.STOCHASTIC,
    party: Party = Party.ALICE,
) -> RateEstimate:
    """Batched estimate of factor * (<i> - <i_0>) at one analyzer"""
    D = check_d(D)
    factor = Convention(convention).factor

    def signal_intensity(batch: VacuumSample):
        e0, e1 = _party_fields(batch, D, angle, party)
        _, i_1, _ = party_intensities(e0, e1)
        return factor * i_1

    return batched_estimate(stream, signal_intensity)


def mc_coincidence(
    stream: Iterable[VacuumSample],
    D: complex,
    angles: AnalyzerAngles,
    convention: Convention = Convention.STOCHASTIC,
) -> RateEstimate:
    D = check_d(D)
    convention = Convention(convention)

    def stochastic_rule(batch: VacuumSample) -> float:
        a0, a1 = alice_fields(batch, D, angles.theta)
        b0, b1 = bob_fields(batch, D, angles.phi)
        i_a0, i_a1, _ = party_intensities(a0, a1)
        i_b0, i_b1, _ = party_intensities(b0, b1)
        return _cov(i_a0, i_b1) + _cov(i_a1, i_b0)

    def field_rule(batch: VacuumSample) -> float:
        a0, a1 = alice_fields(batch, D, angles.theta)
        b0, b1 = bob_fields(batch, D, angles.phi)
        # <E_A0 E_B0> = <E_A1 E_B1> = 0
        product = a0 * b1 + a1 * b0
        m = product.mean()
        # |sample mean|^2 overestimates |mean|^2 by Var/n
        bias = np.var(product, ddof=1) / product.size
        return float(abs(m) ** 2 - bias)

    if convention is Convention.STOCHASTIC:
        return _batch_statistic(stream, stochastic_rule)
    return _batch_statistic(stream, field_rule)


def mc_coincidence_intensity_form(
    stream: Iterable[VacuumSample], D: complex, angles: AnalyzerAngles
) -> RateEstimate:
    """Batched estimate of Cov(i_a, i_b) - Cov(i_a0, i_b0)"""
    D = check_d(D)

    def rule(batch: VacuumSample) -> float:
        a0, a1 = alice_fields(batch, D, angles.theta)
        b0, b1 = bob_fields(batch, D, angles.phi)
        i_a0, _, i_a = party_intensities(a0, a1)
        i_b0, _, i_b = party_intensities(b0, b1)
        return _cov(i_a, i_b) - _cov(i_a0, i_b0)

    return _batch_statistic(stream, rule)


def clamped_mc_single(
    stream: Iterable[VacuumSample],
    D: complex,
    theta: float,
    zpf_floor: float,
    convention: Convention = Convention.STOCHASTIC,
    party: Party = Party.ALICE,
) -> RateEstimate:
    """Exploratory positivity-clamped single rate.

    The background is modelled as a constant flux -zpf_floor at the detector:
    rate = <[i - floor]_+> - <[i_0 - floor]_+>. A floor <= 0 never binds.
    """
    D = check_d(D)
    if not np.isfinite(zpf_floor):
        raise ConfigError(f"zpf_floor must be finite, got {zpf_floor}")
    logger.warning("Clamped single rate uses a surrogate background (zpf_floor=%g); exploratory only", zpf_floor)
    factor = Convention(convention).factor

    def clamped(batch: VacuumSample):
        e0, e1 = _party_fields(batch, D, theta, party)
        i_0, i_1, i = party_intensities(e0, e1)
        if zpf_floor <= 0:
            return factor * i_1
        return factor * (np.maximum(i - zpf_floor, 0.0) - np.maximum(i_0 - zpf_floor, 0.0))

    return batched_estimate(stream, clamped)


def apply_efficiency(singles, coincidence, eff: EfficiencyPair):
    """(eta_a P_A, eta_b P_B, eta_a eta_b P_AB); works on floats or estimates"""
    p_a, p_b = singles
    return eff.eta_a * p_a, eff.eta_b * p_b, eff.eta_a * eff.eta_b * coincidence


def _cos2_model(delta, c):
    return c * np.cos(delta) ** 2


def fit_cos2_amplitude(deltas, values, errors: Optional[Iterable[float]] = None) -> tuple[float, float]:
    """Weighted least-squares amplitude c of c cos^2(delta), with its standard error"""
    deltas = np.asarray(deltas, dtype=float)
    y = np.array([float(np.real(value_of(v))) for v in values])
    if deltas.size < 2 or deltas.size != y.size:
        raise ConfigError("cos^2 fit needs at least 2 points with matching values")
    sigma = None if errors is None else np.asarray(list(errors), dtype=float)
    if sigma is not None and np.any(sigma <= 0):
        if np.all(y == 0):
            return 0.0, 0.0
        sigma = None
    popt, pcov = curve_fit(_cos2_model, deltas, y, p0=[max(y.max(), 1e-12)], sigma=sigma, absolute_sigma=sigma is not None)
    return float(popt[0]), float(np.sqrt(pcov[0, 0]))


__all__ = [
    "analytic_coincidence",
    "analytic_intensity_form_coincidence",
    "analytic_single",
    "apply_efficiency",
    "check_d",
    "clamped_mc_single",
    "fit_cos2_amplitude",
    "mc_coincidence",
    "mc_coincidence_intensity_form",
    "mc_single",
    "operator_coincidence",
    "operator_single",
]
