import logging

import numpy as np
import pytest

from wwspdc.base import ConfigError, Convention, DomainError, EfficiencyPair, Party, RateEstimate
from wwspdc.detection_rates import (
    analytic_coincidence,
    analytic_intensity_form_coincidence,
    analytic_single,
    apply_efficiency,
    check_d,
    clamped_mc_single,
    fit_cos2_amplitude,
    mc_coincidence,
    mc_coincidence_intensity_form,
    mc_single,
    operator_coincidence,
    operator_single,
)
from wwspdc.fock_oracle import TruncatedSpace, coincidence_rate
from wwspdc.gaussian_modes import SamplerConfig, sample_vacuum
from wwspdc.polarization_fields import AnalyzerAngles

HILBERT = Convention.HILBERT
STOCHASTIC = Convention.STOCHASTIC


def test_analytic_rates():
    assert analytic_single(0.1) == pytest.approx(0.005)
    assert analytic_single(0.1, HILBERT) == pytest.approx(0.01)
    assert analytic_single(0.1j, HILBERT, Party.BOB) == pytest.approx(0.01)
    angles = AnalyzerAngles(0.0, 0.0)
    assert analytic_coincidence(0.1, angles) == pytest.approx(0.005)
    assert analytic_coincidence(0.1, AnalyzerAngles(np.pi / 2, 0.0)) == pytest.approx(0.0)
    assert analytic_coincidence(0.1, AnalyzerAngles(np.pi / 4, 0.0), HILBERT) == pytest.approx(0.005)


def test_conventions_differ_by_exactly_two():
    angles = AnalyzerAngles(0.3, 1.1)
    for D in (0.05, 0.1 + 0.1j, 0.2):
        assert analytic_coincidence(D, angles, HILBERT) == 2 * analytic_coincidence(D, angles, STOCHASTIC)
        assert analytic_single(D, HILBERT) == 2 * analytic_single(D, STOCHASTIC)


def test_check_d(caplog):
    with pytest.raises(DomainError):
        check_d(1.0)
    with pytest.raises(DomainError):
        check_d(complex(np.nan, 0))
    with caplog.at_level(logging.WARNING, logger="wwspdc.detection_rates"):
        check_d(0.5)
    assert "exceeds" in caplog.text


def test_operator_route_matches_closed_forms():
    D = 0.1 + 0.02j
    for theta in (0.0, 0.7, 2.0):
        assert operator_single(D, theta, Party.ALICE) == pytest.approx(abs(D) ** 2, abs=1e-12)
        assert operator_single(D, theta, Party.BOB) == pytest.approx(abs(D) ** 2, abs=1e-12)
    angles = AnalyzerAngles(np.pi / 4, np.pi / 8)
    assert operator_coincidence(D, angles) == pytest.approx(
        analytic_coincidence(D, angles, HILBERT), abs=2 * abs(D) ** 4
    )
    assert operator_coincidence(D, angles) == pytest.approx(coincidence_rate(TruncatedSpace(3), D, angles), abs=1e-10)


@pytest.mark.parametrize("convention", [STOCHASTIC, HILBERT])
@pytest.mark.parametrize("party", [Party.ALICE, Party.BOB])
def test_mc_single(small_stream, convention, party):
    D = 0.1
    for angle in (0.0, np.pi / 3):
        estimate = mc_single(small_stream, D, angle, convention, party)
        assert estimate.within(analytic_single(D, convention, party))


@pytest.mark.slow
@pytest.mark.parametrize("D", [0.05, 0.1, 0.2])
def test_mc_singles_full_ensemble(full_stream, D):
    for convention in (STOCHASTIC, HILBERT):
        expected = abs(D) ** 2 * (1.0 if convention is HILBERT else 0.5)
        for angle in (0.0, np.pi / 8, np.pi / 2):
            assert mc_single(full_stream, D, angle, convention, Party.ALICE).within(expected)
            assert mc_single(full_stream, D, angle, convention, Party.BOB).within(expected)


@pytest.mark.parametrize("theta,phi", [(0.0, 0.0), (np.pi / 4, np.pi / 8), (np.pi / 2, 0.0), (1.0, 2.5)])
def test_mc_coincidence_stochastic(small_stream, theta, phi):
    angles = AnalyzerAngles(theta, phi)
    estimate = mc_coincidence(small_stream, 0.1, angles, STOCHASTIC)
    assert isinstance(estimate, RateEstimate)
    assert estimate.within(analytic_coincidence(0.1, angles, STOCHASTIC))


@pytest.mark.parametrize("theta,phi", [(0.0, 0.0), (np.pi / 4, np.pi / 8), (np.pi / 2, 0.0), (1.0, 2.5)])
def test_mc_coincidence_hilbert_field_form(small_stream, theta, phi):
    angles = AnalyzerAngles(theta, phi)
    estimate = mc_coincidence(small_stream, 0.1, angles, HILBERT)
    assert estimate.within(analytic_coincidence(0.1, angles, HILBERT))


@pytest.mark.parametrize("theta,phi", [(0.0, 0.0), (np.pi / 4, np.pi / 4), (0.3, 1.0)])
def test_intensity_form_carries_residual(small_stream, theta, phi):
    D = 0.1
    angles = AnalyzerAngles(theta, phi)
    estimate = mc_coincidence_intensity_form(small_stream, D, angles)
    assert estimate.within(analytic_intensity_form_coincidence(D, angles))


def test_intensity_form_exact_when_sum_angle_vanishes():
    angles = AnalyzerAngles(0.3, np.pi - 0.3)
    assert analytic_intensity_form_coincidence(0.1, angles) == pytest.approx(
        analytic_coincidence(0.1, angles, HILBERT)
    )


def test_zero_d_gives_exact_zeros(small_stream):
    angles = AnalyzerAngles(0.5, 0.2)
    assert mc_single(small_stream, 0.0, 0.5).mean == 0.0
    assert mc_coincidence(small_stream, 0.0, angles).mean == 0.0


def test_zero_d_hilbert_coincidence_is_exact_zero(small_stream):
    estimate = mc_coincidence(small_stream, 0.0, AnalyzerAngles(0.5, 0.2), HILBERT)
    assert estimate.mean == 0.0
    assert estimate.std_error == 0.0
    assert mc_single(small_stream, 0.0, 0.5, HILBERT).mean == 0.0


def test_coincidence_needs_two_samples_per_batch():
    tiny = sample_vacuum(SamplerConfig(seed=1, n_samples=3, n_batches=3))
    with pytest.raises(ConfigError):
        mc_coincidence(tiny, 0.1, AnalyzerAngles(0.0, 0.0))


def test_clamp_with_non_binding_floor_equals_unclamped(small_stream):
    plain = mc_single(small_stream, 0.1, 0.4)
    clamped = clamped_mc_single(small_stream, 0.1, 0.4, zpf_floor=0.0)
    assert clamped.mean == pytest.approx(plain.mean, abs=1e-15)
    np.testing.assert_allclose(clamped.batch_values, plain.batch_values)


def test_clamp_logs_and_stays_finite(small_stream, caplog):
    with caplog.at_level(logging.WARNING, logger="wwspdc.detection_rates"):
        estimate = clamped_mc_single(small_stream, 0.1, 0.0, zpf_floor=0.5, party=Party.BOB)
    assert "exploratory" in caplog.text
    assert np.isfinite(estimate.mean)
    with pytest.raises(ConfigError):
        clamped_mc_single(small_stream, 0.1, 0.0, zpf_floor=np.inf)


def test_apply_efficiency():
    p_a, p_b, p_ab = apply_efficiency((0.5, 0.5), 0.4, EfficiencyPair(0.8, 0.5))
    assert (p_a, p_b, p_ab) == pytest.approx((0.4, 0.25, 0.16))


def test_efficiency_domain():
    with pytest.raises(DomainError):
        EfficiencyPair(eta_a=1.2)
    with pytest.raises(DomainError):
        EfficiencyPair(eta_b=-0.1)


def test_fit_cos2_amplitude_on_exact_curve():
    deltas = np.linspace(0, np.pi, 8)
    values = 0.005 * np.cos(deltas) ** 2
    c, c_err = fit_cos2_amplitude(deltas, values, np.full(8, 1e-5))
    assert c == pytest.approx(0.005, rel=1e-6)
    assert c_err > 0


def test_fit_cos2_amplitude_all_zero():
    assert fit_cos2_amplitude(np.linspace(0, np.pi, 4), np.zeros(4), np.zeros(4)) == (0.0, 0.0)


def test_fit_needs_two_points():
    with pytest.raises(ConfigError):
        fit_cos2_amplitude([0.0], [1.0])


@pytest.mark.slow
def test_cos2_law_full_ensemble(full_stream):
    D = 0.1
    deltas = np.linspace(0, np.pi, 8)
    estimates = [mc_coincidence(full_stream, D, AnalyzerAngles(d, 0.0)) for d in deltas]
    for d, e in zip(deltas, estimates):
        assert e.within(0.005 * np.cos(d) ** 2)
    c, c_err = fit_cos2_amplitude(deltas, estimates, [e.std_error for e in estimates])
    assert abs(c - 0.005) <= 5 * c_err


@pytest.mark.parametrize("D", [0.05, 0.2])
@pytest.mark.parametrize("convention", [STOCHASTIC, HILBERT])
@pytest.mark.parametrize("theta,phi", [(0.0, 0.0), (np.pi / 4, np.pi / 8), (1.0, 2.5)])
def test_mc_coincidence_other_couplings(small_stream, D, convention, theta, phi):
    angles = AnalyzerAngles(theta, phi)
    assert mc_coincidence(small_stream, D, angles, convention).within(analytic_coincidence(D, angles, convention))


def test_hilbert_estimate_is_twice_stochastic(small_stream):
    angles = AnalyzerAngles(0.0, 0.0)
    hilbert = mc_coincidence(small_stream, 0.2, angles, HILBERT)
    stochastic = mc_coincidence(small_stream, 0.2, angles, STOCHASTIC)
    combined = np.hypot(hilbert.std_error, 2 * stochastic.std_error)
    assert abs(hilbert.mean - 2 * stochastic.mean) <= 5 * combined


def test_huge_floor_clamps_single_to_zero(small_stream):
    estimate = clamped_mc_single(small_stream, 0.1, 0.0, zpf_floor=1e6)
    assert estimate.mean == 0.0


def test_intermediate_floors_shrink_single(small_stream):
    plain = mc_single(small_stream, 0.1, 0.0).mean
    clamped = [clamped_mc_single(small_stream, 0.1, 0.0, zpf_floor=f).mean for f in (0.5, 1.0, 2.0)]
    assert 0.0 < clamped[-1] < clamped[1] < clamped[0] < plain


def test_empty_stream_rejected():
    angles = AnalyzerAngles(0.0, 0.0)
    with pytest.raises(ConfigError):
        mc_single([], 0.1, 0.0)
    for convention in (STOCHASTIC, HILBERT):
        with pytest.raises(ConfigError):
            mc_coincidence([], 0.1, angles, convention)
    with pytest.raises(ConfigError):
        mc_coincidence_intensity_form([], 0.1, angles)
