import numpy as np
import pytest

from wwspdc.base import Party
from wwspdc.gaussian_modes import VacuumSample, batched_estimate
from wwspdc.polarization_fields import (
    AnalyzerAngles,
    alice_fields,
    analytic_field_correlators,
    analytic_intensity_product,
    bob_fields,
    intensities,
    isserlis_intensity_product,
    partial_fields,
    party_intensities,
    reduce_angle,
    total_field_form,
    vacuum_intensity_product,
)

ANGLE_PAIRS = [(0.0, 0.0), (np.pi / 4, np.pi / 8), (np.pi / 3, 0.2), (1.0, 2.5)]


def test_reduce_angle():
    assert reduce_angle(np.pi) == 0.0
    assert reduce_angle(-np.pi / 4) == pytest.approx(3 * np.pi / 4)
    assert reduce_angle(-1e-18) == 0.0
    assert 0.0 <= reduce_angle(7.5) < np.pi


def test_angles_reduced_and_from_degrees():
    angles = AnalyzerAngles(np.pi + 0.1, -0.1)
    assert angles.theta == pytest.approx(0.1)
    assert angles.phi == pytest.approx(np.pi - 0.1)
    deg = AnalyzerAngles.from_degrees(45.0, 22.5)
    assert deg.theta == pytest.approx(np.pi / 4)
    assert deg.angle_of(Party.BOB) == pytest.approx(np.pi / 8)
    with pytest.raises(ValueError):
        AnalyzerAngles(np.inf, 0.0)


def test_fields_at_zero_angle():
    sample = VacuumSample(a_s=0.3 + 0.1j, a_i=-0.2 + 0.5j)
    D = 0.1
    e_a0, e_a1 = alice_fields(sample, D, 0.0)
    e_b0, e_b1 = bob_fields(sample, D, 0.0)
    assert e_a0 == pytest.approx(sample.a_s)
    assert e_a1 == pytest.approx(D * np.conj(sample.a_i))
    assert e_b0 == pytest.approx(sample.a_i)
    assert e_b1 == pytest.approx(D * np.conj(sample.a_s))


def test_intensity_split_adds_up():
    rng = np.random.default_rng(0)
    sample = VacuumSample(
        a_s=rng.normal(size=50) + 1j * rng.normal(size=50),
        a_i=rng.normal(size=50) + 1j * rng.normal(size=50),
    )
    f = partial_fields(sample, 0.15 - 0.05j, AnalyzerAngles(0.4, 1.3))
    i = intensities(f)
    np.testing.assert_allclose(i.i_a0 + i.i_a1, i.i_a)
    np.testing.assert_allclose(i.i_b0 + i.i_b1, i.i_b)
    np.testing.assert_allclose(i.i_a, np.abs(f.e_a) ** 2)
    assert i.of(Party.BOB)[0] is i.i_b


def test_party_intensities_signal_part_can_be_negative():
    i_0, i_1, i = party_intensities(np.array([1.0 + 0j]), np.array([-0.1 + 0j]))
    assert i_1[0] < 0
    assert i[0] == pytest.approx(0.81)


def test_total_field_form_matches_sampled_fields():
    sample = VacuumSample(a_s=0.2 - 0.7j, a_i=0.4 + 0.1j)
    D, theta = 0.1 + 0.2j, 0.9
    form = total_field_form(D, theta, Party.ALICE)
    value = 0j
    for coeff, op in form:
        amplitude = sample.amplitude(op.mode)
        value += coeff * (np.conj(amplitude) if op.kind == "create" else amplitude)
    e_a0, e_a1 = alice_fields(sample, D, theta)
    assert value == pytest.approx(e_a0 + e_a1)


def test_vacuum_intensity_product_closed_form():
    for theta, phi in ANGLE_PAIRS:
        angles = AnalyzerAngles(theta, phi)
        assert analytic_intensity_product(0.0, angles) == pytest.approx(vacuum_intensity_product(angles))


def test_analytic_correlators_consistent():
    angles = AnalyzerAngles(np.pi / 4, np.pi / 8)
    c = analytic_field_correlators(0.1, angles)
    assert c["ab"] == pytest.approx(c["a0_b0"] + c["a0_b1"] + c["a1_b0"])
    assert c["ab*"] == pytest.approx(c["a0_b0*"] + c["a1_b1*"] + c["a0_b1*"])


def test_isserlis_helper():
    assert isserlis_intensity_product(0.5, 0.5, 0.0, 0.0) == pytest.approx(0.25)
    assert isserlis_intensity_product(0.5, 0.5, 0.5, 0.0) == pytest.approx(0.5)


@pytest.mark.parametrize("theta,phi", ANGLE_PAIRS)
def test_field_correlators_by_sampling(small_stream, theta, phi):
    D = 0.1 + 0.05j
    angles = AnalyzerAngles(theta, phi)
    expected = analytic_field_correlators(D, angles)

    def ab(b):
        f = partial_fields(b, D, angles)
        return f.e_a * f.e_b

    def ab_conj(b):
        f = partial_fields(b, D, angles)
        return f.e_a * np.conj(f.e_b)

    assert batched_estimate(small_stream, ab).within(expected["ab"])
    assert batched_estimate(small_stream, ab_conj).within(expected["ab*"])


@pytest.mark.parametrize("theta,phi", ANGLE_PAIRS)
def test_vacuum_intensity_product_by_sampling(small_stream, theta, phi):
    angles = AnalyzerAngles(theta, phi)

    def product(b):
        f = partial_fields(b, 0.1, angles)
        return np.abs(f.e_a0) ** 2 * np.abs(f.e_b0) ** 2

    assert batched_estimate(small_stream, product).within(vacuum_intensity_product(angles))


@pytest.mark.slow
@pytest.mark.parametrize("theta,phi", ANGLE_PAIRS)
def test_isserlis_factorization(full_stream, theta, phi):
    D = 0.1
    angles = AnalyzerAngles(theta, phi)

    def product(b):
        i = intensities(partial_fields(b, D, angles))
        return i.i_a * i.i_b

    assert batched_estimate(full_stream, product).within(analytic_intensity_product(D, angles))
