"""
Analyzer-output fields and intensities.

Alice's analyzer at angle theta and Bob's at angle phi each pass a vacuum part
(e_a0, e_b0) and a D-dependent signal part (e_a1, e_b1):

    e_a0 = a_s cos(theta) + i a_i sin(theta)
    e_b0 = -i a_s sin(phi) + a_i cos(phi)
    e_a1 = D (a_i* cos(theta) + i a_s* sin(theta))
    e_b1 = D (-i a_i* sin(phi) + a_s* cos(phi))

The same linear combinations, with amplitudes replaced by ladder operators,
give the Hilbert-space field operators used by the Fock-space oracle and the
Weyl-symbol route.
"""
from dataclasses import dataclass

import numpy as np

from .base import Party
from .gaussian_modes import VacuumSample
from .ww_algebra import LinearForm, annihilate, create


def reduce_angle(angle: float) -> float:
    """Polarizer angle reduced to [0, pi)"""
    reduced = float(np.mod(angle, np.pi))
    # np.mod can return pi itself for tiny negative inputs
    return 0.0 if reduced >= np.pi else reduced


@dataclass(frozen=True)
class AnalyzerAngles:
    """Alice's and Bob's analyzer angles in radians, reduced mod pi"""
    theta: float
    phi: float

    def __post_init__(self):
        if not (np.isfinite(self.theta) and np.isfinite(self.phi)):
            raise ValueError(f"Analyzer angles must be finite, got ({self.theta}, {self.phi})")
        object.__setattr__(self, "theta", reduce_angle(self.theta))
        object.__setattr__(self, "phi", reduce_angle(self.phi))

    @classmethod
    def from_degrees(cls, theta: float, phi: float) -> "AnalyzerAngles":
        return cls(np.deg2rad(theta), np.deg2rad(phi))

    def angle_of(self, party: Party) -> float:
        return self.theta if Party(party) is Party.ALICE else self.phi


@dataclass(frozen=True)
class FieldSet:
    e_a0: complex
    e_a1: complex
    e_b0: complex
    e_b1: complex

    @property
    def e_a(self):
        return self.e_a0 + self.e_a1

    @property
    def e_b(self):
        return self.e_b0 + self.e_b1


@dataclass(frozen=True)
class IntensitySet:
    """Per-sample intensities; i_a1 and i_b1 are cross terms and may be negative"""
    i_a0: float
    i_a1: float
    i_b0: float
    i_b1: float
    i_a: float
    i_b: float

    def of(self, party: Party):
        """(total, vacuum part, signal part) for one party"""
        if Party(party) is Party.ALICE:
            return self.i_a, self.i_a0, self.i_a1
        return self.i_b, self.i_b0, self.i_b1


def alice_fields(sample: VacuumSample, D: complex, theta: float):
    """(e_a0, e_a1) at Alice's analyzer"""
    c, s = np.cos(theta), np.sin(theta)
    a_s, a_i = sample.a_s, sample.a_i
    e_a0 = a_s * c + 1j * a_i * s
    e_a1 = D * (np.conj(a_i) * c + 1j * np.conj(a_s) * s)
    return e_a0, e_a1


def bob_fields(sample: VacuumSample, D: complex, phi: float):
    """(e_b0, e_b1) at Bob's analyzer"""
    c, s = np.cos(phi), np.sin(phi)
    a_s, a_i = sample.a_s, sample.a_i
    e_b0 = -1j * a_s * s + a_i * c
    e_b1 = D * (-1j * np.conj(a_i) * s + np.conj(a_s) * c)
    return e_b0, e_b1


def partial_fields(sample: VacuumSample, D: complex, angles: AnalyzerAngles) -> FieldSet:
    e_a0, e_a1 = alice_fields(sample, D, angles.theta)
    e_b0, e_b1 = bob_fields(sample, D, angles.phi)
    return FieldSet(e_a0=e_a0, e_a1=e_a1, e_b0=e_b0, e_b1=e_b1)


def party_intensities(vacuum_field, signal_field):
    """(i_0, i_1, i) for one analyzer output"""
    i_0 = np.abs(vacuum_field) ** 2
    i_1 = 2.0 * np.real(signal_field * np.conj(vacuum_field)) + np.abs(signal_field) ** 2
    i = np.abs(vacuum_field + signal_field) ** 2
    return i_0, i_1, i


def intensities(f: FieldSet) -> IntensitySet:
    i_a0, i_a1, i_a = party_intensities(f.e_a0, f.e_a1)
    i_b0, i_b1, i_b = party_intensities(f.e_b0, f.e_b1)
    return IntensitySet(i_a0=i_a0, i_a1=i_a1, i_b0=i_b0, i_b1=i_b1, i_a=i_a, i_b=i_b)


# Operator forms of the same fields

def alice_field_forms(D: complex, theta: float) -> tuple[LinearForm, LinearForm]:
    c, s = np.cos(theta), np.sin(theta)
    e_a0 = ((c, annihilate("s")), (1j * s, annihilate("i")))
    e_a1 = ((D * c, create("i")), (1j * D * s, create("s")))
    return e_a0, e_a1


def bob_field_forms(D: complex, phi: float) -> tuple[LinearForm, LinearForm]:
    c, s = np.cos(phi), np.sin(phi)
    e_b0 = ((-1j * s, annihilate("s")), (c, annihilate("i")))
    e_b1 = ((-1j * D * s, create("i")), (D * c, create("s")))
    return e_b0, e_b1


def total_field_form(D: complex, angle: float, party: Party) -> LinearForm:
    """E^+ = E_0^+ + E_1^+ for one analyzer as a single linear form"""
    if Party(party) is Party.ALICE:
        vacuum, signal = alice_field_forms(D, angle)
    else:
        vacuum, signal = bob_field_forms(D, angle)
    return vacuum + signal


# Closed-form second moments over the vacuum ensemble

def analytic_field_correlators(D: complex, angles: AnalyzerAngles) -> dict[str, complex]:
    """Vacuum-ensemble pair correlators of the sampled fields"""
    diff = angles.theta - angles.phi
    total = angles.theta + angles.phi
    d2 = abs(D) ** 2
    return {
        "a0_b0": 0j,
        "a0_b1": D / 2 * np.cos(diff),
        "a1_b0": D / 2 * np.cos(diff),
        "a0_b0*": 0.5j * np.sin(total),
        "a1_b1*": 0.5j * d2 * np.sin(total),
        "a0_b1*": 0j,
        "ab": D * np.cos(diff),
        "ab*": 0.5j * (1 + d2) * np.sin(total),
        "aa*": (1 + d2) / 2,
        "bb*": (1 + d2) / 2,
    }


def isserlis_intensity_product(mean_x2, mean_y2, corr_xy, corr_xy_conj) -> float:
    """<|X|^2 |Y|^2> for zero-mean jointly Gaussian complex X, Y"""
    return float(np.real(mean_x2 * mean_y2) + abs(corr_xy) ** 2 + abs(corr_xy_conj) ** 2)


def analytic_intensity_product(D: complex, angles: AnalyzerAngles) -> float:
    """<i_a i_b> from the pair correlators"""
    c = analytic_field_correlators(D, angles)
    return isserlis_intensity_product(c["aa*"], c["bb*"], c["ab"], c["ab*"])


def vacuum_intensity_product(angles: AnalyzerAngles) -> float:
    """<i_a0 i_b0> = 1/4 + sin^2(theta + phi)/4"""
    return 0.25 + 0.25 * np.sin(angles.theta + angles.phi) ** 2


__all__ = [
    "AnalyzerAngles",
    "FieldSet",
    "IntensitySet",
    "alice_field_forms",
    "alice_fields",
    "analytic_field_correlators",
    "analytic_intensity_product",
    "bob_field_forms",
    "bob_fields",
    "intensities",
    "isserlis_intensity_product",
    "partial_fields",
    "party_intensities",
    "reduce_angle",
    "total_field_form",
    "vacuum_intensity_product",
]
