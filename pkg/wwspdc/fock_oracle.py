"""
Truncated two-mode Fock space used as an independent Hilbert-space oracle.

Operators act on |n_s> (x) |n_i> with 0 <= n <= cutoff per mode. The state is
always the two-mode vacuum; D enters only through the field operators.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .base import ConfigError, Party, PreconditionError
from .polarization_fields import AnalyzerAngles, alice_field_forms, bob_field_forms
from .ww_algebra import Kind, Ladder, LinearForm, OperatorWord


def ladder_matrix(cutoff: int) -> np.ndarray:
    """Single-mode annihilation operator with a|n> = sqrt(n) |n-1>"""
    return np.diagflat(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), 1).astype(complex)


@dataclass(frozen=True)
class TruncatedSpace:
    cutoff: int = 3

    def __post_init__(self):
        if not isinstance(self.cutoff, (int, np.integer)) or self.cutoff < 2:
            raise ConfigError(f"Fock cutoff must be an integer >= 2, got {self.cutoff!r}")

    @property
    def mode_dimension(self) -> int:
        return self.cutoff + 1

    @property
    def dimension(self) -> int:
        return self.mode_dimension ** 2

    @cached_property
    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dimension, dtype=complex)
        v[0] = 1.0
        return v

    @cached_property
    def _annihilators(self) -> dict[str, np.ndarray]:
        a = ladder_matrix(self.cutoff)
        eye = np.eye(self.mode_dimension)
        return {"s": np.kron(a, eye), "i": np.kron(eye, a)}

    def operator(self, op: Ladder) -> np.ndarray:
        a = self._annihilators[op.mode]
        return a.conj().T if op.kind is Kind.CREATE else a

    def form_matrix(self, form: LinearForm) -> np.ndarray:
        m = np.zeros((self.dimension, self.dimension), dtype=complex)
        for coeff, op in form:
            m = m + coeff * self.operator(op)
        return m


@dataclass(frozen=True)
class FieldOperator:
    """Positive-frequency field operator E^+; E^- is its conjugate transpose"""
    matrix: np.ndarray = field(repr=False)

    @property
    def dagger(self) -> np.ndarray:
        return self.matrix.conj().T

    def __add__(self, other: "FieldOperator") -> "FieldOperator":
        return FieldOperator(self.matrix + other.matrix)


@dataclass(frozen=True)
class FieldOperators:
    e_a0: FieldOperator
    e_a1: FieldOperator
    e_b0: FieldOperator
    e_b1: FieldOperator

    @property
    def e_a(self) -> FieldOperator:
        return self.e_a0 + self.e_a1

    @property
    def e_b(self) -> FieldOperator:
        return self.e_b0 + self.e_b1


def build_field_operators(space: TruncatedSpace, D: complex, angles: AnalyzerAngles) -> FieldOperators:
    a0, a1 = alice_field_forms(D, angles.theta)
    b0, b1 = bob_field_forms(D, angles.phi)
    return FieldOperators(
        e_a0=FieldOperator(space.form_matrix(a0)),
        e_a1=FieldOperator(space.form_matrix(a1)),
        e_b0=FieldOperator(space.form_matrix(b0)),
        e_b1=FieldOperator(space.form_matrix(b1)),
    )


def single_rate(space: TruncatedSpace, D: complex, angle: float, party: Party = Party.ALICE) -> float:
    """<0|E^- E^+|0> at one analyzer"""
    if Party(party) is Party.ALICE:
        vacuum, signal = alice_field_forms(D, angle)
    else:
        vacuum, signal = bob_field_forms(D, angle)
    e_plus = space.form_matrix(vacuum + signal)
    psi = e_plus @ space.vacuum
    return float(np.vdot(psi, psi).real)


def coincidence_rate(space: TruncatedSpace, D: complex, angles: AnalyzerAngles) -> float:
    """Symmetrized <0|E_A^- E_B^- E_B^+ E_A^+|0>"""
    ops = build_field_operators(space, D, angles)
    e_a, e_b = ops.e_a.matrix, ops.e_b.matrix
    ba = e_b @ (e_a @ space.vacuum)
    ab = e_a @ (e_b @ space.vacuum)
    return float(0.5 * np.vdot(ba, ba).real + 0.5 * np.vdot(ab, ab).real)


def expectation_on_vacuum(space: TruncatedSpace, word: OperatorWord) -> complex:
    """<0|word|0> by matrix products, applied right to left"""
    if len(word) > 2 * space.cutoff:
        raise PreconditionError(
            f"Word of length {len(word)} needs cutoff >= {(len(word) + 1) // 2}, got {space.cutoff}"
        )
    psi = space.vacuum
    for op in reversed(word.factors):
        psi = space.operator(op) @ psi
    return complex(word.coefficient * np.vdot(space.vacuum, psi))


__all__ = [
    "FieldOperator",
    "FieldOperators",
    "TruncatedSpace",
    "build_field_operators",
    "coincidence_rate",
    "expectation_on_vacuum",
    "ladder_matrix",
    "single_rate",
]
