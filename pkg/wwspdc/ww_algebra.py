"""
Weyl symbols of creation/annihilation operator words.

A word is translated into a polynomial in the c-number amplitudes
a_s, a_s*, a_i, a_i* by appending factors one at a time:

    append annihilator of mode j:  P -> P a_j  - 1/2 dP/da_j*
    append creator of mode j:      P -> P a_j* + 1/2 dP/da_j

Vacuum expectations then follow from the Gaussian moments of the vacuum
Wigner function, <a^n a*^m> = delta_nm n!/2^n, independently per mode.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import sympy as sp

from .gaussian_modes import VacuumSample, vacuum_moment

ZERO_TOL = 1e-12

MODES = ("s", "i")

# Exponent key: (n_s, m_s, n_i, m_i) for a_s^n_s a_s*^m_s a_i^n_i a_i*^m_i
Exponents = tuple[int, int, int, int]


class Kind(StrEnum):
    CREATE = "create"
    ANNIHILATE = "annihilate"


@dataclass(frozen=True)
class Ladder:
    """A single creation or annihilation operator on mode 's' or 'i'"""
    mode: str
    kind: Kind

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"Unknown mode '{self.mode}', expected one of {MODES}")
        object.__setattr__(self, "kind", Kind(self.kind))

    def dagger(self) -> "Ladder":
        other = Kind.ANNIHILATE if self.kind is Kind.CREATE else Kind.CREATE
        return Ladder(self.mode, other)

    def __str__(self) -> str:
        return f"a_{self.mode}" + ("+" if self.kind is Kind.CREATE else "")


def create(mode: str) -> Ladder:
    return Ladder(mode, Kind.CREATE)


def annihilate(mode: str) -> Ladder:
    return Ladder(mode, Kind.ANNIHILATE)


@dataclass(frozen=True)
class OperatorWord:
    """Ordered product of ladder operators times a coefficient"""
    factors: tuple[Ladder, ...] = ()
    coefficient: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def __len__(self) -> int:
        return len(self.factors)

    def __mul__(self, other):
        if isinstance(other, OperatorWord):
            return OperatorWord(self.factors + other.factors, self.coefficient * other.coefficient)
        return OperatorWord(self.factors, self.coefficient * other)

    __rmul__ = __mul__

    def dagger(self) -> "OperatorWord":
        """Reversed word of adjoint factors with conjugated coefficient"""
        return OperatorWord(
            tuple(f.dagger() for f in reversed(self.factors)),
            complex(self.coefficient).conjugate(),
        )

    def __str__(self) -> str:
        body = " ".join(str(f) for f in self.factors) or "1"
        return f"({self.coefficient:g}) {body}"


def word(*labels: str, coefficient: complex = 1.0) -> OperatorWord:
    """Build a word from labels like 'a_s', 'a_s+', 'a_i+'"""
    factors = []
    for label in labels:
        name = label.rstrip("+")
        if not name.startswith("a_"):
            raise ValueError(f"Bad operator label '{label}'")
        mode = name[2:]
        factors.append(Ladder(mode, Kind.CREATE if label.endswith("+") else Kind.ANNIHILATE))
    return OperatorWord(tuple(factors), coefficient)


# A linear form sum_k c_k L_k in ladder operators, e.g. a field operator
LinearForm = tuple[tuple[complex, Ladder], ...]


def dagger_form(form: LinearForm) -> LinearForm:
    return tuple((complex(c).conjugate(), op.dagger()) for c, op in form)


def expand_product(forms: Sequence[LinearForm]) -> list[OperatorWord]:
    """Distribute an ordered product of linear forms into operator words"""
    words = []
    for combo in itertools.product(*forms):
        coeff = complex(1.0)
        factors = []
        for c, op in combo:
            coeff *= c
            factors.append(op)
        if abs(coeff) > 0.0:
            words.append(OperatorWord(tuple(factors), coeff))
    return words


# Generators in exponent-key order; a and a* are independent for Wirtinger calculus
AMPLITUDES = tuple(sp.Symbol(name) for name in ("a_s", "a_s*", "a_i", "a_i*"))
_AMPLITUDE_POLYS = tuple(sp.Poly(a, *AMPLITUDES, domain=sp.CC) for a in AMPLITUDES)


def _slot(mode: str, conjugate: bool) -> int:
    return MODES.index(mode) * 2 + (1 if conjugate else 0)


def _as_poly(terms: Mapping[Exponents, complex]) -> sp.Poly:
    kept = {
        tuple(int(e) for e in k): complex(v)
        for k, v in terms.items()
        if abs(v) > ZERO_TOL
    }
    return sp.Poly.from_dict(kept, *AMPLITUDES, domain=sp.CC)


_HALF = _as_poly({(0, 0, 0, 0): 0.5})


class WwPolynomial:
    """Polynomial in a_s, a_s*, a_i, a_i* with complex coefficients.

    Backed by a sympy Poly over the complex floating domain; coefficients
    below ZERO_TOL are dropped on construction.
    """

    __slots__ = ("poly",)

    def __init__(self, terms: Mapping[Exponents, complex] | sp.Poly | None = None):
        if isinstance(terms, sp.Poly):
            terms = {k: complex(v) for k, v in terms.as_dict(native=True).items()}
        self.poly = _as_poly(terms or {})

    @property
    def terms(self) -> dict[Exponents, complex]:
        """Exponent key -> coefficient"""
        return {k: complex(v) for k, v in self.poly.as_dict(native=True).items()}

    @classmethod
    def constant(cls, value: complex) -> "WwPolynomial":
        return cls({(0, 0, 0, 0): value})

    @classmethod
    def monomial(cls, n_s=0, m_s=0, n_i=0, m_i=0, coefficient: complex = 1.0) -> "WwPolynomial":
        return cls({(n_s, m_s, n_i, m_i): coefficient})

    @staticmethod
    def _lift(other) -> "WwPolynomial":
        return other if isinstance(other, WwPolynomial) else WwPolynomial.constant(other)

    def __add__(self, other) -> "WwPolynomial":
        return WwPolynomial(self.poly + self._lift(other).poly)

    __radd__ = __add__

    def __neg__(self) -> "WwPolynomial":
        return WwPolynomial(-self.poly)

    def __sub__(self, other) -> "WwPolynomial":
        return WwPolynomial(self.poly - self._lift(other).poly)

    def __mul__(self, other) -> "WwPolynomial":
        return WwPolynomial(self.poly * self._lift(other).poly)

    __rmul__ = __mul__

    def times_amplitude(self, mode: str, conjugate: bool) -> "WwPolynomial":
        return WwPolynomial(self.poly * _AMPLITUDE_POLYS[_slot(mode, conjugate)])

    def derivative(self, mode: str, conjugate: bool) -> "WwPolynomial":
        """Formal Wirtinger derivative d/da_mode (or d/da_mode* if conjugate)"""
        return WwPolynomial(self.poly.diff(AMPLITUDES[_slot(mode, conjugate)]))

    def conjugate(self) -> "WwPolynomial":
        return WwPolynomial({
            (m_s, n_s, m_i, n_i): v.conjugate()
            for (n_s, m_s, n_i, m_i), v in self.terms.items()
        })

    def is_close(self, other: "WwPolynomial", tol: float = ZERO_TOL) -> bool:
        diff = self - other
        return all(abs(v) <= tol for v in diff.terms.values())

    def evaluate(self, sample: VacuumSample):
        """Value of the polynomial at sampled amplitudes (scalar or batch)"""
        a_s, a_i = np.asarray(sample.a_s), np.asarray(sample.a_i)
        total = np.zeros(np.shape(a_s), dtype=complex)
        for (n_s, m_s, n_i, m_i), v in self.terms.items():
            total = total + v * a_s**n_s * np.conj(a_s) ** m_s * a_i**n_i * np.conj(a_i) ** m_i
        return total

    def render(self) -> str:
        """Plain-text rendering with terms in lexicographic exponent order"""
        terms = self.terms
        if not terms:
            return "0"
        parts = []
        for k in sorted(terms):
            v = terms[k]
            coeff = f"({v.real:.12g}{v.imag:+.12g}j)"
            factors = [f"{name}^{e}" for name, e in zip(AMPLITUDES, k) if e]
            parts.append(" ".join([coeff] + factors))
        return "\n".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"WwPolynomial({self.poly.as_expr()})"



def weyl_symbol(w: OperatorWord) -> WwPolynomial:
    """Weyl symbol of an operator word via right-append recurrences"""
    poly = _as_poly({(0, 0, 0, 0): w.coefficient})
    for op in w.factors:
        creates = op.kind is Kind.CREATE
        shifted = poly * _AMPLITUDE_POLYS[_slot(op.mode, creates)]
        correction = _HALF * poly.diff(AMPLITUDES[_slot(op.mode, not creates)])
        poly = shifted + correction if creates else shifted - correction
    return WwPolynomial(poly)


def weyl_symbol_of_sum(words: Iterable[OperatorWord]) -> WwPolynomial:
    """Weyl symbol of a linear combination of words"""
    total = WwPolynomial()
    for w in words:
        total = total + weyl_symbol(w)
    return total


def vacuum_expectation(p: WwPolynomial) -> complex:
    """Average of a symbol over the vacuum Wigner distribution"""
    total = 0j
    for (n_s, m_s, n_i, m_i), v in p.terms.items():
        total += v * vacuum_moment(n_s, m_s) * vacuum_moment(n_i, m_i)
    return total


def operator_vacuum_expectation(w: OperatorWord) -> complex:
    """<0|word|0> evaluated through the Weyl symbol"""
    return vacuum_expectation(weyl_symbol(w))


def all_words(max_length: int, modes: Sequence[str] = MODES) -> Iterable[OperatorWord]:
    """Every word of length 0..max_length over the given modes"""
    alphabet = [Ladder(m, k) for m in modes for k in (Kind.CREATE, Kind.ANNIHILATE)]
    for length in range(max_length + 1):
        for combo in itertools.product(alphabet, repeat=length):
            yield OperatorWord(combo)


def _single_mode(n: int, m: int, coefficient: complex = 1.0) -> WwPolynomial:
    return WwPolynomial.monomial(n_s=n, m_s=m, coefficient=coefficient)


# Ordering correspondences for one mode (written for mode 's')
ORDERING_TABLE: dict[str, tuple[OperatorWord, WwPolynomial]] = {
    "a+ a": (word("a_s+", "a_s"), _single_mode(1, 1) - 0.5),
    "a a+": (word("a_s", "a_s+"), _single_mode(1, 1) + 0.5),
    "a a": (word("a_s", "a_s"), _single_mode(2, 0)),
    "a+ a+": (word("a_s+", "a_s+"), _single_mode(0, 2)),
    "a+ a a+ a": (word("a_s+", "a_s", "a_s+", "a_s"), _single_mode(2, 2) - _single_mode(1, 1)),
    "a a+ a a+": (word("a_s", "a_s+", "a_s", "a_s+"), _single_mode(2, 2) + _single_mode(1, 1)),
    "a+ a+ a a": (
        word("a_s+", "a_s+", "a_s", "a_s"),
        _single_mode(2, 2) - 2.0 * _single_mode(1, 1) + 0.5,
    ),
    "a a a+ a+": (
        word("a_s", "a_s", "a_s+", "a_s+"),
        _single_mode(2, 2) + 2.0 * _single_mode(1, 1) + 0.5,
    ),
}
