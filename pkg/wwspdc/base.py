"""Shared data structures and the exception hierarchy for wwspdc"""

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Optional, Union

import numpy as np


# Custom exception hierarchy

class SimulationError(Exception):
    """Base exception for wwspdc errors"""


class ConfigError(SimulationError):
    """Invalid configuration (sampler, run config, integrator, Fock space)"""


class DomainError(SimulationError):
    """Parameter outside the range where the model is valid"""


class PreconditionError(SimulationError):
    """Operation called outside its precondition"""


class OracleCheckError(SimulationError):
    """A cross-check between independent evaluation routes failed"""


class Convention(StrEnum):
    """Normalization of detection rates.

    hilbert_normalized values are exactly twice the stochastic_model values.
    """
    HILBERT = "hilbert_normalized"
    STOCHASTIC = "stochastic_model"

    @property
    def factor(self) -> float:
        """Scale applied to the stochastic-model rate"""
        return 2.0 if self is Convention.HILBERT else 1.0


class Party(StrEnum):
    ALICE = "alice"
    BOB = "bob"


@dataclass(frozen=True)
class EfficiencyPair:
    """Detection efficiencies of Alice and Bob"""
    eta_a: float = 1.0
    eta_b: float = 1.0

    def __post_init__(self):
        for name in ("eta_a", "eta_b"):
            value = getattr(self, name)
            if not np.isfinite(value) or not (0.0 <= value <= 1.0):
                raise DomainError(f"{name} must lie in [0, 1], got {value}")


Number = Union[float, complex]


@dataclass(frozen=True)
class RateEstimate:
    """Monte Carlo mean with a batched standard error.

    The per-batch values are kept so that estimates computed from the same
    vacuum ensemble can be combined with their correlations intact: the sum of
    two estimates is the estimate of the per-batch sums.
    """
    mean: Number
    std_error: float
    n_samples: int
    n_batches: int
    batch_values: np.ndarray = field(repr=False, compare=False)
    batch_sizes: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @classmethod
    def from_batches(cls, batch_values, n_samples: int, batch_sizes=None) -> "RateEstimate":
        """Mean of batch values weighted by batch size (equal weights if sizes are omitted)"""
        values = np.asarray(batch_values)
        n_batches = values.shape[0]
        if n_batches < 2:
            raise ConfigError(f"Need at least 2 batches for an error estimate, got {n_batches}")
        if batch_sizes is None:
            mean = values.mean()
            # np.std of a complex array uses |x - mean|
            std_error = float(np.std(values, ddof=1) / np.sqrt(n_batches))
        else:
            batch_sizes = np.asarray(batch_sizes)
            if batch_sizes.shape != (n_batches,) or np.any(batch_sizes <= 0):
                raise ConfigError("batch_sizes must hold one positive size per batch")
            weights = batch_sizes / batch_sizes.sum()
            mean = np.average(values, weights=batch_sizes)
            # Equals std(ddof=1)/sqrt(n) when all sizes match
            deviations = np.abs(values - mean) ** 2
            std_error = float(np.sqrt(np.sum(weights**2 * deviations) * n_batches / (n_batches - 1)))
        if not np.isfinite(mean):
            raise SimulationError("Non-finite Monte Carlo estimate")
        mean = complex(mean) if np.iscomplexobj(values) else float(mean)
        return cls(mean, std_error, int(n_samples), n_batches, values, batch_sizes)

    @classmethod
    def exact(cls, value: Number, n_samples: int, n_batches: int) -> "RateEstimate":
        """Estimate whose every batch equals value (zero error)"""
        return cls.from_batches(np.full(n_batches, value), n_samples)

    def within(self, expected: Number, n_se: float = 5.0, atol: float = 1e-15) -> bool:
        """True if expected lies within n_se standard errors of the mean"""
        return abs(self.mean - expected) <= n_se * self.std_error + atol

    def _combine(self, other, op) -> "RateEstimate":
        if isinstance(other, RateEstimate):
            if other.n_batches != self.n_batches:
                raise ConfigError(
                    f"Cannot combine estimates with {self.n_batches} and {other.n_batches} batches"
                )
            values = op(self.batch_values, other.batch_values)
            sizes = self.batch_sizes if self.batch_sizes is not None else other.batch_sizes
        else:
            values = op(self.batch_values, other)
            sizes = self.batch_sizes
        return RateEstimate.from_batches(values, self.n_samples, sizes)

    def __add__(self, other):
        return self._combine(other, np.add)

    def __radd__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __rsub__(self, other):
        return self._combine(other, lambda a, b: b - a)

    def __mul__(self, scale):
        if isinstance(scale, RateEstimate):
            raise TypeError("Product of two estimates is not a batched linear combination")
        return RateEstimate.from_batches(self.batch_values * scale, self.n_samples, self.batch_sizes)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0


def value_of(x) -> Number:
    """Point value of a float or a RateEstimate"""
    return x.mean if isinstance(x, RateEstimate) else x


def error_of(x) -> float:
    """Standard error of a RateEstimate, 0 for exact values"""
    return x.std_error if isinstance(x, RateEstimate) else 0.0
