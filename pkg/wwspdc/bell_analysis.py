"""
Clauser-Horne inequality evaluation.

For settings (theta1, phi1, theta2, phi2) local models satisfy

    P_A(theta1) + P_B(phi1) >= P(theta1, phi1) + P(theta1, phi2)
                               + P(theta2, phi1) - P(theta2, phi2)

Rates come from any RateSource: the ideal prediction K/2, (K/2)cos^2, the
closed-form detection rules, Monte Carlo estimates or the Fock-space oracle.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Union

import numpy as np

from .base import (
    Convention,
    EfficiencyPair,
    Party,
    RateEstimate,
    error_of,
    value_of,
)
from .detection_rates import (
    analytic_coincidence,
    analytic_single,
    check_d,
    mc_coincidence,
    mc_single,
)
from .fock_oracle import TruncatedSpace, coincidence_rate, single_rate
from .gaussian_modes import VacuumStream
from .polarization_fields import AnalyzerAngles, reduce_angle

logger = logging.getLogger(__name__)

# Symmetric efficiency below which maximally entangled rates cannot violate CH
EFFICIENCY_THRESHOLD = 2.0 * (np.sqrt(2.0) - 1.0)

# Quoted threshold for non-maximally entangled states (not modelled)
EBERHARD_THRESHOLD = 2.0 / 3.0

# Exact-rate margins within this fraction of max(|lhs|, |rhs|) count as zero
MARGIN_TOL = 1e-12

# Monte Carlo margins must be this many standard errors below zero
MC_SIGNIFICANCE = 3.0

Rate = Union[float, RateEstimate]


@dataclass(frozen=True)
class ChSetting:
    theta1: float
    theta2: float
    phi1: float
    phi2: float

    def __post_init__(self):
        for name in ("theta1", "theta2", "phi1", "phi2"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, reduce_angle(value))

    def rotated(self, offset: float) -> "ChSetting":
        return ChSetting(
            theta1=self.theta1 + offset,
            theta2=self.theta2 + offset,
            phi1=self.phi1 + offset,
            phi2=self.phi2 + offset,
        )

    def as_tuple(self) -> tuple[float, float, float, float]:
        """(theta1, phi1, theta2, phi2)"""
        return self.theta1, self.phi1, self.theta2, self.phi2


def standard_setting() -> ChSetting:
    """(theta1, phi1, theta2, phi2) = (pi/4, pi/8, 0, 3pi/8)"""
    return ChSetting(theta1=np.pi / 4, phi1=np.pi / 8, theta2=0.0, phi2=3 * np.pi / 8)


@dataclass(frozen=True)
class ChResult:
    lhs: float
    rhs: float
    margin: float
    violated: bool
    lhs_err: float = 0.0
    rhs_err: float = 0.0
    margin_err: float = 0.0
    source: str = ""

    @property
    def ratio(self) -> float:
        """rhs / lhs"""
        return self.rhs / self.lhs if self.lhs != 0 else float("nan")


class RateSource(ABC):
    """Provider of single and coincidence rates at arbitrary analyzer angles"""

    @property
    @abstractmethod
    def name(self) -> str:
        ...

    @abstractmethod
    def single(self, party: Party, angle: float) -> Rate:
        ...

    @abstractmethod
    def coincidence(self, theta: float, phi: float) -> Rate:
        ...


class PredictedRates(RateSource):
    """Ideal entangled-pair rates: singles K/2, coincidences (K/2) cos^2(theta - phi).

    Angle arguments may be numpy arrays.
    """

    def __init__(self, K: float = 1.0):
        if not K > 0:
            raise ValueError(f"K must be positive, got {K}")
        self.K = float(K)

    @property
    def name(self) -> str:
        return "predicted"

    def single(self, party: Party, angle: float) -> float:
        return self.K / 2.0

    def coincidence(self, theta, phi):
        return self.K / 2.0 * np.cos(np.asarray(theta) - np.asarray(phi)) ** 2


class AnalyticRates(RateSource):
    def __init__(self, D: complex, convention: Convention = Convention.STOCHASTIC):
        self.D = check_d(D)
        self.convention = Convention(convention)

    @property
    def name(self) -> str:
        return "analytic"

    def single(self, party: Party, angle: float) -> float:
        return analytic_single(self.D, self.convention, party)

    def coincidence(self, theta: float, phi: float) -> float:
        return analytic_coincidence(self.D, AnalyzerAngles(theta, phi), self.convention)


class MonteCarloRates(RateSource):
    """Estimates over one vacuum ensemble; results are cached per angle"""

    def __init__(self, stream: VacuumStream, D: complex, convention: Convention = Convention.STOCHASTIC):
        self.stream = stream
        self.D = check_d(D)
        self.convention = Convention(convention)
        self._cache: dict[tuple, RateEstimate] = {}

    @property
    def name(self) -> str:
        return "monte_carlo"

    def single(self, party: Party, angle: float) -> RateEstimate:
        key = ("single", Party(party), reduce_angle(angle))
        if key not in self._cache:
            self._cache[key] = mc_single(self.stream, self.D, angle, self.convention, party)
        return self._cache[key]

    def coincidence(self, theta: float, phi: float) -> RateEstimate:
        angles = AnalyzerAngles(theta, phi)
        key = ("coincidence", angles.theta, angles.phi)
        if key not in self._cache:
            self._cache[key] = mc_coincidence(self.stream, self.D, angles, self.convention)
        return self._cache[key]


class FockRates(RateSource):
    """Hilbert-normalized rates from the truncated Fock space"""

    def __init__(self, space: TruncatedSpace, D: complex):
        self.space = space
        self.D = check_d(D)

    @property
    def name(self) -> str:
        return "fock"

    def single(self, party: Party, angle: float) -> float:
        return single_rate(self.space, self.D, angle, party)

    def coincidence(self, theta: float, phi: float) -> float:
        return coincidence_rate(self.space, self.D, AnalyzerAngles(theta, phi))


class EfficiencyScaledRates(RateSource):
    """Singles scaled by each party's efficiency, coincidences by their product"""

    def __init__(self, base: RateSource, eff: EfficiencyPair):
        self.base = base
        self.eff = eff

    @property
    def name(self) -> str:
        return self.base.name

    def single(self, party: Party, angle: float) -> Rate:
        eta = self.eff.eta_a if Party(party) is Party.ALICE else self.eff.eta_b
        return eta * self.base.single(party, angle)

    def coincidence(self, theta, phi) -> Rate:
        return self.eff.eta_a * self.eff.eta_b * self.base.coincidence(theta, phi)


def ch_evaluate(rates: RateSource, setting: ChSetting) -> ChResult:
    s = setting
    lhs = rates.single(Party.ALICE, s.theta1) + rates.single(Party.BOB, s.phi1)
    rhs = (
        rates.coincidence(s.theta1, s.phi1)
        + rates.coincidence(s.theta1, s.phi2)
        + rates.coincidence(s.theta2, s.phi1)
        - rates.coincidence(s.theta2, s.phi2)
    )
    margin = lhs - rhs
    margin_value = float(np.real(value_of(margin)))
    if isinstance(margin, RateEstimate):
        violated = margin_value < -MC_SIGNIFICANCE * margin.std_error
    else:
        scale = max(abs(value_of(lhs)), abs(value_of(rhs)))
        violated = margin_value < -MARGIN_TOL * scale
    logger.debug("CH %s: lhs=%.6g rhs=%.6g margin=%.6g", rates.name, value_of(lhs), value_of(rhs), margin_value)
    return ChResult(
        lhs=float(np.real(value_of(lhs))),
        rhs=float(np.real(value_of(rhs))),
        margin=margin_value,
        violated=bool(violated),
        lhs_err=error_of(lhs),
        rhs_err=error_of(rhs),
        margin_err=error_of(margin),
        source=rates.name,
    )


def efficiency_violation_possible(eff: EfficiencyPair) -> bool:
    """eta_a + eta_b < (1 + sqrt 2) eta_a eta_b, strictly"""
    gap = (1.0 + np.sqrt(2.0)) * eff.eta_a * eff.eta_b - (eff.eta_a + eff.eta_b)
    return bool(gap > MARGIN_TOL * (eff.eta_a + eff.eta_b))


def ch_with_efficiency(rates: RateSource, setting: ChSetting, eff: EfficiencyPair) -> ChResult:
    return ch_evaluate(EfficiencyScaledRates(rates, eff), setting)


@dataclass(frozen=True)
class GridScanResult:
    best_margin: float
    best_setting: ChSetting
    margins: np.ndarray


def scan_ch_grid(rates: RateSource, n_points: int = 16) -> GridScanResult:
    """Brute-force CH margins over all n_points^4 settings with angles k pi / n_points.

    The rate source must accept numpy arrays of angles, as PredictedRates does.
    """
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    grid = np.arange(n_points) * np.pi / n_points
    t1, p1, t2, p2 = np.meshgrid(grid, grid, grid, grid, indexing="ij")
    lhs = rates.single(Party.ALICE, t1) + rates.single(Party.BOB, p1)
    rhs = (
        rates.coincidence(t1, p1)
        + rates.coincidence(t1, p2)
        + rates.coincidence(t2, p1)
        - rates.coincidence(t2, p2)
    )
    margins = np.broadcast_to(lhs - rhs, t1.shape)
    idx = np.unravel_index(np.argmin(margins), margins.shape)
    best = ChSetting(theta1=grid[idx[0]], phi1=grid[idx[1]], theta2=grid[idx[2]], phi2=grid[idx[3]])
    return GridScanResult(best_margin=float(margins[idx]), best_setting=best, margins=margins)


__all__ = [
    "AnalyticRates",
    "ChResult",
    "ChSetting",
    "EBERHARD_THRESHOLD",
    "EFFICIENCY_THRESHOLD",
    "EfficiencyScaledRates",
    "FockRates",
    "GridScanResult",
    "MonteCarloRates",
    "PredictedRates",
    "RateSource",
    "ch_evaluate",
    "ch_with_efficiency",
    "efficiency_violation_possible",
    "scan_ch_grid",
]
