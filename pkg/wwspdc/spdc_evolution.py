"""
Parametric down-conversion mode transform.

The undepleted-pump model couples signal and idler through

    da_s/dt = -i w_s a_s - i A a_i* exp(-i w_p t)
    da_i/dt = -i w_i a_i - i A a_s* exp(-i w_p t)

With w_p = w_s + w_i the rotating-frame amplitudes b_j = a_j exp(i w_j t) obey
db_s/dt = -i A b_i*, db_i/dt = -i A b_s*, whose exact flow over a crossing
time T is hyperbolic in |C| = |A T|. The production map keeps only the second
order expansion and drops the global factor (1 + |C|^2/2):

    a_s -> a_s + D a_i*,  a_i -> a_i + D a_s*,  D = C / (1 + |C|^2/2)
"""
import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.integrate import solve_ivp

from .base import ConfigError, DomainError
from .gaussian_modes import ModeAmplitude, VacuumSample

logger = logging.getLogger(__name__)

FREQUENCY_MATCH_TOL = 1e-12


def map_c_to_d(C: complex) -> complex:
    """Reparametrize the pump coupling: D = C / (1 + |C|^2/2)"""
    return C / (1.0 + abs(C) ** 2 / 2.0)


@dataclass(frozen=True)
class SpdcParams:
    """Source configuration.

    derived_D is the parameter entering the field transform. coupling_C is
    optional; when given, derived_D must equal map_c_to_d(coupling_C).
    """
    derived_D: complex
    coupling_C: Optional[complex] = None
    omega_s: float = 0.0
    omega_i: float = 0.0
    omega_p: Optional[float] = None
    crossing_time_T: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "derived_D", complex(self.derived_D))
        if not np.isfinite(self.derived_D):
            raise DomainError(f"D must be finite, got {self.derived_D}")
        if abs(self.derived_D) >= 1.0:
            raise DomainError(f"|D| must be < 1 for the perturbative map, got |D|={abs(self.derived_D):.6g}")
        if self.coupling_C is not None:
            expected = map_c_to_d(complex(self.coupling_C))
            if abs(expected - self.derived_D) > 1e-12:
                raise ConfigError(
                    f"derived_D={self.derived_D} inconsistent with coupling_C={self.coupling_C} "
                    f"(expected {expected})"
                )
        if self.omega_p is None:
            object.__setattr__(self, "omega_p", self.omega_s + self.omega_i)
        elif abs(self.omega_p - (self.omega_s + self.omega_i)) > FREQUENCY_MATCH_TOL:
            raise ConfigError(
                f"Frequency matching violated: omega_p={self.omega_p} != "
                f"omega_s + omega_i = {self.omega_s + self.omega_i}"
            )
        if self.crossing_time_T < 0:
            raise ConfigError(f"crossing_time_T must be >= 0, got {self.crossing_time_T}")

    @classmethod
    def from_coupling(cls, C: complex, **kwargs) -> "SpdcParams":
        return cls(derived_D=map_c_to_d(complex(C)), coupling_C=complex(C), **kwargs)

    @property
    def pump_amplitude(self) -> complex:
        """A = C / T (requires a coupling and a nonzero crossing time)"""
        if self.coupling_C is None or self.crossing_time_T == 0:
            raise ConfigError("pump_amplitude needs coupling_C and a nonzero crossing time")
        return self.coupling_C / self.crossing_time_T


def free_evolve(a: ModeAmplitude, omega: float, t: float) -> ModeAmplitude:
    """a exp(-i omega t)"""
    return a * np.exp(-1j * omega * t)


def _as_d(params: Union[SpdcParams, complex]) -> complex:
    if isinstance(params, SpdcParams):
        return params.derived_D
    return SpdcParams(derived_D=params).derived_D


def spdc_transform(sample: VacuumSample, params: Union[SpdcParams, complex]) -> VacuumSample:
    """Second-order SPDC map (a_s + D a_i*, a_i + D a_s*) without spacetime phases"""
    D = _as_d(params)
    a_s, a_i = sample.a_s, sample.a_i
    return VacuumSample(a_s=a_s + D * np.conj(a_i), a_i=a_i + D * np.conj(a_s))


def _rotating_rhs(A: complex):
    def rhs(b_s, b_i):
        return -1j * A * np.conj(b_i), -1j * A * np.conj(b_s)
    return rhs


def _rk4(b_s, b_i, A: complex, T: float, n_steps: int):
    f = _rotating_rhs(A)
    h = T / n_steps
    for _ in range(n_steps):
        k1s, k1i = f(b_s, b_i)
        k2s, k2i = f(b_s + 0.5 * h * k1s, b_i + 0.5 * h * k1i)
        k3s, k3i = f(b_s + 0.5 * h * k2s, b_i + 0.5 * h * k2i)
        k4s, k4i = f(b_s + h * k3s, b_i + h * k3i)
        b_s = b_s + (h / 6.0) * (k1s + 2 * k2s + 2 * k3s + k4s)
        b_i = b_i + (h / 6.0) * (k1i + 2 * k2i + 2 * k3i + k4i)
    return b_s, b_i


def integrate_coupled_odes(
    sample: VacuumSample,
    A: complex,
    T: float,
    n_steps: int,
    omega_s: float = 0.0,
    omega_i: float = 0.0,
    rotating_frame: bool = False,
) -> VacuumSample:
    """Integrate the coupled signal/idler equations over [0, T] with fixed-step RK4.

    The optical phases are removed analytically (rotating frame, frequency
    matching assumed) and restored at the end unless rotating_frame is set.
    """
    if not isinstance(n_steps, (int, np.integer)) or n_steps < 1:
        raise ConfigError(f"n_steps must be a positive integer, got {n_steps!r}")
    if T < 0:
        raise ConfigError(f"T must be >= 0, got {T}")
    b_s = np.asarray(sample.a_s, dtype=complex)
    b_i = np.asarray(sample.a_i, dtype=complex)
    b_s, b_i = _rk4(b_s, b_i, complex(A), float(T), int(n_steps))
    if rotating_frame:
        return VacuumSample(a_s=b_s, a_i=b_i)
    return VacuumSample(a_s=free_evolve(b_s, omega_s, T), a_i=free_evolve(b_i, omega_i, T))


# Probe inputs: (1, 0) yields (alpha, .) and (0, 1) yields (beta, .) in the signal slot
_PROBE = VacuumSample(a_s=np.array([1.0 + 0j, 0.0]), a_i=np.array([0.0 + 0j, 1.0]))


def map_coefficients(A: complex, T: float, n_steps: int) -> tuple[complex, complex]:
    """(alpha, beta) of the integrated rotating-frame map b_s(T) = alpha b_s(0) + beta b_i*(0)"""
    out = integrate_coupled_odes(_PROBE, A, T, n_steps, rotating_frame=True)
    return complex(out.a_s[0]), complex(out.a_s[1])


def closed_form_coefficients(C: complex) -> tuple[complex, complex]:
    """Second-order map coefficients (1 + |C|^2/2, -i C)"""
    return 1.0 + abs(C) ** 2 / 2.0, -1j * C


def exact_spdc_coefficients(C: complex) -> tuple[complex, complex]:
    """Exact rotating-frame coefficients (cosh|C|, -i (C/|C|) sinh|C|)"""
    r = abs(C)
    if r == 0:
        return 1.0 + 0j, 0j
    return complex(np.cosh(r)), -1j * (C / r) * np.sinh(r)


def reference_map_coefficients(
    A: complex, T: float, rtol: float = 1e-12, atol: float = 1e-14
) -> tuple[complex, complex]:
    """Map coefficients from scipy's adaptive DOP853 integrator"""
    A = complex(A)

    def rhs(_t, y):
        b_s = y[0] + 1j * y[1]
        b_i = y[2] + 1j * y[3]
        ds = -1j * A * np.conj(b_i)
        di = -1j * A * np.conj(b_s)
        return [ds.real, ds.imag, di.real, di.imag]

    coeffs = []
    for y0 in ([1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]):
        sol = solve_ivp(rhs, (0.0, T), y0, method="DOP853", rtol=rtol, atol=atol)
        if not sol.success:
            raise ConfigError(f"Reference integration failed: {sol.message}")
        coeffs.append(complex(sol.y[0, -1], sol.y[1, -1]))
    return coeffs[0], coeffs[1]


def conserved_difference(sample: VacuumSample) -> np.ndarray:
    """|a_s|^2 - |a_i|^2, invariant under the exact rotating-frame flow"""
    return np.abs(sample.a_s) ** 2 - np.abs(sample.a_i) ** 2


def convergence_order(A: complex, T: float, n_steps: int) -> float:
    """Observed RK4 order from halving the step size against the exact solution"""
    exact = np.array(exact_spdc_coefficients(A * T))
    coarse = np.array(map_coefficients(A, T, n_steps))
    fine = np.array(map_coefficients(A, T, 2 * n_steps))
    err_coarse = np.max(np.abs(coarse - exact))
    err_fine = np.max(np.abs(fine - exact))
    logger.debug("RK4 errors: %d steps %.3e, %d steps %.3e", n_steps, err_coarse, 2 * n_steps, err_fine)
    return float(np.log2(err_coarse / err_fine))


__all__ = [
    "SpdcParams",
    "closed_form_coefficients",
    "conserved_difference",
    "convergence_order",
    "exact_spdc_coefficients",
    "free_evolve",
    "integrate_coupled_odes",
    "map_c_to_d",
    "map_coefficients",
    "reference_map_coefficients",
    "spdc_transform",
]
