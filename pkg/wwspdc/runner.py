"""
Command-line runner: configuration, experiment subcommands and CSV output.

Configuration precedence is flags > --config file > built-in defaults. The
config file is TOML with a single flat [run] table whose keys match the
RunConfig fields; every key has a flag of the same name (n_samples ->
--n-samples).
"""
import argparse
import csv
import logging
import sys
import time
import tomllib
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import __version__
from .base import (
    ConfigError,
    Convention,
    DomainError,
    EfficiencyPair,
    OracleCheckError,
    Party,
    PreconditionError,
    SimulationError,
)
from .bell_analysis import (
    EBERHARD_THRESHOLD,
    EFFICIENCY_THRESHOLD,
    AnalyticRates,
    FockRates,
    MonteCarloRates,
    PredictedRates,
    ch_with_efficiency,
    efficiency_violation_possible,
    standard_setting,
)
from .detection_rates import (
    PERTURBATIVE_WARN_D,
    analytic_coincidence,
    analytic_single,
    clamped_mc_single,
    fit_cos2_amplitude,
    mc_coincidence,
    mc_single,
    operator_coincidence,
)
from .fock_oracle import TruncatedSpace, coincidence_rate, expectation_on_vacuum, single_rate
from .gaussian_modes import SamplerConfig, VacuumSample, rng_id, sample_vacuum
from .polarization_fields import AnalyzerAngles
from .spdc_evolution import (
    closed_form_coefficients,
    conserved_difference,
    convergence_order,
    exact_spdc_coefficients,
    free_evolve,
    integrate_coupled_odes,
    map_c_to_d,
    map_coefficients,
    reference_map_coefficients,
)
from .ww_algebra import ORDERING_TABLE, all_words, operator_vacuum_expectation, weyl_symbol

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_ORACLE = 3

# Longest operator word compared between the Weyl and Fock routes
ORACLE_WORD_LENGTH = 6

# Instance used for the RK4 convergence-order check
ORDER_CHECK_COUPLING = 1.0
ORDER_CHECK_STEPS = 8


@dataclass
class RunConfig:
    d_re: float = 0.1
    d_im: float = 0.0
    c_re: float = 0.1
    c_im: float = 0.0
    map_c_to_d: bool = False
    theta: tuple[float, ...] = (0.0,)
    phi: tuple[float, ...] = (0.0,)
    degrees: bool = False
    n_samples: int = 1_000_000
    n_batches: int = 100
    seed: int = 20200203
    workers: int = 1
    convention: str = Convention.STOCHASTIC.value
    eta_a: float = 1.0
    eta_b: float = 1.0
    cutoff: int = 3
    ode_steps: int = 10_000
    n_points: int = 8
    zpf_floor: Optional[float] = None
    k_scale: Optional[float] = None

    def __post_init__(self):
        """Coerce and validate every key"""
        for f in fields(self):
            setattr(self, f.name, _coerce(f.name, getattr(self, f.name)))
        if self.convention not in {c.value for c in Convention}:
            raise ConfigError(
                f"convention: expected one of {[c.value for c in Convention]}, got {self.convention!r}"
            )
        for key, minimum in (("n_samples", 1), ("n_batches", 2), ("workers", 1), ("cutoff", 2),
                             ("ode_steps", 1), ("n_points", 2)):
            if getattr(self, key) < minimum:
                raise ConfigError(f"{key}: must be >= {minimum}, got {getattr(self, key)}")
        if self.k_scale is not None and self.k_scale <= 0:
            raise ConfigError(f"k_scale: must be positive, got {self.k_scale}")
        # Range checks with their own error types
        self.sampler_config()
        self.efficiencies()
        if abs(self.D) >= 1.0:
            raise DomainError(f"|D| must be < 1, got |D|={abs(self.D):.6g}")

    @property
    def coupling(self) -> complex:
        return complex(self.c_re, self.c_im)

    @property
    def D(self) -> complex:
        if self.map_c_to_d:
            return map_c_to_d(self.coupling)
        return complex(self.d_re, self.d_im)

    @property
    def conv(self) -> Convention:
        return Convention(self.convention)

    def _to_radians(self, values) -> list[float]:
        return [float(np.deg2rad(v)) if self.degrees else float(v) for v in values]

    @property
    def thetas(self) -> list[float]:
        return self._to_radians(self.theta)

    @property
    def phis(self) -> list[float]:
        return self._to_radians(self.phi)

    def sampler_config(self) -> SamplerConfig:
        return SamplerConfig(seed=self.seed, n_samples=self.n_samples, n_batches=self.n_batches)

    def efficiencies(self) -> EfficiencyPair:
        return EfficiencyPair(eta_a=self.eta_a, eta_b=self.eta_b)

    @property
    def k(self) -> float:
        """K of the ideal rates: k_scale if set, else the analytic pair scale of D.

        With that K the ideal singles K/2 equal the analytic singles. D = 0 has no
        pair scale and falls back to K = 1.
        """
        if self.k_scale is not None:
            return self.k_scale
        return 2.0 * analytic_single(self.D, self.conv) or 1.0

    def flags(self) -> list[str]:
        out = []
        if self.map_c_to_d:
            out.append("mapped_from_c")
        if abs(self.D) > PERTURBATIVE_WARN_D:
            out.append("large_d")
        if self.zpf_floor is not None:
            out.append("clamped_exploratory")
        return out


_FLOAT_KEYS = {"d_re", "d_im", "c_re", "c_im", "eta_a", "eta_b"}
_OPTIONAL_FLOAT_KEYS = {"zpf_floor", "k_scale"}
_INT_KEYS = {"n_samples", "n_batches", "seed", "workers", "cutoff", "ode_steps", "n_points"}
_BOOL_KEYS = {"map_c_to_d", "degrees"}
_ANGLE_KEYS = {"theta", "phi"}


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _coerce(key: str, value: Any):
    if key in _FLOAT_KEYS:
        if not _is_number(value) or not np.isfinite(value):
            raise ConfigError(f"{key}: expected a finite number, got {value!r}")
        return float(value)
    if key in _INT_KEYS:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        return value
    if key in _BOOL_KEYS:
        if not isinstance(value, bool):
            raise ConfigError(f"{key}: expected true or false, got {value!r}")
        return value
    if key in _ANGLE_KEYS:
        values = value if isinstance(value, (list, tuple)) else [value]
        if not values or not all(_is_number(v) and np.isfinite(v) for v in values):
            raise ConfigError(f"{key}: expected a number or a non-empty list of numbers, got {value!r}")
        return tuple(float(v) for v in values)
    if key in _OPTIONAL_FLOAT_KEYS:
        if value is None:
            return None
        if not _is_number(value) or not np.isfinite(value):
            raise ConfigError(f"{key}: expected a finite number, got {value!r}")
        return float(value)
    if key == "convention":
        if not isinstance(value, str):
            raise ConfigError(f"convention: expected a string, got {value!r}")
        return value
    raise ConfigError(f"Unknown config key '{key}'")


CONFIG_KEYS = tuple(f.name for f in fields(RunConfig))


def load_config(path: Path) -> dict[str, Any]:
    """Read the [run] table of a TOML config file"""
    path = Path(path)
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except FileNotFoundError:
        raise ConfigError(f"Config file not found: {path}")
    except tomllib.TOMLDecodeError as e:
        # tomllib reports "(at line X, column Y)"
        raise ConfigError(f"{path}: invalid TOML: {e}")
    unknown_tables = set(data) - {"run"}
    if unknown_tables:
        raise ConfigError(f"{path}: unknown table(s) {sorted(unknown_tables)}; expected only [run]")
    table = data.get("run", {})
    unknown = set(table) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"{path}: unknown key(s) in [run]: {sorted(unknown)}")
    return dict(table)


def resolve_config(args: argparse.Namespace, default_config: Optional[Path] = None) -> RunConfig:
    """Built-in defaults, then the config file, then flags"""
    values: dict[str, Any] = {}
    path = args.config or default_config
    if path is not None and (args.config or Path(path).exists()):
        values.update(load_config(path))
    for key in CONFIG_KEYS:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            values[key] = flag_value
    config = RunConfig(**values)
    logger.debug("Resolved config: %s", asdict(config))
    return config


# CSV output

RATE_COLUMNS = [
    "theta", "phi", "d_re", "d_im", "convention",
    "p_a", "p_a_err", "p_b", "p_b_err", "p_ab", "p_ab_err", "p_ab_analytic",
    "n_samples", "n_batches", "seed", "rng_id", "version",
]
TRAILING_COLUMNS = ["wall_time_s", "flags"]

SCAN_COLUMNS = RATE_COLUMNS + ["delta", "fit_c", "fit_c_err"]

BELL_COLUMNS = [
    "source", "theta1", "phi1", "theta2", "phi2", "d_re", "d_im", "convention",
    "eta_a", "eta_b", "lhs", "lhs_err", "rhs", "rhs_err", "margin", "margin_err",
    "ratio", "violated", "efficiency_violation_possible",
    "n_samples", "n_batches", "seed", "rng_id", "version",
]

ORACLE_COLUMNS = ["check", "passed", "deviation", "tolerance"]


def format_value(value) -> str:
    """Locale-independent CSV cell, up to 12 significant digits"""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    return str(value)


def write_csv(columns: list[str], rows: list[dict], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])


def _stamp(config: RunConfig) -> dict[str, Any]:
    D = config.D
    return {
        "d_re": D.real,
        "d_im": D.imag,
        "convention": config.convention,
        "n_samples": config.n_samples,
        "n_batches": config.n_batches,
        "seed": config.seed,
        "rng_id": rng_id(),
        "version": __version__,
    }


def _rate_row(config: RunConfig, stream, theta: float, phi: float) -> dict[str, Any]:
    D, conv = config.D, config.conv
    angles = AnalyzerAngles(theta, phi)
    if config.zpf_floor is not None:
        p_a = clamped_mc_single(stream, D, theta, config.zpf_floor, conv, Party.ALICE)
        p_b = clamped_mc_single(stream, D, phi, config.zpf_floor, conv, Party.BOB)
    else:
        p_a = mc_single(stream, D, theta, conv, Party.ALICE)
        p_b = mc_single(stream, D, phi, conv, Party.BOB)
    p_ab = mc_coincidence(stream, D, angles, conv)
    return {
        "theta": theta,
        "phi": phi,
        "p_a": p_a.mean,
        "p_a_err": p_a.std_error,
        "p_b": p_b.mean,
        "p_b_err": p_b.std_error,
        "p_ab": p_ab.mean,
        "p_ab_err": p_ab.std_error,
        "p_ab_analytic": analytic_coincidence(D, angles, conv),
        **_stamp(config),
    }


def cmd_rates(config: RunConfig) -> tuple[list[str], list[dict]]:
    """One row per (theta, phi) pair: MC singles and coincidence, analytic coincidence"""
    stream = sample_vacuum(config.sampler_config(), workers=config.workers)
    flags = ";".join(config.flags())
    rows = []
    for theta in config.thetas:
        for phi in config.phis:
            start = time.perf_counter()
            row = _rate_row(config, stream, theta, phi)
            row["wall_time_s"] = time.perf_counter() - start
            row["flags"] = flags
            rows.append(row)
    return RATE_COLUMNS + TRAILING_COLUMNS, rows


def cmd_scan(config: RunConfig) -> tuple[list[str], list[dict]]:
    """Coincidence sweep over theta - phi in [0, pi] with a fitted cos^2 amplitude"""
    stream = sample_vacuum(config.sampler_config(), workers=config.workers)
    phi = config.phis[0]
    deltas = np.linspace(0.0, np.pi, config.n_points)
    flags = ";".join(config.flags())
    rows = []
    for delta in deltas:
        start = time.perf_counter()
        row = _rate_row(config, stream, phi + delta, phi)
        row["delta"] = float(delta)
        row["wall_time_s"] = time.perf_counter() - start
        row["flags"] = flags
        rows.append(row)
    c, c_err = fit_cos2_amplitude(deltas, [r["p_ab"] for r in rows], [r["p_ab_err"] for r in rows])
    logger.info("cos^2 fit amplitude %.6g +- %.2g", c, c_err)
    for row in rows:
        row["fit_c"] = c
        row["fit_c_err"] = c_err
    return SCAN_COLUMNS + TRAILING_COLUMNS, rows


def cmd_bell(config: RunConfig, summary=None) -> tuple[list[str], list[dict]]:
    """CH evaluation at the standard setting for every rate source"""
    summary = summary or sys.stderr
    setting = standard_setting()
    eff = config.efficiencies()
    D, conv = config.D, config.conv
    stream = sample_vacuum(config.sampler_config(), workers=config.workers)
    sources = [
        PredictedRates(config.k),
        AnalyticRates(D, conv),
        MonteCarloRates(stream, D, conv),
        FockRates(TruncatedSpace(config.cutoff), D),
    ]
    possible = efficiency_violation_possible(eff)
    flags = ";".join(config.flags())
    rows = []
    for source in sources:
        start = time.perf_counter()
        result = ch_with_efficiency(source, setting, eff)
        stamp = _stamp(config)
        if isinstance(source, FockRates):
            stamp["convention"] = Convention.HILBERT.value
        if isinstance(source, PredictedRates):
            stamp["convention"] = "predicted"
        rows.append({
            "source": source.name,
            "theta1": setting.theta1,
            "phi1": setting.phi1,
            "theta2": setting.theta2,
            "phi2": setting.phi2,
            "eta_a": eff.eta_a,
            "eta_b": eff.eta_b,
            "lhs": result.lhs,
            "lhs_err": result.lhs_err,
            "rhs": result.rhs,
            "rhs_err": result.rhs_err,
            "margin": result.margin,
            "margin_err": result.margin_err,
            "ratio": result.ratio,
            "violated": result.violated,
            "efficiency_violation_possible": possible,
            **stamp,
            "wall_time_s": time.perf_counter() - start,
            "flags": flags,
        })
        band = f" +- {3 * result.margin_err:.3g} (3 se)" if result.margin_err else ""
        print(
            f"{source.name:>12}: lhs={result.lhs:.6g} rhs={result.rhs:.6g} "
            f"rhs/lhs={result.ratio:.6g} margin={result.margin:.6g}{band} "
            f"{'VIOLATED' if result.violated else 'not violated'}",
            file=summary,
        )
    print(
        f"Efficiencies eta_a={eff.eta_a:g}, eta_b={eff.eta_b:g}: violation "
        f"{'possible' if possible else 'impossible'} "
        f"(symmetric threshold {EFFICIENCY_THRESHOLD:.6f}; "
        f"non-maximal entanglement threshold {EBERHARD_THRESHOLD:.6f}, not modelled)",
        file=summary,
    )
    return BELL_COLUMNS + TRAILING_COLUMNS, rows


@dataclass(frozen=True)
class OracleCheck:
    name: str
    passed: bool
    deviation: float
    tolerance: float


def _check(name: str, deviation: float, tolerance: float) -> OracleCheck:
    deviation = float(deviation)
    passed = bool(np.isfinite(deviation) and deviation <= tolerance)
    log = logger.debug if passed else logger.error
    log("oracle %s: deviation %.3e (tolerance %.1e) %s", name, deviation, tolerance, "ok" if passed else "FAILED")
    return OracleCheck(name, passed, deviation, tolerance)


def _max_coefficient_gap(poly_a, poly_b) -> float:
    diff = (poly_a - poly_b).terms
    return max((abs(v) for v in diff.values()), default=0.0)


def run_oracle_checks(config: RunConfig) -> list[OracleCheck]:
    """Cross-checks between the Weyl, Fock, closed-form and ODE routes"""
    checks = []
    D = config.D
    angles = AnalyzerAngles(config.thetas[0], config.phis[0])
    space = TruncatedSpace(config.cutoff)

    table_gap = max(_max_coefficient_gap(weyl_symbol(w), expected) for w, expected in ORDERING_TABLE.values())
    checks.append(_check("ordering_table", table_gap, 1e-12))

    word_gap = max(
        abs(operator_vacuum_expectation(w) - expectation_on_vacuum(space, w))
        for w in all_words(ORACLE_WORD_LENGTH)
    )
    checks.append(_check("word_expectations", word_gap, 1e-10))

    fock_single = single_rate(space, D, angles.theta, Party.ALICE)
    checks.append(_check("fock_single", abs(fock_single - analytic_single(D, Convention.HILBERT)), 1e-12))

    fock_coinc = coincidence_rate(space, D, angles)
    checks.append(_check(
        "fock_coincidence",
        abs(fock_coinc - analytic_coincidence(D, angles, Convention.HILBERT)),
        2 * abs(D) ** 4 + 1e-12,
    ))
    checks.append(_check("weyl_vs_fock_coincidence", abs(operator_coincidence(D, angles) - fock_coinc), 1e-10))

    C = config.coupling
    integrated = np.array(map_coefficients(C, 1.0, config.ode_steps))
    closed = np.array(closed_form_coefficients(C))
    exact = np.array(exact_spdc_coefficients(C))
    checks.append(_check("ode_closed_form", np.max(np.abs(integrated - closed)), max(abs(C) ** 3, 1e-10)))
    checks.append(_check("ode_exact", np.max(np.abs(integrated - exact)), 1e-9))
    reference = np.array(reference_map_coefficients(C, 1.0))
    checks.append(_check("ode_reference", np.max(np.abs(reference - exact)), 1e-8))

    order = convergence_order(ORDER_CHECK_COUPLING, 1.0, ORDER_CHECK_STEPS)
    checks.append(_check("ode_order", abs(order - 4.0), 0.2))

    probe = next(iter(sample_vacuum(SamplerConfig(seed=config.seed, n_samples=200, n_batches=2))))
    evolved = integrate_coupled_odes(probe, C, 1.0, config.ode_steps, rotating_frame=True)
    drift = np.max(np.abs(conserved_difference(evolved) - conserved_difference(probe)))
    checks.append(_check("ode_conservation", drift, 1e-8))

    free = integrate_coupled_odes(probe, 0.0, 1.0, config.ode_steps, omega_s=1.3, omega_i=0.7)
    expected = VacuumSample(free_evolve(probe.a_s, 1.3, 1.0), free_evolve(probe.a_i, 0.7, 1.0))
    free_gap = max(np.max(np.abs(free.a_s - expected.a_s)), np.max(np.abs(free.a_i - expected.a_i)))
    checks.append(_check("ode_free_evolution", free_gap, 1e-10))
    return checks


def cmd_oracle(config: RunConfig) -> tuple[list[str], list[dict]]:
    """Pass/fail report of the cross-checks"""
    checks = run_oracle_checks(config)
    rows = [asdict(c) | {"check": c.name} for c in checks]
    return ORACLE_COLUMNS, rows


COMMANDS = {
    "rates": cmd_rates,
    "scan": cmd_scan,
    "bell": cmd_bell,
    "oracle": cmd_oracle,
}


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("run configuration (overrides --config)")
    g.add_argument("--d-re", type=float, help="Real part of D")
    g.add_argument("--d-im", type=float, help="Imaginary part of D")
    g.add_argument("--c-re", type=float, help="Real part of the pump coupling C")
    g.add_argument("--c-im", type=float, help="Imaginary part of the pump coupling C")
    g.add_argument("--map-c-to-d", action=argparse.BooleanOptionalAction, default=None,
                   help="Derive D = C / (1 + |C|^2/2) from C")
    g.add_argument("--theta", type=float, nargs="+", help="Alice analyzer angle(s)")
    g.add_argument("--phi", type=float, nargs="+", help="Bob analyzer angle(s)")
    g.add_argument("--degrees", action=argparse.BooleanOptionalAction, default=None,
                   help="Angles are in degrees (default radians)")
    g.add_argument("--n-samples", type=int, help="Vacuum samples")
    g.add_argument("--n-batches", type=int, help="Batches for standard errors (>= 2)")
    g.add_argument("--seed", type=int, help="Unsigned 64-bit RNG seed")
    g.add_argument("--workers", type=int, help="Parallel sampling workers (results do not depend on it)")
    g.add_argument("--convention", choices=[c.value for c in Convention], help="Rate normalization")
    g.add_argument("--eta-a", type=float, help="Alice detection efficiency in [0, 1]")
    g.add_argument("--eta-b", type=float, help="Bob detection efficiency in [0, 1]")
    g.add_argument("--cutoff", type=int, help="Fock cutoff per mode (>= 2)")
    g.add_argument("--ode-steps", type=int, help="RK4 steps for the ODE oracle")
    g.add_argument("--n-points", type=int, help="Scan points over theta - phi in [0, pi]")
    g.add_argument("--zpf-floor", type=float,
                   help="Exploratory positivity clamp with a constant background floor")
    g.add_argument("--k-scale", type=float,
                   help="Scale K of the ideal predicted rates (default: from D, singles K/2 = analytic singles)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, metavar="FILE", help="TOML config file with a [run] table")
    common.add_argument("--out", type=Path, metavar="FILE", help="Write CSV here instead of stdout")
    common.add_argument("--debug", action="store_true", help="Debug logging and tracebacks")
    _add_config_flags(common)

    parser = argparse.ArgumentParser(
        prog="wwspdc",
        description="Weyl-Wigner stochastic model of SPDC polarization entanglement",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Commands:
  rates    MC and analytic single/coincidence rates per (theta, phi)
  scan     coincidence sweep over theta - phi with a cos^2 fit
  bell     Clauser-Horne margins at (pi/4, pi/8, 0, 3pi/8)
  oracle   cross-checks between independent evaluation routes

Detection efficiency thresholds:
  maximal entanglement     eta > 2(sqrt 2 - 1) = {EFFICIENCY_THRESHOLD:.6f}
  non-maximal (quoted)     eta > 2/3 = {EBERHARD_THRESHOLD:.6f}, not modelled

Exit codes: 0 ok, 2 configuration/domain error, 3 oracle failure, 1 unexpected
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=func.__doc__.strip().splitlines()[0])
    return parser


def main(argv: Optional[list[str]] = None, default_config: Optional[Path] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        config = resolve_config(args, default_config)
        columns, rows = COMMANDS[args.command](config)
        if args.out:
            with open(args.out, "w", newline="", encoding="utf-8") as f:
                write_csv(columns, rows, f)
        else:
            write_csv(columns, rows, sys.stdout)
        if args.command == "oracle":
            failed = [r["check"] for r in rows if not r["passed"]]
            if failed:
                raise OracleCheckError(f"Failed checks: {', '.join(failed)}")
        return EXIT_OK

    except OracleCheckError as e:
        print(f"Oracle check failed: {e}", file=sys.stderr)
        return EXIT_ORACLE

    except (ConfigError, DomainError, PreconditionError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    except SimulationError as e:
        print(f"Simulation error: {e}", file=sys.stderr)
        return EXIT_UNEXPECTED

    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        if args.debug:
            import traceback
            traceback.print_exc()
        return EXIT_UNEXPECTED


__all__ = [
    "RunConfig",
    "build_parser",
    "cmd_bell",
    "cmd_oracle",
    "cmd_rates",
    "cmd_scan",
    "load_config",
    "main",
    "resolve_config",
    "run_oracle_checks",
    "write_csv",
]
