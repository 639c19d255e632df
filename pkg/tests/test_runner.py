import argparse
import csv
import io

import numpy as np
import pytest

from wwspdc import __version__
from wwspdc.base import ConfigError, DomainError
from wwspdc.gaussian_modes import rng_id
from wwspdc.runner import (
    BELL_COLUMNS,
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_ORACLE,
    RATE_COLUMNS,
    RunConfig,
    cmd_bell,
    cmd_oracle,
    cmd_rates,
    cmd_scan,
    format_value,
    load_config,
    main,
    resolve_config,
    write_csv,
)

FAST = ["--n-samples", "20000", "--n-batches", "20"]


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def run(tmp_path, name, *argv):
    out = tmp_path / f"{name}.csv"
    code = main([*argv, "--out", str(out)])
    return code, out


def without_wall_time(rows):
    return [{k: v for k, v in row.items() if k != "wall_time_s"} for row in rows]


def test_rates_row_contents(tmp_path):
    code, out = run(tmp_path, "rates", "rates", *FAST, "--theta", "0", "--phi", "0")
    assert code == EXIT_OK
    rows = read_csv(out)
    assert len(rows) == 1
    row = rows[0]
    assert list(row)[: len(RATE_COLUMNS)] == RATE_COLUMNS
    assert float(row["p_ab_analytic"]) == pytest.approx(0.005)
    assert row["convention"] == "stochastic_model"
    assert row["seed"] == "20200203"
    assert row["rng_id"] == rng_id()
    assert row["version"] == __version__
    p_ab, err = float(row["p_ab"]), float(row["p_ab_err"])
    assert abs(p_ab - 0.005) <= 5 * err


def test_rates_one_row_per_angle_pair(tmp_path):
    code, out = run(tmp_path, "grid", "rates", *FAST, "--theta", "0", "0.5", "--phi", "0", "1", "2")
    assert code == EXIT_OK
    assert len(read_csv(out)) == 6


def test_csv_reproducible_and_worker_invariant(tmp_path):
    args = ["rates", *FAST, "--theta", "0.3", "--phi", "1.1"]
    _, first = run(tmp_path, "a", *args)
    _, second = run(tmp_path, "b", *args)
    _, threaded = run(tmp_path, "c", *args, "--workers", "4")
    assert without_wall_time(read_csv(first)) == without_wall_time(read_csv(second))
    assert without_wall_time(read_csv(first)) == without_wall_time(read_csv(threaded))


def test_degrees_flag_matches_radians(tmp_path):
    _, deg = run(tmp_path, "deg", "rates", *FAST, "--theta", "45", "--phi", "0", "--degrees")
    _, rad = run(tmp_path, "rad", "rates", *FAST, "--theta", str(np.pi / 4), "--phi", "0")
    for a, b in zip(read_csv(deg), read_csv(rad)):
        for column in ("theta", "p_a", "p_b", "p_ab", "p_ab_err", "p_ab_analytic"):
            assert float(a[column]) == pytest.approx(float(b[column]), rel=1e-12, abs=1e-15)


def test_zero_d_gives_zero_rates():
    config = RunConfig(d_re=0.0, n_samples=5000, n_batches=10, theta=(0.0, 1.0))
    _, rows = cmd_rates(config)
    for row in rows:
        assert row["p_a"] == 0.0
        assert row["p_b"] == 0.0
        assert row["p_ab"] == 0.0
        assert row["p_ab_analytic"] == 0.0


def test_scan_flat_zeros_at_zero_d():
    _, rows = cmd_scan(RunConfig(d_re=0.0, n_samples=5000, n_batches=10, n_points=4))
    assert len(rows) == 4
    assert all(row["p_ab"] == 0.0 for row in rows)
    assert rows[0]["fit_c"] == 0.0


def test_scan_grid_and_symmetry():
    columns, rows = cmd_scan(RunConfig(n_samples=100_000, n_batches=50, n_points=8))
    assert "fit_c" in columns
    deltas = [row["delta"] for row in rows]
    assert deltas[0] == 0.0
    assert deltas[-1] == pytest.approx(np.pi)
    for low, high in zip(rows, reversed(rows)):
        combined = np.hypot(low["p_ab_err"], high["p_ab_err"])
        assert abs(low["p_ab"] - high["p_ab"]) <= 5 * combined + 1e-15
    assert rows[0]["fit_c"] == pytest.approx(0.005, rel=0.2)


@pytest.mark.slow
def test_scan_acceptance_run():
    _, rows = cmd_scan(RunConfig())
    for row in rows:
        assert abs(row["p_ab"] - row["p_ab_analytic"]) <= 5 * row["p_ab_err"] + 1e-15
    assert abs(rows[0]["fit_c"] - 0.005) <= 5 * rows[0]["fit_c_err"]


def test_bell_sources_and_summary():
    summary = io.StringIO()
    columns, rows = cmd_bell(RunConfig(d_re=0.2, n_samples=100_000, n_batches=50), summary=summary)
    assert columns[: len(BELL_COLUMNS)] == BELL_COLUMNS
    by_source = {row["source"]: row for row in rows}
    assert set(by_source) == {"predicted", "analytic", "monte_carlo", "fock"}
    assert by_source["predicted"]["ratio"] == pytest.approx((1 + np.sqrt(2)) / 2, abs=1e-9)
    assert by_source["analytic"]["ratio"] == pytest.approx((1 + np.sqrt(2)) / 2, abs=1e-9)
    assert by_source["predicted"]["convention"] == "predicted"
    assert by_source["predicted"]["lhs"] == pytest.approx(by_source["analytic"]["lhs"], rel=1e-12)
    assert by_source["fock"]["convention"] == "hilbert_normalized"
    assert by_source["monte_carlo"]["violated"]
    text = summary.getvalue()
    assert "(3 se)" in text
    assert "0.828427" in text


def test_bell_below_efficiency_threshold():
    summary = io.StringIO()
    _, rows = cmd_bell(RunConfig(eta_a=0.8, eta_b=0.8, n_samples=5000, n_batches=10), summary=summary)
    predicted = next(r for r in rows if r["source"] == "predicted")
    assert not predicted["violated"]
    assert not predicted["efficiency_violation_possible"]
    assert "impossible" in summary.getvalue()


def test_oracle_default_passes():
    _, rows = cmd_oracle(RunConfig(n_samples=1000, n_batches=10))
    failed = [r["check"] for r in rows if not r["passed"]]
    assert failed == []
    by_name = {r["check"]: r for r in rows}
    assert by_name["word_expectations"]["deviation"] < 1e-10
    assert by_name["ode_closed_form"]["deviation"] < 1e-3
    assert by_name["ode_order"]["deviation"] <= 0.2


def test_oracle_exit_codes(tmp_path):
    code, out = run(tmp_path, "oracle", "oracle")
    assert code == EXIT_OK
    assert {row["passed"] for row in read_csv(out)} == {"true"}
    code, _ = run(tmp_path, "oracle2", "oracle", "--cutoff", "2")
    assert code == EXIT_CONFIG


def test_oracle_failure_exit_code(tmp_path, monkeypatch):
    from wwspdc import runner

    monkeypatch.setattr(runner, "closed_form_coefficients", lambda C: (0j, 0j))
    code, out = run(tmp_path, "bad", "oracle")
    assert code == EXIT_ORACLE
    rows = {row["check"]: row for row in read_csv(out)}
    assert rows["ode_closed_form"]["passed"] == "false"
    assert rows["ode_exact"]["passed"] == "true"


def test_load_config(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("[run]\nd_re = 0.05\ntheta = [0.0, 0.5]\nconvention = \"hilbert_normalized\"\n")
    assert load_config(path) == {"d_re": 0.05, "theta": [0.0, 0.5], "convention": "hilbert_normalized"}


@pytest.mark.parametrize(
    "text",
    [
        "[run]\nbogus = 1\n",
        "[model]\nname = \"x\"\n",
        "[run]\nd_re = \n",
    ],
)
def test_load_config_errors(tmp_path, text):
    path = tmp_path / "bad.toml"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_config(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.toml")
    assert main(["rates", "--config", str(tmp_path / "nope.toml")]) == EXIT_CONFIG


def test_flags_override_config_file(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("[run]\nd_re = 0.05\nseed = 7\n")
    args = argparse.Namespace(config=path, d_re=0.02, seed=None)
    config = resolve_config(args)
    assert config.d_re == 0.02
    assert config.seed == 7


def test_default_config_used_when_present(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("[run]\nn_points = 5\n")
    args = argparse.Namespace(config=None)
    assert resolve_config(args, default_config=path).n_points == 5
    assert resolve_config(args, default_config=tmp_path / "absent.toml").n_points == 8


@pytest.mark.parametrize(
    "values,error",
    [
        ({"d_re": 1.5}, DomainError),
        ({"n_batches": 1}, ConfigError),
        ({"eta_a": 1.2}, DomainError),
        ({"convention": "other"}, ConfigError),
        ({"seed": 1.5}, ConfigError),
        ({"theta": []}, ConfigError),
        ({"degrees": "yes"}, ConfigError),
        ({"cutoff": 1}, ConfigError),
    ],
)
def test_run_config_validation(values, error):
    with pytest.raises(error):
        RunConfig(**values)


@pytest.mark.parametrize("toml", ["[run]\nd_re = 1.5\n", "[run]\nn_batches = 1\n", "[run]\nunknown = 2\n"])
def test_config_errors_exit_code(tmp_path, toml):
    path = tmp_path / "run.toml"
    path.write_text(toml)
    assert main(["rates", "--config", str(path)]) == EXIT_CONFIG


def test_map_c_to_d_and_flags():
    config = RunConfig(c_re=0.1, map_c_to_d=True, d_re=0.5, zpf_floor=0.25)
    assert config.D == pytest.approx(0.1 / 1.005)
    assert config.flags() == ["mapped_from_c", "clamped_exploratory"]
    assert "large_d" in RunConfig(d_re=0.3).flags()


def test_clamped_rates_flagged():
    _, rows = cmd_rates(RunConfig(zpf_floor=0.0, n_samples=5000, n_batches=10))
    assert rows[0]["flags"] == "clamped_exploratory"


def test_format_value_and_write_csv():
    assert format_value(True) == "true"
    assert format_value(np.bool_(False)) == "false"
    assert format_value(3) == "3"
    assert format_value(1 / 3) == "0.333333333333"
    assert format_value(np.float64(0.005)) == "0.005"
    out = io.StringIO()
    write_csv(["a", "b"], [{"a": 1, "b": 0.5}], out)
    assert out.getvalue() == "a,b\n1,0.5\n"


def test_k_follows_d_unless_set():
    assert RunConfig(d_re=0.2).k == pytest.approx(0.04)
    assert RunConfig(d_re=0.2, convention="hilbert_normalized").k == pytest.approx(0.08)
    assert RunConfig(d_re=0.2, k_scale=3.0).k == 3.0
    assert RunConfig(d_re=0.0).k == 1.0
    with pytest.raises(ConfigError):
        RunConfig(k_scale=0.0)
