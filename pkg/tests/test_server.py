import asyncio
import json

from wwspdc.server import call_tool, list_tools


def test_tools_listed():
    tools = asyncio.run(list_tools())
    assert {t.name for t in tools} == {"compute_rates", "evaluate_bell", "scan_coincidence", "run_oracle_checks"}


def test_compute_rates_tool():
    result = asyncio.run(call_tool("compute_rates", {"n_samples": 20000, "n_batches": 20, "theta": [0.0, 0.5]}))
    rows = json.loads(result[0].text)
    assert len(rows) == 2
    assert abs(rows[0]["p_ab_analytic"] - 0.005) < 1e-12


def test_oracle_tool_reports_table():
    result = asyncio.run(call_tool("run_oracle_checks", {}))
    text = result[0].text
    assert "| ordering_table | yes |" in text
    assert "NO" not in text


def test_errors_reported_as_text():
    result = asyncio.run(call_tool("compute_rates", {"d_re": 2.0}))
    assert result[0].text.startswith("Error:")
    result = asyncio.run(call_tool("nonexistent", {}))
    assert "Unknown tool" in result[0].text
