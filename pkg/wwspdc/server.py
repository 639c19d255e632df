#!/usr/bin/env python3
"""
MCP Server for the Weyl-Wigner SPDC model

Exposes rate estimation, Clauser-Horne evaluation, coincidence scans and the
oracle cross-checks as MCP tools. Tool arguments use the same keys as the
[run] table of config.toml.
"""
import io
import json
from typing import Any

from mcp.server import Server
from mcp.server.stdio import stdio_server
from mcp.types import TextContent, Tool

from .base import SimulationError
from .runner import CONFIG_KEYS, RunConfig, cmd_bell, cmd_rates, cmd_scan, run_oracle_checks

# Monte Carlo sizes for tool calls unless the caller asks for more
DEFAULT_TOOL_SAMPLES = 200_000

_CONFIG_PROPERTIES = {
    "d_re": {"type": "number", "description": "Real part of D (default 0.1)"},
    "d_im": {"type": "number", "description": "Imaginary part of D (default 0)"},
    "c_re": {"type": "number", "description": "Real part of the pump coupling C"},
    "c_im": {"type": "number", "description": "Imaginary part of the pump coupling C"},
    "map_c_to_d": {"type": "boolean", "description": "Derive D from C"},
    "theta": {"type": "array", "items": {"type": "number"}, "description": "Alice analyzer angle(s)"},
    "phi": {"type": "array", "items": {"type": "number"}, "description": "Bob analyzer angle(s)"},
    "degrees": {"type": "boolean", "description": "Angles in degrees (default radians)"},
    "n_samples": {"type": "integer", "description": f"Vacuum samples (default {DEFAULT_TOOL_SAMPLES})"},
    "n_batches": {"type": "integer", "description": "Batches for standard errors (default 100)"},
    "seed": {"type": "integer", "description": "RNG seed"},
    "convention": {
        "type": "string",
        "enum": ["hilbert_normalized", "stochastic_model"],
        "description": "Rate normalization (default stochastic_model)",
    },
    "eta_a": {"type": "number", "description": "Alice detection efficiency"},
    "eta_b": {"type": "number", "description": "Bob detection efficiency"},
    "cutoff": {"type": "integer", "description": "Fock cutoff per mode"},
    "ode_steps": {"type": "integer", "description": "RK4 steps for the ODE checks"},
    "n_points": {"type": "integer", "description": "Scan points"},
    "k_scale": {"type": "number", "description": "Scale K of the ideal predicted rates (default: from D)"},
}


def _config_from_arguments(arguments: dict[str, Any]) -> RunConfig:
    values = {k: v for k, v in arguments.items() if k in CONFIG_KEYS}
    values.setdefault("n_samples", DEFAULT_TOOL_SAMPLES)
    return RunConfig(**values)


def _rows_summary(rows: list[dict], keys: list[str]) -> str:
    return json.dumps([{k: row[k] for k in keys if k in row} for row in rows], indent=2, default=str)


# Create the MCP server
server = Server("wwspdc")


@server.list_tools()
async def list_tools() -> list[Tool]:
    """List available tools."""
    schema = {"type": "object", "properties": _CONFIG_PROPERTIES, "required": []}
    return [
        Tool(
            name="compute_rates",
            description="Monte Carlo and analytic single/coincidence detection rates for each (theta, phi)",
            inputSchema=schema,
        ),
        Tool(
            name="evaluate_bell",
            description="Clauser-Horne left/right sides and margin at the standard setting for every rate source",
            inputSchema=schema,
        ),
        Tool(
            name="scan_coincidence",
            description="Coincidence rate across theta - phi in [0, pi] with a fitted cos^2 amplitude",
            inputSchema=schema,
        ),
        Tool(
            name="run_oracle_checks",
            description="Cross-check Weyl symbols, Fock-space matrices, closed forms and the SPDC ODE",
            inputSchema=schema,
        ),
    ]


@server.call_tool()
async def call_tool(name: str, arguments: dict[str, Any]) -> list[TextContent]:
    """Handle tool calls."""
    arguments = arguments or {}

    try:
        config = _config_from_arguments(arguments)

        if name == "compute_rates":
            _, rows = cmd_rates(config)
            keys = ["theta", "phi", "p_a", "p_a_err", "p_b", "p_b_err", "p_ab", "p_ab_err", "p_ab_analytic", "flags"]
            return [TextContent(type="text", text=_rows_summary(rows, keys))]

        elif name == "evaluate_bell":
            summary = io.StringIO()
            _, rows = cmd_bell(config, summary=summary)
            keys = ["source", "lhs", "rhs", "margin", "margin_err", "ratio", "violated", "efficiency_violation_possible"]
            return [TextContent(type="text", text=summary.getvalue() + "\n" + _rows_summary(rows, keys))]

        elif name == "scan_coincidence":
            _, rows = cmd_scan(config)
            keys = ["delta", "p_ab", "p_ab_err", "p_ab_analytic"]
            fit = f"cos^2 amplitude: {rows[0]['fit_c']:.6g} +- {rows[0]['fit_c_err']:.2g}\n"
            return [TextContent(type="text", text=fit + _rows_summary(rows, keys))]

        elif name == "run_oracle_checks":
            checks = run_oracle_checks(config)
            lines = ["| check | passed | deviation | tolerance |", "|---|---|---|---|"]
            for c in checks:
                lines.append(f"| {c.name} | {'yes' if c.passed else 'NO'} | {c.deviation:.3e} | {c.tolerance:.1e} |")
            return [TextContent(type="text", text="\n".join(lines))]

        else:
            return [TextContent(type="text", text=f"Unknown tool: {name}")]

    except SimulationError as e:
        return [TextContent(type="text", text=f"Error: {e}")]
    except Exception as e:
        return [TextContent(type="text", text=f"Error: {str(e)}")]


async def main():
    """Run the MCP server using stdio transport."""
    async with stdio_server() as (read_stream, write_stream):
        await server.run(
            read_stream,
            write_stream,
            server.create_initialization_options()
        )


if __name__ == "__main__":
    import asyncio
    asyncio.run(main())
