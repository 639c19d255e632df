#!/usr/bin/env python3
"""
ww-spdc: Weyl-Wigner stochastic model of SPDC polarization entanglement

Subcommands: rates, scan, bell, oracle. Defaults come from config.toml next
to this file; see `python cli.py <command> --help`.

Requires: pip install -r requirements.txt
"""
import sys
from pathlib import Path

from wwspdc.runner import main

DEFAULT_CONFIG = Path(__file__).parent / "config.toml"


if __name__ == '__main__':
    sys.exit(main(default_config=DEFAULT_CONFIG))
