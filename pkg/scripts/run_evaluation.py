#!/usr/bin/env python3
"""Run the golden-corpus evaluation and print the full report.

Extra arguments are passed through to the `evaluate` subcommand, e.g.::

    python scripts/run_evaluation.py --variant lower
"""

import sys
from pathlib import Path

from authorfield.cli import main

if __name__ == "__main__":
    corpus = Path(__file__).resolve().parents[1] / "corpus"
    sys.exit(main(["evaluate", str(corpus), *sys.argv[1:]]))
