#!/usr/bin/env python3
"""
Main entry point for the percentile-based indicator CLI

    python main.py audit --input publications.csv --approach all
"""

import sys

from src.interface.cli.app import main


if __name__ == "__main__":
    sys.exit(main())
