#!/usr/bin/env python3
"""
Main entry point for the head mouse simulator CLI

Examples:
    python main.py features --mode faithful
    python main.py scenario static --out static.csv
    python main.py noise static.csv --seed 42 --sigma 50 --out noisy.csv
    python main.py simulate noisy.csv --reports reports.txt --path path.txt
    python main.py jitter noisy.csv --from 1000 --to 10000
"""

import sys
import os

# Add the current directory to Python path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from head_mouse.api.cli import main

if __name__ == "__main__":
    main()
