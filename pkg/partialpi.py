#!/usr/bin/env python3
"""
Launcher for the partial Pi-property command line
"""

from src.cli.main import main

if __name__ == "__main__":
    raise SystemExit(main())
