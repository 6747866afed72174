#!/usr/bin/env python3
"""
Main entry point for the permstat toolkit.

This script provides a convenient way to run the permstat
command-line interface from the project root.
"""

import sys
from src.main import main

if __name__ == "__main__":
    sys.exit(main())
