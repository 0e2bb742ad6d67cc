"""
Command-line interface for satforge.
"""

from __future__ import annotations

import sys

from satforge.cli import main

if __name__ == "__main__":
    sys.exit(main())
