"""Stderr logging setup for the CLI.

Library modules only ever call `logging.getLogger(__name__)`; the level is
decided here, from flags first and then from `SATFORGE_LOG`.
"""

from __future__ import annotations

import logging
import os
import sys

LOG_ENV = "SATFORGE_LOG"

LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warn": logging.WARNING,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}


def resolve_level(verbosity: int = 0) -> int:
    """Map `-v`/`-q` counts (positive/negative) or the env var to a level."""
    if verbosity >= 2:
        return logging.DEBUG
    if verbosity == 1:
        return logging.INFO
    if verbosity < 0:
        return logging.ERROR
    raw = os.environ.get(LOG_ENV, "").strip().lower()
    return LEVELS.get(raw, logging.WARNING)


def init_logging(verbosity: int = 0) -> None:
    root = logging.getLogger("satforge")
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("[%(levelname)s %(name)s] %(message)s"))
    root.addHandler(handler)
    root.setLevel(resolve_level(verbosity))
    root.propagate = False
