"""Error types shared by every satforge module.

Each class carries the process exit code the CLI maps it to, so the
command-line contract (0 ok, 2 params, 3 io/parse, 4 discrepancy) lives next
to the errors instead of being re-derived in every subcommand.
"""

from __future__ import annotations

from typing import Any


class SatforgeError(Exception):
    exit_code = 1


class InvalidArgumentError(SatforgeError, ValueError):
    """A precondition of an operation was violated."""

    exit_code = 2


class InvalidSetError(InvalidArgumentError):
    """A connection set was rejected at the SymmetricSet boundary."""


class UnsupportedParametersError(SatforgeError):
    """A builder was asked for parameters its construction does not cover."""

    exit_code = 2

    def __init__(self, family: str, message: str) -> None:
        super().__init__(f"{family}: {message}")
        self.family = family


class GraphFormatError(SatforgeError):
    exit_code = 3


class ConfigError(SatforgeError):
    exit_code = 3


class ConstructionDiscrepancyError(SatforgeError):
    """A builder's output failed the property it is claimed to have."""

    exit_code = 4

    def __init__(self, message: str, verdict: Any = None) -> None:
        super().__init__(message)
        self.verdict = verdict


class TableDiscrepancyError(SatforgeError):
    exit_code = 4

    def __init__(self, message: str, artifact: Any = None) -> None:
        super().__init__(message)
        self.artifact = artifact
