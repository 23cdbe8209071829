"""
Exception hierarchy for hoarith.

Library code raises these; only the command line layer turns them into
exit codes.
"""

from __future__ import annotations

from collections.abc import Iterable


class HoarithError(Exception):
    """Base exception for all hoarith errors."""

    def __init__(self, message: str, error_code: str | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.error_code = error_code


class ParseError(HoarithError):
    """
    Raised when program, formula or state text does not match the grammar.

    Attributes:
        line: 1-based line of the offending token, if known.
        column: 1-based column of the offending token, if known.
        expected: Names of the tokens the parser would have accepted.
    """

    def __init__(
        self,
        message: str,
        line: int | None = None,
        column: int | None = None,
        expected: Iterable[str] = (),
    ) -> None:
        super().__init__(message, error_code="parse")
        self.line = line
        self.column = column
        self.expected = frozenset(expected)

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        text = f"{self.message} at line {self.line}, column {self.column}"
        if self.expected:
            text += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        return text


class DimensionError(HoarithError):
    """Raised on arity mismatches, overlapping variable lists or missing program variables."""

    def __init__(self, message: str) -> None:
        super().__init__(message, error_code="dimension")


class VariableClashError(HoarithError):
    """Raised when a defining formula is requested for non-distinct variables."""

    def __init__(self, message: str) -> None:
        super().__init__(message, error_code="clash")


class DerivationError(HoarithError):
    """
    Raised for a malformed derivation tree.

    Attributes:
        path: Node path from the root, e.g. ``("left", "inner")``.
    """

    def __init__(self, message: str, path: tuple[str, ...] = ()) -> None:
        super().__init__(message, error_code="derivation")
        self.path = path

    def __str__(self) -> str:
        where = "/".join(self.path) or "<root>"
        return f"{self.message} (at {where})"


class ExportError(HoarithError):
    """Raised when an obligation cannot be rendered as SMT-LIB."""

    def __init__(self, message: str) -> None:
        super().__init__(message, error_code="export")


class ConfigError(HoarithError):
    """Raised for invalid configuration values."""

    def __init__(self, message: str) -> None:
        super().__init__(message, error_code="config")
