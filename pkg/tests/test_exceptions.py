"""
Tests for hoarith.exceptions.
"""

import pytest

from hoarith.exceptions import (
    ConfigError,
    DerivationError,
    DimensionError,
    ExportError,
    HoarithError,
    ParseError,
    VariableClashError,
)


class TestParseError:
    """Tests for ParseError."""

    def test_without_position(self):
        """The message alone."""
        assert str(ParseError("Not an order element: 'x'")) == "Not an order element: 'x'"

    def test_with_position(self):
        """Position and sorted expected tokens are appended."""
        error = ParseError("Unexpected token '*'", 1, 10, ["NUMBER", "NAME"])
        assert str(error) == (
            "Unexpected token '*' at line 1, column 10 (expected one of: NAME, NUMBER)"
        )
        assert error.error_code == "parse"


class TestDerivationError:
    """Tests for DerivationError."""

    def test_path(self):
        """The node path is shown after the message."""
        assert str(DerivationError("Bad middle", ("left", "inner"))) == (
            "Bad middle (at left/inner)"
        )

    def test_root(self):
        """An empty path is the root."""
        assert str(DerivationError("Bad middle")) == "Bad middle (at <root>)"


@pytest.mark.parametrize(
    "error, code",
    [
        (DimensionError("arity"), "dimension"),
        (VariableClashError("clash"), "clash"),
        (DerivationError("rule"), "derivation"),
        (ExportError("pysmt"), "export"),
        (ConfigError("bound"), "config"),
    ],
)
def test_error_codes(error, code):
    """Every error is a HoarithError with its own code."""
    assert isinstance(error, HoarithError)
    assert error.error_code == code
