"""
Tests for hoarith.nonstd_order.
"""

from fractions import Fraction

import pytest

from hoarith.exceptions import ParseError
from hoarith.nonstd_order import (
    NonStd,
    Std,
    compare,
    format_kelem,
    k_less,
    k_predecessor,
    k_successor,
    parse_kelem,
)


class TestOrder:
    """Tests for k_less and compare."""

    @pytest.mark.parametrize(
        "u, v, expected",
        [
            (Std(3), Std(5), True),
            (Std(5), Std(3), False),
            (Std(10**9), NonStd(Fraction(-7), -100), True),
            (NonStd(Fraction(0), 5), Std(0), False),
            (NonStd(Fraction(1, 2), 100), NonStd(Fraction(2, 3), -100), True),
            (NonStd(Fraction(1, 2), 1), NonStd(Fraction(1, 2), 2), True),
            (NonStd(Fraction(1, 2), 2), NonStd(Fraction(1, 2), 2), False),
        ],
    )
    def test_k_less(self, u, v, expected):
        """Standard part first, then ℚ lexicographically before ℤ."""
        assert k_less(u, v) is expected

    def test_compare(self):
        """Three-way comparison."""
        assert compare(Std(1), Std(2)) == -1
        assert compare(NonStd(Fraction(1), 0), Std(2)) == 1
        assert compare(NonStd(Fraction(2, 4), 0), NonStd(Fraction(1, 2), 0)) == 0

    def test_rich_comparisons(self):
        """Elements sort with the built-in operators."""
        elems = [NonStd(Fraction(1), 0), Std(4), NonStd(Fraction(0), 7), Std(0)]
        assert sorted(elems) == [Std(0), Std(4), NonStd(Fraction(0), 7), NonStd(Fraction(1), 0)]
        assert Std(3) <= Std(3)
        assert NonStd(Fraction(0), 0) > Std(99)

    def test_no_comparison_with_int(self):
        """Plain integers are not order elements."""
        with pytest.raises(TypeError):
            Std(1) < 2  # noqa: B015

    def test_standard_is_natural(self):
        """Negative standard elements do not exist."""
        with pytest.raises(ValueError):
            Std(-1)


class TestSuccessor:
    """Tests for k_successor and k_predecessor."""

    def test_standard(self):
        """Standard elements step by one; 0 has no predecessor."""
        assert k_successor(Std(4)) == Std(5)
        assert k_predecessor(Std(4)) == Std(3)
        assert k_predecessor(Std(0)) is None

    def test_nonstandard(self):
        """Nonstandard elements move within their ℤ copy."""
        u = NonStd(Fraction(1, 3), 0)
        assert k_successor(u) == NonStd(Fraction(1, 3), 1)
        assert k_predecessor(u) == NonStd(Fraction(1, 3), -1)
        assert k_less(u, k_successor(u))
        assert k_less(k_predecessor(u), u)

    def test_no_element_in_between(self):
        """Nothing lies strictly between an element and its successor."""
        u = NonStd(Fraction(1, 3), 0)
        candidates = [NonStd(Fraction(1, 3) + Fraction(1, 10**6), -(10**6)), Std(10**6)]
        for w in candidates:
            assert not (k_less(u, w) and k_less(w, k_successor(u)))


class TestText:
    """Tests for parse_kelem and format_kelem."""

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("7", Std(7)),
            (" 0 ", Std(0)),
            ("(1/2, -3)", NonStd(Fraction(1, 2), -3)),
            ("(-4, 0)", NonStd(Fraction(-4), 0)),
            ("( 2 / 4 , 1 )", NonStd(Fraction(1, 2), 1)),
        ],
    )
    def test_parse(self, text, expected):
        """Naturals and (p/q, a) pairs."""
        assert parse_kelem(text) == expected

    def test_format(self):
        """Fractions are always written with a denominator."""
        assert format_kelem(Std(7)) == "7"
        assert format_kelem(NonStd(Fraction(-4), 2)) == "(-4/1, 2)"
        assert format_kelem(NonStd(Fraction(2, 4), -1)) == "(1/2, -1)"

    def test_zero_denominator(self):
        """A zero denominator is a parse error."""
        with pytest.raises(ParseError, match="Zero denominator"):
            parse_kelem("(1/0, 2)")

    @pytest.mark.parametrize("text", ["-1", "(1/2)", "omega", "(a, 1)"])
    def test_not_an_element(self, text):
        """Anything else is rejected."""
        with pytest.raises(ParseError, match="Not an order element"):
            parse_kelem(text)
