"""
The order type of a countable nonstandard model of arithmetic.

Elements are either standard naturals or pairs (q, a) with q rational and a
integer: every standard element lies below every nonstandard one, and the
nonstandard part is ordered lexicographically, ℚ copies of ℤ. Only the
order is realized; there is no arithmetic on these elements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .exceptions import ParseError


@total_ordering
@dataclass(frozen=True)
class Std:
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"Standard elements are naturals, got {self.n}")

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, (Std, NonStd)):
            return NotImplemented
        return k_less(self, other)


@total_ordering
@dataclass(frozen=True)
class NonStd:
    q: Fraction
    a: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", Fraction(self.q))

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, (Std, NonStd)):
            return NotImplemented
        return k_less(self, other)


KElem = Union[Std, NonStd]


def k_less(u: KElem, v: KElem) -> bool:
    if isinstance(u, Std):
        return not isinstance(v, Std) or u.n < v.n
    if isinstance(v, Std):
        return False
    return (u.q, u.a) < (v.q, v.a)


def k_successor(u: KElem) -> KElem:
    if isinstance(u, Std):
        return Std(u.n + 1)
    return NonStd(u.q, u.a + 1)


def k_predecessor(u: KElem) -> KElem | None:
    """None for Std(0); every other element has an immediate predecessor."""
    if isinstance(u, Std):
        return Std(u.n - 1) if u.n else None
    return NonStd(u.q, u.a - 1)


_NONSTD = re.compile(r"\(\s*(-?\d+)(?:\s*/\s*(\d+))?\s*,\s*(-?\d+)\s*\)")


def parse_kelem(text: str) -> KElem:
    """Parse ``n`` or ``(p/q, a)``; the denominator may be omitted."""
    text = text.strip()
    if text.isdigit():
        return Std(int(text))
    match = _NONSTD.fullmatch(text)
    if match is None:
        raise ParseError(f"Not an order element: '{text}'")
    numerator, denominator, a = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ParseError(f"Zero denominator in '{text}'")
    q = Fraction(int(numerator), int(denominator or 1))
    return NonStd(q, int(a))


def format_kelem(u: KElem) -> str:
    if isinstance(u, Std):
        return str(u.n)
    return f"({u.q.numerator}/{u.q.denominator}, {u.a})"


def compare(u: KElem, v: KElem) -> int:
    """-1, 0 or 1 as u is below, equal to or above v."""
    if k_less(u, v):
        return -1
    return 1 if k_less(v, u) else 0
