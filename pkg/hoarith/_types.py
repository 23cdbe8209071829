"""
Type definitions shared across hoarith modules.

Protocols here describe the small structural interfaces the evaluator and
the interpreter rely on, so that plain dictionaries and ``State`` objects can
be used interchangeably as valuations.
"""

from __future__ import annotations

from collections.abc import Iterator
from typing import TYPE_CHECKING, Protocol, Union

if TYPE_CHECKING:
    from .syntax import Var


class Valuation(Protocol):
    """Read access to variable values; missing variables read as 0."""

    def get(self, key: Var, default: int = ..., /) -> int: ...

    def __iter__(self) -> Iterator[Var]: ...


# Node path inside a derivation tree, e.g. ("left", "inner").
NodePath = tuple[str, ...]

# Plain JSON values as produced by the exporters.
JsonValue = Union[None, bool, int, str, list["JsonValue"], dict[str, "JsonValue"]]
