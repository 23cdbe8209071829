"""
Runtime configuration: fuel, search bound, sweep box and output format.
"""

from __future__ import annotations

import dataclasses
import logging
import os
from dataclasses import dataclass
from typing import Any

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "sexpr", "json", "smt2")

DEFAULT_FUEL = 10000
DEFAULT_BOUND = 64
DEFAULT_BOX = 16
MAX_BOUND = 4096


def _get_default_bound() -> int:
    """
    Get the default quantifier search bound from the environment.

    Reads HOARITH_DEFAULT_BOUND and validates it.
    Returns the built-in default of 64 if not set or invalid.
    Caps at 4096.
    """
    env_value = os.environ.get("HOARITH_DEFAULT_BOUND")

    if env_value is None:
        return DEFAULT_BOUND

    try:
        bound = int(env_value)
    except ValueError:
        logger.warning(
            "Invalid HOARITH_DEFAULT_BOUND value '%s', using default %d",
            env_value,
            DEFAULT_BOUND,
        )
        return DEFAULT_BOUND

    if bound < 0:
        logger.warning(
            "HOARITH_DEFAULT_BOUND must not be negative, using default %d",
            DEFAULT_BOUND,
        )
        return DEFAULT_BOUND

    if bound > MAX_BOUND:
        logger.warning(
            "HOARITH_DEFAULT_BOUND capped at %d (was %d)",
            MAX_BOUND,
            bound,
        )
        return MAX_BOUND

    return bound


@dataclass(frozen=True)
class Config:
    """
    Knobs shared by the checking commands.

    Attributes:
        fuel: Loop-body entries the interpreter may perform before giving up.
        bound: Largest value tried for an unbounded quantifier.
        box: Largest value per variable in exhaustive state sweeps.
        output_format: One of ``text``, ``sexpr``, ``json``, ``smt2``.
    """

    fuel: int = DEFAULT_FUEL
    bound: int = DEFAULT_BOUND
    box: int = DEFAULT_BOX
    output_format: str = "text"

    def __post_init__(self) -> None:
        for name in ("fuel", "bound", "box"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ConfigError(f"{name} must be a nonnegative integer, got {value!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"Unknown output format '{self.output_format}', "
                f"expected one of {', '.join(OUTPUT_FORMATS)}"
            )

    @classmethod
    def from_env(cls) -> Config:
        """Build the default configuration, honouring HOARITH_DEFAULT_BOUND."""
        return cls(bound=_get_default_bound())

    def with_overrides(self, **overrides: Any) -> Config:
        """Return a copy with the given non-None fields replaced."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return dataclasses.replace(self, **changes)
