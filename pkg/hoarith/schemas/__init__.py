"""
JSON schemas for the documents hoarith writes.

- ``derivation``: ``.deriv.json`` files from prove-sp
- ``syntax``: terms, formulas and programs printed with ``--out json``
- ``trace``: each line of ``run --trace``
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

SCHEMA_NAMES = ("derivation", "syntax", "trace")


def load_schema(name: str) -> dict[str, Any]:
    """Read a published schema by name."""
    if name not in SCHEMA_NAMES:
        raise ValueError(f"Unknown schema '{name}', expected one of {', '.join(SCHEMA_NAMES)}")
    text = resources.files(__name__).joinpath(f"{name}.schema.json").read_text(encoding="utf-8")
    schema: dict[str, Any] = json.loads(text)
    return schema
