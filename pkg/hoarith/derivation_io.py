"""
The ``.deriv.json`` derivation format.

A derivation file holds one JSON object::

    {"format": "hoarith-derivation", "version": 1, "variables": {...}, "root": <node>}

``variables`` maps source identifiers to variable indices and is optional;
without it every identifier other than ``x<n>`` is interned afresh on load.

Nodes are tagged by rule name; formulas and terms are stored in the surface
syntax so files stay readable and editable by hand.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from . import syntax as s
from .exceptions import DerivationError, ParseError
from .hoare import AssignAxiom, Comp, Cond, Conseq, Derivation, Iter
from .parser import VarTable, parse_expr, parse_formula, parse_vars
from .printer import Names, expr_text, formula_text

logger = logging.getLogger(__name__)

FORMAT_NAME = "hoarith-derivation"
FORMAT_VERSION = 1


def node_to_dict(d: Derivation, names: Names | None = None) -> dict[str, Any]:
    if isinstance(d, AssignAxiom):
        return {
            "rule": "AssignAxiom",
            "post": formula_text(d.post, names),
            "var": expr_text(s.Variable(d.var), names),
            "expr": expr_text(d.expr, names),
        }
    if isinstance(d, Comp):
        return {
            "rule": "Comp",
            "mid": formula_text(d.mid, names),
            "left": node_to_dict(d.left, names),
            "right": node_to_dict(d.right, names),
        }
    if isinstance(d, Cond):
        return {
            "rule": "Cond",
            "then": node_to_dict(d.then_d, names),
            "else": node_to_dict(d.else_d, names),
        }
    if isinstance(d, Iter):
        return {"rule": "Iter", "body": node_to_dict(d.body_d, names)}
    if isinstance(d, Conseq):
        return {
            "rule": "Conseq",
            "pre": formula_text(d.pre, names),
            "inner": node_to_dict(d.inner, names),
            "post": formula_text(d.post, names),
        }
    raise TypeError(f"Not a derivation: {d!r}")


def _field(data: dict[str, Any], key: str, path: tuple[str, ...]) -> Any:
    if key not in data:
        raise DerivationError(f"Missing field '{key}'", path)
    return data[key]


def _formula(data: dict[str, Any], key: str, table: VarTable, path: tuple[str, ...]) -> s.Formula:
    text = _field(data, key, path)
    try:
        return parse_formula(text, table)
    except ParseError as e:
        raise DerivationError(f"Field '{key}': {e}", path) from e


def node_from_dict(
    data: Any, table: VarTable | None = None, path: tuple[str, ...] = ()
) -> Derivation:
    """
    Rebuild a derivation tree.

    Raises:
        DerivationError: For unknown rules, missing fields or unparsable
            formulas, with the path of the offending node.
    """
    table = table if table is not None else VarTable()
    if not isinstance(data, dict):
        raise DerivationError("Derivation node must be an object", path)
    rule = _field(data, "rule", path)
    if rule == "AssignAxiom":
        try:
            (target,) = parse_vars(_field(data, "var", path), table)
            expr = parse_expr(_field(data, "expr", path), table)
        except (ParseError, ValueError) as e:
            raise DerivationError(f"Bad assignment: {e}", path) from e
        return AssignAxiom(_formula(data, "post", table, path), target, expr)
    if rule == "Comp":
        return Comp(
            node_from_dict(_field(data, "left", path), table, (*path, "left")),
            node_from_dict(_field(data, "right", path), table, (*path, "right")),
            _formula(data, "mid", table, path),
        )
    if rule == "Cond":
        return Cond(
            node_from_dict(_field(data, "then", path), table, (*path, "then")),
            node_from_dict(_field(data, "else", path), table, (*path, "else")),
        )
    if rule == "Iter":
        return Iter(node_from_dict(_field(data, "body", path), table, (*path, "body")))
    if rule == "Conseq":
        return Conseq(
            _formula(data, "pre", table, path),
            node_from_dict(_field(data, "inner", path), table, (*path, "inner")),
            _formula(data, "post", table, path),
        )
    raise DerivationError(f"Unknown rule '{rule}'", path)


def dumps(d: Derivation, names: Names | None = None) -> str:
    document: dict[str, Any] = {"format": FORMAT_NAME, "version": FORMAT_VERSION}
    if names:
        document["variables"] = {name: v.index for v, name in sorted(names.items())}
    document["root"] = node_to_dict(d, names)
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, table: VarTable | None = None) -> Derivation:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        logger.error("Invalid derivation JSON: %s", e)
        raise DerivationError(f"Invalid JSON: {e}") from e
    if not isinstance(document, dict) or document.get("format") != FORMAT_NAME:
        raise DerivationError(f"Not a {FORMAT_NAME} document")
    if document.get("version") != FORMAT_VERSION:
        raise DerivationError(f"Unsupported version {document.get('version')!r}")
    table = table if table is not None else VarTable()
    variables = document.get("variables", {})
    if not isinstance(variables, dict):
        raise DerivationError("Field 'variables' must map identifiers to indices")
    try:
        for name, index in variables.items():
            table.declare(name, s.Var(index))
    except (ParseError, TypeError, ValueError) as e:
        raise DerivationError(f"Bad variable table: {e}") from e
    return node_from_dict(document.get("root"), table)


def write_derivation(path: Path, d: Derivation, names: Names | None = None) -> None:
    path.write_text(dumps(d, names), encoding="utf-8")
    logger.info("Wrote derivation to %s", path)


def read_derivation(path: Path, table: VarTable | None = None) -> Derivation:
    return loads(path.read_text(encoding="utf-8"), table)
