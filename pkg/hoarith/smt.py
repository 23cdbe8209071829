"""
SMT-LIB v2 export of consequence obligations.

Naturals are encoded as integers: the closure variables of an obligation
become declared constants with ``(>= x 0)`` assertions, and every inner
quantifier is relativized to nonnegative values. The negated obligation is
asserted, so an ``unsat`` answer from a solver means the obligation holds.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from pathlib import Path

from pysmt.exceptions import PysmtException
from pysmt.fnode import FNode
from pysmt.shortcuts import (
    GE,
    LT,
    And,
    Equals,
    Exists,
    ForAll,
    Iff,
    Implies,
    Int,
    Not,
    Or,
    Plus,
    Symbol,
    Times,
)
from pysmt.smtlib.printers import to_smtlib
from pysmt.typing import INT

from . import syntax as s
from .exceptions import ExportError
from .hoare import Obligation

logger = logging.getLogger(__name__)

LOGIC = "NIA"


def _symbol(v: s.Var) -> FNode:
    return Symbol(v.name, INT)


def _natural(v: s.Var) -> FNode:
    return GE(_symbol(v), Int(0))


def term_to_pysmt(expr: s.Expr) -> FNode:
    if isinstance(expr, s.Zero):
        return Int(0)
    if isinstance(expr, s.One):
        return Int(1)
    if isinstance(expr, s.Numeral):
        return Int(expr.value)
    if isinstance(expr, s.Variable):
        return _symbol(expr.var)
    if isinstance(expr, s.Add):
        return Plus(term_to_pysmt(expr.left), term_to_pysmt(expr.right))
    if isinstance(expr, s.Mul):
        return Times(term_to_pysmt(expr.left), term_to_pysmt(expr.right))
    raise TypeError(f"Not a term: {expr!r}")


def formula_to_pysmt(formula: s.Formula) -> FNode:
    """Translate a formula; quantified variables range over nonnegative integers."""
    try:
        return _formula(formula)
    except PysmtException as e:
        logger.error("SMT-LIB export error: %s", e)
        raise ExportError(message=str(e)) from e


def _test(test: s.BExpr) -> FNode:
    if isinstance(test, s.Less):
        return LT(term_to_pysmt(test.left), term_to_pysmt(test.right))
    if isinstance(test, s.Eq):
        return Equals(term_to_pysmt(test.left), term_to_pysmt(test.right))
    return _formula(s.formula_of(test))


def _formula(formula: s.Formula) -> FNode:
    if isinstance(formula, s.Atom):
        return _test(formula.test)
    if isinstance(formula, s.Not):
        return Not(_formula(formula.arg))
    if isinstance(formula, s.Imp):
        return Implies(_formula(formula.left), _formula(formula.right))
    if isinstance(formula, s.And):
        return And(_formula(formula.left), _formula(formula.right))
    if isinstance(formula, s.Or):
        return Or(_formula(formula.left), _formula(formula.right))
    if isinstance(formula, s.Iff):
        return Iff(_formula(formula.left), _formula(formula.right))
    if isinstance(formula, s.Forall):
        guard = _natural(formula.var)
        return ForAll([_symbol(formula.var)], Implies(guard, _formula(formula.body)))
    if isinstance(formula, s.Exists):
        return Exists([_symbol(formula.var)], And(_natural(formula.var), _formula(formula.body)))
    if isinstance(formula, (s.BoundedForall, s.BoundedExists)):
        v = _symbol(formula.var)
        guard = And(_natural(formula.var), LT(v, term_to_pysmt(formula.bound)))
        body = _formula(formula.body)
        if isinstance(formula, s.BoundedForall):
            return ForAll([v], Implies(guard, body))
        return Exists([v], And(guard, body))
    raise TypeError(f"Not a formula: {formula!r}")


def _open_closure(formula: s.Formula) -> tuple[list[s.Var], s.Formula]:
    """Peel the outer universal quantifiers off a closed obligation."""
    closure: list[s.Var] = []
    while isinstance(formula, s.Forall) and formula.var not in closure:
        closure.append(formula.var)
        formula = formula.body
    return closure, formula


def obligation_to_smtlib(obligation: Obligation | s.Formula, comment: str | None = None) -> str:
    """
    Render one obligation as a self-contained SMT-LIB v2 script.

    Raises:
        ExportError: If pysmt rejects the translated formula.
    """
    if isinstance(obligation, Obligation):
        formula = obligation.formula
        comment = comment or f"{obligation.side} obligation at {obligation.where}"
    else:
        formula = obligation
    closure, body = _open_closure(formula)
    for v in sorted(body.fv - set(closure)):
        closure.append(v)
    try:
        negated = to_smtlib(Not(_formula(body)), daggify=False)
        guards = [to_smtlib(_natural(v), daggify=False) for v in closure]
    except PysmtException as e:
        logger.error("SMT-LIB export error: %s", e)
        raise ExportError(message=str(e)) from e

    lines = []
    if comment:
        lines.extend(f"; {line}" for line in comment.splitlines())
    lines.append(f"(set-logic {LOGIC})")
    lines.extend(f"(declare-fun {v.name} () Int)" for v in closure)
    lines.extend(f"(assert {guard})" for guard in guards)
    lines.append(f"(assert {negated})")
    lines.append("(check-sat)")
    lines.append("(exit)")
    return "\n".join(lines) + "\n"


def export_obligations(obligations: Iterable[Obligation], directory: Path) -> list[Path]:
    """Write one ``.smt2`` file per obligation, numbered in tree order."""
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for number, obligation in enumerate(obligations, start=1):
        path = directory / f"obligation-{number:03d}.smt2"
        path.write_text(obligation_to_smtlib(obligation), encoding="utf-8")
        written.append(path)
    logger.info("Exported %d obligations to %s", len(written), directory)
    return written
