"""
Text, S-expression and JSON renderings of syntax trees.

The text form is the concrete grammar accepted by ``hoarith.parser``;
printing inserts exactly the parentheses that grammar needs, so
``parse(to_text(a)) == a`` for every tree the parser can produce.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Mapping
from typing import Any, Callable

from . import syntax as s
from ._types import JsonValue

# Formula precedence, loosest first.
_QUANT, _IFF, _IMP, _OR, _AND, _NOT, _ATOM = range(7)
# Term precedence.
_ADD, _MUL, _TERM = 1, 2, 3

Names = Mapping[s.Var, str]


def _var_name(v: s.Var, names: Names | None) -> str:
    if names and v in names:
        return names[v]
    return v.name


def _paren(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def _expr_prec(expr: s.Expr) -> int:
    if isinstance(expr, s.Add):
        return _ADD
    if isinstance(expr, s.Mul):
        return _MUL
    return _TERM


def expr_text(expr: s.Expr, names: Names | None = None) -> str:
    if isinstance(expr, s.Zero):
        return "0"
    if isinstance(expr, s.One):
        return "1"
    if isinstance(expr, s.Numeral):
        return str(expr.value)
    if isinstance(expr, s.Variable):
        return _var_name(expr.var, names)
    if isinstance(expr, (s.Add, s.Mul)):
        prec = _expr_prec(expr)
        op = " + " if isinstance(expr, s.Add) else " * "
        left = _paren(expr_text(expr.left, names), _expr_prec(expr.left) < prec)
        right = _paren(expr_text(expr.right, names), _expr_prec(expr.right) <= prec)
        return left + op + right
    raise TypeError(f"Not a term: {expr!r}")


def _bexpr_prec(test: s.BExpr) -> int:
    if isinstance(test, s.BImp):
        return _IMP
    if isinstance(test, s.BOr):
        return _OR
    if isinstance(test, s.BAnd):
        return _AND
    if isinstance(test, s.BNot):
        return _NOT
    return _ATOM


def bexpr_text(test: s.BExpr, names: Names | None = None) -> str:
    if isinstance(test, s.Less):
        return f"{expr_text(test.left, names)} < {expr_text(test.right, names)}"
    if isinstance(test, s.Eq):
        return f"{expr_text(test.left, names)} = {expr_text(test.right, names)}"
    if isinstance(test, s.BNot):
        return "~" + _paren(bexpr_text(test.arg, names), _bexpr_prec(test.arg) < _NOT)
    prec = _bexpr_prec(test)
    op = {s.BImp: " -> ", s.BOr: " \\/ ", s.BAnd: " /\\ "}[type(test)]  # type: ignore[index]
    left_node: s.BExpr = test.left  # type: ignore[attr-defined]
    right_node: s.BExpr = test.right  # type: ignore[attr-defined]
    left = _paren(bexpr_text(left_node, names), _bexpr_prec(left_node) <= prec)
    right = _paren(bexpr_text(right_node, names), _bexpr_prec(right_node) < prec)
    return left + op + right


def _formula_prec(formula: s.Formula) -> int:
    if isinstance(formula, s.QUANTIFIERS):
        return _QUANT
    if isinstance(formula, s.Iff):
        return _IFF
    if isinstance(formula, s.Imp):
        return _IMP
    if isinstance(formula, s.Or):
        return _OR
    if isinstance(formula, s.And):
        return _AND
    if isinstance(formula, s.Not):
        return _NOT
    if isinstance(formula, s.Atom):
        return _bexpr_prec(formula.test)
    raise TypeError(f"Not a formula: {formula!r}")


def formula_text(formula: s.Formula, names: Names | None = None) -> str:
    def sub(node: s.Formula, paren_below: int) -> str:
        return _paren(formula_text(node, names), _formula_prec(node) < paren_below)

    if isinstance(formula, s.Atom):
        return bexpr_text(formula.test, names)
    if isinstance(formula, s.Not):
        return "~" + sub(formula.arg, _NOT)
    if isinstance(formula, s.Iff):
        return f"{sub(formula.left, _IMP)} <-> {sub(formula.right, _IMP)}"
    if isinstance(formula, s.Imp):
        return f"{sub(formula.left, _OR)} -> {sub(formula.right, _IMP)}"
    if isinstance(formula, s.Or):
        return f"{sub(formula.left, _AND)} \\/ {sub(formula.right, _OR)}"
    if isinstance(formula, s.And):
        return f"{sub(formula.left, _NOT)} /\\ {sub(formula.right, _AND)}"
    name = _var_name(formula.var, names)  # type: ignore[attr-defined]
    if isinstance(formula, s.Forall):
        return f"forall {name}. {formula_text(formula.body, names)}"
    if isinstance(formula, s.Exists):
        return f"exists {name}. {formula_text(formula.body, names)}"
    bound = expr_text(formula.bound, names)  # type: ignore[attr-defined]
    if isinstance(formula, s.BoundedForall):
        return f"forall {name}. {name} < {bound} -> {sub(formula.body, _IMP)}"
    if isinstance(formula, s.BoundedExists):
        return f"exists {name}. {name} < {bound} /\\ {sub(formula.body, _AND)}"
    raise TypeError(f"Not a formula: {formula!r}")


def stmt_text(prog: s.Stmt, names: Names | None = None) -> str:
    if isinstance(prog, s.Assign):
        return f"{_var_name(prog.var, names)} := {expr_text(prog.expr, names)}"
    if isinstance(prog, s.Seq):
        first = _paren(stmt_text(prog.first, names), isinstance(prog.first, s.Seq))
        return f"{first}; {stmt_text(prog.second, names)}"
    if isinstance(prog, s.If):
        return (
            f"if {bexpr_text(prog.cond, names)} then {stmt_text(prog.then, names)} "
            f"else {stmt_text(prog.orelse, names)} fi"
        )
    if isinstance(prog, s.While):
        return f"while {bexpr_text(prog.cond, names)} do {stmt_text(prog.body, names)} od"
    raise TypeError(f"Not a program: {prog!r}")


def to_text(node: s.AnyNode, names: Names | None = None) -> str:
    """Render any syntax node in the concrete grammar."""
    if isinstance(node, s.Expr):
        return expr_text(node, names)
    if isinstance(node, s.BExpr):
        return bexpr_text(node, names)
    if isinstance(node, s.Formula):
        return formula_text(node, names)
    if isinstance(node, s.Stmt):
        return stmt_text(node, names)
    raise TypeError(f"Not a syntax node: {node!r}")


# -- S-expressions -----------------------------------------------------------

_SEXPR_HEADS: dict[type, str] = {
    s.Add: "+",
    s.Mul: "*",
    s.Less: "<",
    s.Eq: "=",
    s.BNot: "not",
    s.BImp: "=>",
    s.BAnd: "and",
    s.BOr: "or",
    s.Not: "not",
    s.Imp: "=>",
    s.And: "and",
    s.Or: "or",
    s.Iff: "iff",
    s.Seq: "seq",
    s.Assign: "assign",
    s.If: "if",
    s.While: "while",
}


def to_sexpr(node: s.AnyNode | s.Var) -> str:
    """Render a syntax node as an S-expression."""
    if isinstance(node, s.Var):
        return node.name
    if isinstance(node, s.Zero):
        return "0"
    if isinstance(node, s.One):
        return "1"
    if isinstance(node, s.Numeral):
        return str(node.value)
    if isinstance(node, s.Variable):
        return node.var.name
    if isinstance(node, s.Atom):
        return to_sexpr(node.test)
    if isinstance(node, (s.Forall, s.Exists)):
        head = "forall" if isinstance(node, s.Forall) else "exists"
        return f"({head} ({node.var.name}) {to_sexpr(node.body)})"
    if isinstance(node, (s.BoundedForall, s.BoundedExists)):
        head = "forall-below" if isinstance(node, s.BoundedForall) else "exists-below"
        return f"({head} ({node.var.name} {to_sexpr(node.bound)}) {to_sexpr(node.body)})"
    head = _SEXPR_HEADS.get(type(node))
    if head is None:
        raise TypeError(f"Not a syntax node: {node!r}")
    fields = dataclasses.fields(node)  # type: ignore[arg-type]
    parts = [to_sexpr(getattr(node, f.name)) for f in fields]
    return "(" + " ".join([head, *parts]) + ")"


# -- JSON --------------------------------------------------------------------

_NODE_TYPES: dict[str, type] = {
    cls.__name__: cls
    for cls in (
        s.Zero, s.One, s.Numeral, s.Variable, s.Add, s.Mul,
        s.Less, s.Eq, s.BNot, s.BImp, s.BAnd, s.BOr,
        s.Atom, s.Not, s.Imp, s.And, s.Or, s.Iff,
        s.Forall, s.Exists, s.BoundedForall, s.BoundedExists,
        s.Assign, s.Seq, s.If, s.While,
    )
}  # fmt: skip


def to_json(node: s.AnyNode | s.Var | int) -> JsonValue:
    """Tagged-union JSON: every node becomes ``{"tag": ClassName, field: value, ...}``."""
    if isinstance(node, int):
        return node
    if isinstance(node, s.Var):
        return {"tag": "Var", "index": node.index}
    result: dict[str, JsonValue] = {"tag": type(node).__name__}
    for f in dataclasses.fields(node):  # type: ignore[arg-type]
        result[f.name] = to_json(getattr(node, f.name))
    return result


def from_json(data: Any) -> Any:
    """Inverse of to_json."""
    if isinstance(data, int):
        return data
    if not isinstance(data, dict) or "tag" not in data:
        raise ValueError(f"Not a tagged syntax node: {data!r}")
    tag = data["tag"]
    if tag == "Var":
        return s.Var(int(data["index"]))
    cls: Callable[..., Any] | None = _NODE_TYPES.get(tag)
    if cls is None:
        raise ValueError(f"Unknown node tag '{tag}'")
    kwargs = {key: from_json(value) for key, value in data.items() if key != "tag"}
    return cls(**kwargs)
