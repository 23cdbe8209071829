"""
Concrete syntax for programs, formulas, terms and states.

Grammar summary (loosest binding first)::

    stmt    := simple (";" stmt)?
    simple  := NAME ":=" expr | if G then stmt else stmt fi
             | while G do stmt od | "(" stmt ")"
    formula := forall v. formula | exists v. formula
             | a <-> b | a -> b | a \\/ b | a /\\ b | ~a
             | e < e | e = e | e <= e | true | false | "(" formula ")"
    expr    := expr + expr | expr * expr | NUMBER | NAME | "(" expr ")"

``->``, ``\\/`` and ``/\\`` associate to the right; a quantifier extends as
far to the right as possible. ``forall v. v < t -> φ`` and
``exists v. v < t /\\ φ`` (``v`` not in ``t``) are read as bounded
quantifiers. Program guards G are formulas without quantifiers.

Variables are written ``x0, x1, ...``; any other identifier is interned by a
``VarTable`` and assigned the next index above every explicit one.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Iterable
from functools import lru_cache
from typing import Any

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import (
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
    UnexpectedToken,
    VisitError,
)

from . import syntax as s
from .exceptions import HoarithError, ParseError

logger = logging.getLogger(__name__)

GRAMMAR = r"""
program: stmt
sentence: formula
lone_expr: expr
state: (binding ("," binding)*)?
varlist: (NAME ("," NAME)*)?
binding: NAME "=" NUMBER

?stmt: simple
     | simple ";"
     | simple ";" stmt                              -> seq
?simple: NAME ":=" expr                             -> assign
       | "if" formula "then" stmt "else" stmt "fi"  -> if_stmt
       | "while" formula "do" stmt "od"             -> while_stmt
       | "(" stmt ")"

?formula: imp
        | imp ("<->" | "↔") imp                     -> iff
?imp: disj
    | disj ("->" | "→") imp                         -> imp
?disj: conj
     | conj ("\\/" | "∨") disj                      -> or_
?conj: neg
     | neg ("/\\" | "∧") conj                       -> and_
?neg: ("~" | "¬") neg                               -> not_
    | ("forall" | "∀") NAME "." formula             -> forall
    | ("exists" | "∃") NAME "." formula             -> exists
    | atom
?atom: expr "<" expr                                -> less
     | expr "=" expr                                -> eq
     | expr ("<=" | "≤") expr                       -> leq
     | "true"                                       -> true
     | "false"                                      -> false
     | "(" formula ")"
?expr: prod
     | expr "+" prod                                -> add
?prod: factor
     | prod ("*" | "·") factor                      -> mul
?factor: NUMBER                                     -> number
       | NAME                                       -> name
       | "(" expr ")"

NAME: /[A-Za-z_][A-Za-z0-9_]*/
NUMBER: /[0-9]+/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_EXPLICIT = re.compile(r"x([0-9]+)")
_EXPLICIT_IN_TEXT = re.compile(r"(?<![A-Za-z0-9_])x([0-9]+)(?![A-Za-z0-9_])")


class VarTable:
    """
    Maps surface identifiers to variables.

    ``x<k>`` always denotes Var(k). Other identifiers get fresh indices in
    order of first occurrence, above every index reserved so far. A table
    can be shared by several parse calls so that a program and the formulas
    about it agree on their variables.
    """

    def __init__(self) -> None:
        self._interned: dict[str, s.Var] = {}
        self._reserved: set[int] = set()

    def reserve(self, indices: Iterable[int]) -> None:
        self._reserved.update(indices)

    def declare(self, name: str, v: s.Var) -> None:
        """Bind an identifier to a fixed variable, as recorded in a derivation file."""
        bound = self._interned.get(name)
        if bound is not None and bound != v:
            raise ParseError(f"Identifier '{name}' is already bound to {bound.name}")
        self._interned[name] = v
        self._reserved.add(v.index)

    def lookup(self, name: str) -> s.Var:
        match = _EXPLICIT.fullmatch(name)
        if match:
            index = int(match.group(1))
            self._reserved.add(index)
            return s.Var(index)
        if name not in self._interned:
            taken = self._reserved | {v.index for v in self._interned.values()}
            self._interned[name] = s.Var(max(taken, default=0) + 1)
            logger.debug("Interned variable '%s' as %s", name, self._interned[name])
        return self._interned[name]

    @property
    def names(self) -> dict[s.Var, str]:
        """Reverse map for interned identifiers, usable by the printer."""
        return {v: name for name, v in self._interned.items()}

    def __contains__(self, name: str) -> bool:
        return name in self._interned or _EXPLICIT.fullmatch(name) is not None


@v_args(inline=True)
class _ToAst(Transformer[Token, Any]):
    """Turns the lark parse tree into syntax nodes."""

    def __init__(self, table: VarTable) -> None:
        super().__init__()
        self.table = table

    # entry points
    def program(self, stmt: s.Stmt) -> s.Stmt:
        return stmt

    def sentence(self, formula: s.Formula) -> s.Formula:
        return formula

    def lone_expr(self, expr: s.Expr) -> s.Expr:
        return expr

    def state(self, *bindings: tuple[s.Var, int]) -> dict[s.Var, int]:
        result: dict[s.Var, int] = {}
        for v, value in bindings:
            if v in result:
                raise ParseError(f"Variable {v} bound twice in state")
            result[v] = value
        return result

    def varlist(self, *names: Token) -> list[s.Var]:
        return [self.table.lookup(str(name)) for name in names]

    def binding(self, name: Token, value: Token) -> tuple[s.Var, int]:
        return self.table.lookup(str(name)), int(value)

    # programs
    def assign(self, name: Token, expr: s.Expr) -> s.Stmt:
        return s.Assign(self.table.lookup(str(name)), expr)

    def seq(self, first: s.Stmt, second: s.Stmt) -> s.Stmt:
        return s.Seq(first, second)

    def if_stmt(self, cond: s.Formula, then: s.Stmt, orelse: s.Stmt) -> s.Stmt:
        return s.If(_guard(cond), then, orelse)

    def while_stmt(self, cond: s.Formula, body: s.Stmt) -> s.Stmt:
        return s.While(_guard(cond), body)

    # formulas
    def iff(self, left: s.Formula, right: s.Formula) -> s.Formula:
        return s.Iff(left, right)

    def imp(self, left: s.Formula, right: s.Formula) -> s.Formula:
        return s.Imp(left, right)

    def or_(self, left: s.Formula, right: s.Formula) -> s.Formula:
        return s.Or(left, right)

    def and_(self, left: s.Formula, right: s.Formula) -> s.Formula:
        return s.And(left, right)

    def not_(self, arg: s.Formula) -> s.Formula:
        return s.Not(arg)

    def forall(self, name: Token, body: s.Formula) -> s.Formula:
        v = self.table.lookup(str(name))
        if isinstance(body, s.Imp):
            bound = _bound_of(v, body.left)
            if bound is not None:
                return s.BoundedForall(v, bound, body.right)
        return s.Forall(v, body)

    def exists(self, name: Token, body: s.Formula) -> s.Formula:
        v = self.table.lookup(str(name))
        if isinstance(body, s.And):
            bound = _bound_of(v, body.left)
            if bound is not None:
                return s.BoundedExists(v, bound, body.right)
        return s.Exists(v, body)

    def less(self, left: s.Expr, right: s.Expr) -> s.Formula:
        return s.Atom(s.Less(left, right))

    def eq(self, left: s.Expr, right: s.Expr) -> s.Formula:
        return s.Atom(s.Eq(left, right))

    def leq(self, left: s.Expr, right: s.Expr) -> s.Formula:
        return s.Or(s.Atom(s.Less(left, right)), s.Atom(s.Eq(left, right)))

    def true(self) -> s.Formula:
        return s.TRUE

    def false(self) -> s.Formula:
        return s.FALSE

    # terms
    def add(self, left: s.Expr, right: s.Expr) -> s.Expr:
        return s.Add(left, right)

    def mul(self, left: s.Expr, right: s.Expr) -> s.Expr:
        return s.Mul(left, right)

    def number(self, token: Token) -> s.Expr:
        return s.numeral(int(token))

    def name(self, token: Token) -> s.Expr:
        return s.Variable(self.table.lookup(str(token)))


def _bound_of(v: s.Var, guard: s.Formula) -> s.Expr | None:
    """t when guard is the atom v < t with v not free in t."""
    if not isinstance(guard, s.Atom) or not isinstance(guard.test, s.Less):
        return None
    test = guard.test
    if test.left != s.Variable(v) or v in test.right.fv:
        return None
    return test.right


def _guard(formula: s.Formula) -> s.BExpr:
    test = s.to_bexpr(formula)
    if test is None:
        raise ParseError("Program guards must not contain quantifiers")
    return test


@lru_cache(maxsize=1)
def _lark() -> Lark:
    return Lark(
        GRAMMAR,
        parser="lalr",
        start=["program", "sentence", "lone_expr", "state", "varlist"],
    )


def _parse(text: str, start: str, table: VarTable | None) -> Any:
    table = table if table is not None else VarTable()
    table.reserve(int(m.group(1)) for m in _EXPLICIT_IN_TEXT.finditer(text))
    try:
        tree = _lark().parse(text, start=start)
        return _ToAst(table).transform(tree)
    except UnexpectedInput as e:
        logger.debug("Could not parse %s: %s", start, e)
        raise _parse_error(e) from e
    except VisitError as e:
        if isinstance(e.orig_exc, HoarithError):
            raise e.orig_exc from e
        raise


def _parse_error(e: UnexpectedInput) -> ParseError:
    if isinstance(e, UnexpectedEOF):
        return ParseError("Unexpected end of input", expected=e.expected)
    line = e.line if e.line > 0 else None
    column = e.column if e.column > 0 else None
    if isinstance(e, UnexpectedToken):
        return ParseError(f"Unexpected token '{e.token}'", line, column, e.expected)
    if isinstance(e, UnexpectedCharacters):
        return ParseError(f"Unexpected character '{e.char}'", line, column, e.allowed or ())
    return ParseError(str(e), line, column)


def parse_program(text: str, table: VarTable | None = None) -> s.Stmt:
    """
    Parse a while-program.

    Args:
        text: Program source, e.g. ``"x1 := 0; while x1 < 3 do x1 := x1 + 1 od"``.
        table: Identifier table shared with other parse calls.

    Raises:
        ParseError: With the line and column of the first offending token.
    """
    result: s.Stmt = _parse(text, "program", table)
    return result


def parse_formula(text: str, table: VarTable | None = None) -> s.Formula:
    """Parse a first-order formula."""
    result: s.Formula = _parse(text, "sentence", table)
    return result


def parse_guard(text: str, table: VarTable | None = None) -> s.BExpr:
    """Parse a quantifier-free guard."""
    return _guard(parse_formula(text, table))


def parse_expr(text: str, table: VarTable | None = None) -> s.Expr:
    result: s.Expr = _parse(text, "lone_expr", table)
    return result


def parse_state(text: str, table: VarTable | None = None) -> dict[s.Var, int]:
    """Parse ``"x1=3, x2=5"`` into a variable assignment."""
    result: dict[s.Var, int] = _parse(text, "state", table)
    return result


def parse_vars(text: str, table: VarTable | None = None) -> list[s.Var]:
    """Parse a comma separated variable list such as ``"x1,x2"``."""
    result: list[s.Var] = _parse(text, "varlist", table)
    return result
