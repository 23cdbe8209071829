"""
The formula α_S(x⃗, y⃗) defining the input/output function of a program.

Loops are expressed through a sequence code w of the visited states: the
first element is x⃗, the i-th is y⃗, consecutive elements are related by the
body's α, and the guard holds before the last element and fails at it.
Decoded tuples are introduced by bounded existential variables, since a
decoded element is not a term of the language.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from . import coding
from . import syntax as s
from .exceptions import DimensionError
from .interp import check_program_vars

logger = logging.getLogger(__name__)


class FreshSupply:
    """Hands out variables above every index seen so far."""

    def __init__(self, *nodes: s.AnyNode | s.Var | Sequence[s.Var], floor: int = 0) -> None:
        self.top = max(max(s.used_indices(*nodes), default=-1) + 1, floor)

    def take(self, count: int) -> list[s.Var]:
        result = [s.Var(self.top + k) for k in range(count)]
        self.top += count
        return result

    def reserve(self, node: s.AnyNode) -> None:
        self.top = max(self.top, max(node.indices, default=-1) + 1)

    def avoid(self) -> frozenset[int]:
        """An index set making coding helpers pick variables at or above top."""
        return frozenset({self.top - 1}) if self.top else frozenset()

    def element_tuple(self, w: s.Var, j: s.Var | s.Expr, us: Sequence[s.Var]) -> s.Formula:
        formula = coding.element_tuple_formula(w, j, us, self.avoid())
        self.reserve(formula)
        return formula


def guard_at(test: s.BExpr, xs: Sequence[s.Var], at: Sequence[s.Var]) -> s.Formula:
    """The guard b(at/xs) as a formula."""
    return s.formula_of(s.substitute_bexpr(test, s.renaming(xs, at)))


@dataclass(frozen=True)
class AlphaResult:
    formula: s.Formula
    in_vars: tuple[s.Var, ...]
    out_vars: tuple[s.Var, ...]


def _alpha(
    prog: s.Stmt,
    xs: Sequence[s.Var],
    ins: Sequence[s.Var],
    outs: Sequence[s.Var],
    supply: FreshSupply,
) -> s.Formula:
    if isinstance(prog, s.Assign):
        value = s.substitute_expr(prog.expr, s.renaming(xs, ins))
        parts = [
            s.Atom(s.Eq(s.Variable(y), value if x == prog.var else s.Variable(x_in)))
            for x, x_in, y in zip(xs, ins, outs)
        ]
        return s.conj(parts)
    if isinstance(prog, s.Seq):
        middle = supply.take(len(xs))
        first = _alpha(prog.first, xs, ins, middle, supply)
        second = _alpha(prog.second, xs, middle, outs, supply)
        return s.exists_all(middle, s.And(first, second))
    if isinstance(prog, s.If):
        cond = guard_at(prog.cond, xs, ins)
        then = _alpha(prog.then, xs, ins, outs, supply)
        orelse = _alpha(prog.orelse, xs, ins, outs, supply)
        return s.Or(s.And(cond, then), s.And(s.Not(cond), orelse))
    if isinstance(prog, s.While):
        return _alpha_loop(prog, xs, ins, outs, supply)
    raise TypeError(f"Not a program: {prog!r}")


def _alpha_loop(
    prog: s.While,
    xs: Sequence[s.Var],
    ins: Sequence[s.Var],
    outs: Sequence[s.Var],
    supply: FreshSupply,
) -> s.Formula:
    n = len(xs)
    i, w, j = supply.take(3)
    us = supply.take(n)
    vs = supply.take(n)
    below_code = s.Add(s.Variable(w), s.One())
    next_j = s.Add(s.Variable(j), s.One())

    step = s.conj(
        [
            supply.element_tuple(w, j, us),
            supply.element_tuple(w, next_j, vs),
            guard_at(prog.cond, xs, us),
            _alpha(prog.body, xs, us, vs, supply),
        ]
    )
    step = s.bounded_exists_all(us, below_code, s.bounded_exists_all(vs, below_code, step))
    run = s.conj(
        [
            supply.element_tuple(w, s.Zero(), ins),
            s.BoundedForall(j, s.Variable(i), step),
            supply.element_tuple(w, i, outs),
        ]
    )
    exits = s.Not(guard_at(prog.cond, xs, outs))
    return s.And(s.Exists(i, s.Exists(w, run)), exits)


def _check_lists(prog: s.Stmt, xs: Sequence[s.Var], ys: Sequence[s.Var]) -> None:
    check_program_vars(prog, xs)
    if len(xs) != len(ys):
        raise DimensionError(f"{len(xs)} input variables but {len(ys)} output variables")
    if len(set(ys)) != len(ys):
        raise DimensionError(f"Output variables {[v.name for v in ys]} have duplicates")
    shared = set(xs) & set(ys)
    if shared:
        names = ", ".join(v.name for v in sorted(shared))
        raise DimensionError(f"Input and output variables overlap: {names}")


def alpha(prog: s.Stmt, xs: Sequence[s.Var], ys: Sequence[s.Var]) -> AlphaResult:
    """
    Build α_S(x⃗, y⃗).

    Args:
        prog: The program S.
        xs: Input variables; must contain every program variable.
        ys: Output variables, disjoint from xs and of the same length.

    Raises:
        DimensionError: If the variable lists do not fit the program.
    """
    _check_lists(prog, xs, ys)
    supply = FreshSupply(prog, xs, ys)
    formula = _alpha(prog, xs, xs, ys, supply)
    logger.debug("Built α for %d-place program, formula size %d", len(xs), formula.size)
    return AlphaResult(formula, tuple(xs), tuple(ys))


def alpha_component(
    prog: s.Stmt, xs: Sequence[s.Var], index: int, y: s.Var | None = None
) -> AlphaResult:
    """
    The projection α_S^(index)(x⃗, y): every output slot except `index` (1-based)
    is existentially quantified.
    """
    n = len(xs)
    if not 1 <= index <= n:
        raise DimensionError(f"Component index must lie in 1..{n}, got {index}")
    supply = FreshSupply(prog, xs, *([y] if y is not None else []))
    ys = supply.take(n)
    if y is not None:
        ys[index - 1] = y
    result = alpha(prog, xs, ys)
    others = [v for k, v in enumerate(ys) if k != index - 1]
    return AlphaResult(s.exists_all(others, result.formula), tuple(xs), (ys[index - 1],))


def is_sigma1(formula: s.Formula) -> bool:
    """True when every universal quantifier, counting polarity, is bounded."""
    return not s.unbounded_universals(formula)
