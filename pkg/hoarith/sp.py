"""
Strongest postconditions SP(p, S) as formulas of arithmetic.

Each construction step draws its fresh variables above every index of its
own inputs (and above an optional floor), so building SP for a part of a
program always yields exactly the subformula the whole construction uses.
The derivation generator in ``hoarith.hoare`` relies on that.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass

from . import syntax as s
from .arith_sem import FreshSupply, alpha, guard_at
from .evaluator import Verdict, Witness, check_alpha_witness, eval_formula
from .interp import OutOfFuel, State, check_program_vars, exec_program

logger = logging.getLogger(__name__)

# Formulas above this many nodes get a warning; evaluation cost grows with size.
SIZE_WARNING = 20000


@dataclass(frozen=True)
class SpResult:
    formula: s.Formula
    vars: tuple[s.Var, ...]


def sp_assign(
    pre: s.Formula, prog: s.Assign, xs: Sequence[s.Var], floor: int = 0
) -> s.Formula:
    """∃u⃗ (p(u⃗/x⃗) ∧ x_i = e(u⃗/x⃗) ∧ ⋀_{j≠i} x_j = u_j)."""
    supply = FreshSupply(pre, prog, xs, floor=floor)
    us = supply.take(len(xs))
    back = s.renaming(xs, us)
    parts = [s.substitute(pre, back)]
    for x, u in zip(xs, us):
        value = s.substitute_expr(prog.expr, back) if x == prog.var else s.Variable(u)
        parts.append(s.Atom(s.Eq(s.Variable(x), value)))
    return s.exists_all(us, s.conj(parts))


def invariant(
    pre: s.Formula, loop: s.While, xs: Sequence[s.Var], floor: int = 0
) -> s.Formula:
    """
    INV(p, b, S0): some run of the loop from a p-state reaches x⃗.

    ∃i ∃w (p((w)_0) ∧ ∀j<i SP(x⃗ = (w)_j ∧ b, S0)((w)_{j+1}) ∧ x⃗ = (w)_i),
    with every decoded tuple bound by an existential below w+1.
    """
    n = len(xs)
    supply = FreshSupply(pre, loop, xs, floor=floor)
    i, w, j = supply.take(3)
    starts = supply.take(n)
    us = supply.take(n)
    vs = supply.take(n)
    below_code = s.Add(s.Variable(w), s.One())

    first = supply.element_tuple(w, s.Zero(), starts)
    init = s.bounded_exists_all(
        starts, below_code, s.And(first, s.substitute(pre, s.renaming(xs, starts)))
    )

    step_pre = s.And(s.equalities(xs, us), s.formula_of(loop.cond))
    step_post = _sp(step_pre, loop.body, xs, supply.top)
    supply.reserve(step_post)
    step = s.conj(
        [
            supply.element_tuple(w, j, us),
            supply.element_tuple(w, s.Add(s.Variable(j), s.One()), vs),
            s.substitute(step_post, s.renaming(xs, vs)),
        ]
    )
    step = s.bounded_exists_all(us, below_code, s.bounded_exists_all(vs, below_code, step))
    last = supply.element_tuple(w, i, xs)
    body = s.conj([init, s.BoundedForall(j, s.Variable(i), step), last])
    return s.Exists(i, s.Exists(w, body))


def _sp(pre: s.Formula, prog: s.Stmt, xs: Sequence[s.Var], floor: int) -> s.Formula:
    if isinstance(prog, s.Assign):
        return sp_assign(pre, prog, xs, floor)
    if isinstance(prog, s.Seq):
        return _sp(_sp(pre, prog.first, xs, floor), prog.second, xs, floor)
    if isinstance(prog, s.If):
        cond = s.formula_of(prog.cond)
        then = _sp(s.And(pre, cond), prog.then, xs, floor)
        orelse = _sp(s.And(pre, s.Not(cond)), prog.orelse, xs, floor)
        return s.Or(then, orelse)
    if isinstance(prog, s.While):
        return s.And(invariant(pre, prog, xs, floor), s.Not(s.formula_of(prog.cond)))
    raise TypeError(f"Not a program: {prog!r}")


def sp(pre: s.Formula, prog: s.Stmt, xs: Sequence[s.Var], floor: int = 0) -> SpResult:
    """
    Build SP(p, S)(x⃗).

    Args:
        pre: Precondition p; may mention variables outside xs as parameters.
        prog: The program S.
        xs: Program variables the postcondition speaks about.
        floor: Lowest index fresh variables may use.

    Raises:
        DimensionError: If xs misses a program variable or has duplicates.
    """
    check_program_vars(prog, xs)
    formula = _sp(pre, prog, xs, floor)
    if formula.size > SIZE_WARNING:
        logger.warning("Strongest postcondition has %d nodes", formula.size)
    return SpResult(formula, tuple(xs))


def separation_rhs(pre: s.Formula, prog: s.Stmt, xs: Sequence[s.Var]) -> s.Formula:
    """∃u⃗ (p(u⃗/x⃗) ∧ α_S(u⃗/x⃗, x⃗/y⃗))."""
    check_program_vars(prog, xs)
    supply = FreshSupply(pre, prog, xs)
    ys = supply.take(len(xs))
    relation = alpha(prog, xs, ys).formula
    supply.reserve(relation)
    us = supply.take(len(xs))
    sigma = {**s.renaming(xs, us), **s.renaming(ys, xs)}
    body = s.And(s.substitute(pre, s.renaming(xs, us)), s.substitute(relation, sigma))
    return s.exists_all(us, body)


def separation_witness(
    pre: s.Formula,
    prog: s.Stmt,
    xs: Sequence[s.Var],
    state: State,
    box: int,
    fuel: int,
    bound: int,
) -> tuple[State, Witness] | None:
    """
    Find a p-state in the box whose run ends at ``state``.

    A hit makes the separated form ∃u⃗(p(u⃗/x⃗) ∧ α_S(u⃗/x⃗, x⃗/y⃗)) true at
    ``state`` exactly: p is decided by bounded evaluation and α_S by a
    verified witness. A miss decides nothing, since pre-states outside the
    box are never tried.

    Returns:
        The pre-state and the witness tree, or None.
    """
    check_program_vars(prog, xs)
    outs = state.project(xs)
    for start in box_states(xs, box):
        env = dict(state)
        env.update((x, start[x]) for x in xs)
        if eval_formula(pre, env, bound) is not Verdict.TRUE:
            continue
        verdict, witness = check_alpha_witness(prog, xs, start.project(xs), outs, fuel)
        if verdict is Verdict.TRUE and witness is not None:
            logger.debug("Pre-state %r reaches %r", start, state)
            return State(env), witness
    return None


@dataclass(frozen=True)
class Reachable:
    """
    Final states of runs from p-states in a box.

    ``complete`` is False when p was undecided at some initial state or a
    run ran out of fuel, in which case ``states`` may miss reachable states.
    """

    states: frozenset[tuple[int, ...]]
    complete: bool


def box_states(xs: Sequence[s.Var], box: int) -> list[State]:
    """Every state over xs with values in 0..box."""
    return [State.of(xs, values) for values in itertools.product(range(box + 1), repeat=len(xs))]


def reachable_states(
    pre: s.Formula,
    prog: s.Stmt,
    xs: Sequence[s.Var],
    box: int,
    fuel: int,
    bound: int,
) -> Reachable:
    """Brute-force sp over the naturals restricted to initial states in the box."""
    check_program_vars(prog, xs)
    finals = set()
    complete = True
    for start in box_states(xs, box):
        verdict = eval_formula(pre, start, bound)
        if verdict is Verdict.FALSE:
            continue
        if verdict is Verdict.UNKNOWN:
            complete = False
            continue
        outcome = exec_program(prog, start, fuel)
        if isinstance(outcome, OutOfFuel):
            complete = False
            continue
        finals.add(outcome.final.project(xs))
    return Reachable(frozenset(finals), complete)
