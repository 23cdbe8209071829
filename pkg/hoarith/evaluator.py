"""
Sound three-valued evaluation of arithmetic formulas over the naturals.

Atoms, connectives and bounded quantifiers are evaluated exactly. An
unbounded quantifier is searched over 0..bound, so an existential can be
confirmed and a universal refuted, but not the other way round; those cases
come back as ``Verdict.UNKNOWN``.

Existentials are evaluated a block at a time: nested ∃ (and ¬∀) are
flattened into one list of variables and one list of conjuncts, and a
variable fixed by a linear equation ``... + c·v + ... = t`` is computed
instead of searched. A computed value is only a candidate; every conjunct is
still evaluated at it. When only an unbounded search is left and the block
holds a disjunction, each disjunct is searched with the rest of the block
instead.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Optional, Union

from . import coding
from . import syntax as s
from .exceptions import DimensionError
from .interp import State, check_program_vars, eval_expr, holds

logger = logging.getLogger(__name__)


class Verdict(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"

    @classmethod
    def of(cls, value: bool) -> Verdict:
        return cls.TRUE if value else cls.FALSE

    def __invert__(self) -> Verdict:
        if self is Verdict.TRUE:
            return Verdict.FALSE
        if self is Verdict.FALSE:
            return Verdict.TRUE
        return Verdict.UNKNOWN

    def __and__(self, other: Verdict) -> Verdict:
        if Verdict.FALSE in (self, other):
            return Verdict.FALSE
        if Verdict.UNKNOWN in (self, other):
            return Verdict.UNKNOWN
        return Verdict.TRUE

    def __or__(self, other: Verdict) -> Verdict:
        if Verdict.TRUE in (self, other):
            return Verdict.TRUE
        if Verdict.UNKNOWN in (self, other):
            return Verdict.UNKNOWN
        return Verdict.FALSE

    @property
    def exit_code(self) -> int:
        """0 for True, 1 for False, 2 for Unknown."""
        return {Verdict.TRUE: 0, Verdict.FALSE: 1, Verdict.UNKNOWN: 2}[self]

    def __str__(self) -> str:
        return self.value


# -- linear equation solving -------------------------------------------------


def _summands(expr: s.Expr) -> list[s.Expr]:
    if isinstance(expr, s.Add):
        return _summands(expr.left) + _summands(expr.right)
    return [expr]


def _linear(term: s.Expr, v: s.Var) -> bool:
    """True when term is v times a product of v-free factors."""
    if isinstance(term, s.Variable):
        return term.var == v
    if isinstance(term, s.Mul):
        if v in term.left.fv and v not in term.right.fv:
            return _linear(term.left, v)
        if v in term.right.fv and v not in term.left.fv:
            return _linear(term.right, v)
    return False


def _coefficient(term: s.Expr, v: s.Var, env: Mapping[s.Var, int]) -> int:
    if isinstance(term, s.Variable):
        return 1
    assert isinstance(term, s.Mul)
    if v in term.left.fv:
        return _coefficient(term.left, v, env) * eval_expr(term.right, env)
    return eval_expr(term.left, env) * _coefficient(term.right, v, env)


def _split(eq: s.Eq, v: s.Var) -> tuple[list[s.Expr], s.Expr] | None:
    """(summands of the side holding v, the other side) when eq is linear in v."""
    for side, other in ((eq.left, eq.right), (eq.right, eq.left)):
        if v in other.fv:
            continue
        summands = _summands(side)
        holding = [t for t in summands if v in t.fv]
        if len(holding) == 1 and _linear(holding[0], v):
            return summands, other
    return None


def solve_linear(eq: s.Eq, v: s.Var, env: Mapping[s.Var, int]) -> list[int] | None:
    """
    Values of v satisfying eq once every other variable takes its env value.

    Returns None when eq is not of the form ``... + c·v + ... = t``, otherwise
    the (at most one) solution.
    """
    split = _split(eq, v)
    if split is None:
        return None
    summands, other = split
    coefficient = 0
    rest = 0
    for term in summands:
        if v in term.fv:
            coefficient = _coefficient(term, v, env)
        else:
            rest += eval_expr(term, env)
    if coefficient == 0:
        return None
    difference = eval_expr(other, env) - rest
    if difference < 0 or difference % coefficient:
        return []
    return [difference // coefficient]


# -- bounded evaluation ------------------------------------------------------


@dataclass
class _Block:
    """Existential block: variables (with optional strict upper bound) and conjuncts."""

    outer: frozenset[s.Var]
    variables: list[s.Var]
    bounds: dict[s.Var, Optional[s.Expr]]
    items: list[s.Formula]

    def hoistable(self, v: s.Var) -> bool:
        return v not in self.outer and v not in self.bounds

    def add(self, v: s.Var, bound: s.Expr | None) -> None:
        self.variables.append(v)
        self.bounds[v] = bound
        if bound is not None:
            self.items.append(s.Atom(s.Less(s.Variable(v), bound)))

    def absorb(self, formula: s.Formula, positive: bool) -> None:
        stack: list[tuple[s.Formula, bool]] = [(formula, positive)]
        while stack:
            node, pos = stack.pop()
            if isinstance(node, s.Not):
                stack.append((node.arg, not pos))
            elif pos and isinstance(node, s.And):
                stack += [(node.right, True), (node.left, True)]
            elif not pos and isinstance(node, s.Or):
                stack += [(node.right, False), (node.left, False)]
            elif not pos and isinstance(node, s.Imp):
                stack += [(node.right, False), (node.left, True)]
            elif (
                (pos and isinstance(node, s.Exists)) or (not pos and isinstance(node, s.Forall))
            ) and self.hoistable(node.var):
                self.add(node.var, None)
                stack.append((node.body, pos))
            elif (
                (pos and isinstance(node, s.BoundedExists))
                or (not pos and isinstance(node, s.BoundedForall))
            ) and self.hoistable(node.var):
                self.add(node.var, node.bound)
                stack.append((node.body, pos))
            else:
                self.items.append(node if pos else s.Not(node))


class Evaluator:
    """
    Bounded evaluator.

    Attributes:
        bound: Largest value tried for a variable of an unbounded quantifier.
    """

    def __init__(self, bound: int) -> None:
        if bound < 0:
            raise ValueError(f"Search bound must be nonnegative, got {bound}")
        self.bound = bound

    def evaluate(self, formula: s.Formula, env: Mapping[s.Var, int]) -> Verdict:
        if isinstance(formula, s.Atom):
            return Verdict.of(holds(formula.test, env))
        if isinstance(formula, s.Not):
            return ~self.evaluate(formula.arg, env)
        if isinstance(formula, s.And):
            return self._all(s.conjuncts(formula), env)
        if isinstance(formula, s.Or):
            return self._any(_disjuncts(formula), env)
        if isinstance(formula, s.Imp):
            left = self.evaluate(formula.left, env)
            if left is Verdict.FALSE:
                return Verdict.TRUE
            return ~left | self.evaluate(formula.right, env)
        if isinstance(formula, s.Iff):
            left = self.evaluate(formula.left, env)
            right = self.evaluate(formula.right, env)
            if Verdict.UNKNOWN in (left, right):
                return Verdict.UNKNOWN
            return Verdict.of(left == right)
        if isinstance(formula, s.BoundedForall):
            return self._bounded_forall(formula, env)
        if isinstance(formula, (s.Exists, s.BoundedExists)):
            return self._exists(formula, True, env)
        if isinstance(formula, s.Forall):
            return ~self._exists(formula, False, env)
        raise TypeError(f"Not a formula: {formula!r}")

    def _all(self, parts: list[s.Formula], env: Mapping[s.Var, int]) -> Verdict:
        result = Verdict.TRUE
        for part in sorted(parts, key=_cost):
            result = result & self.evaluate(part, env)
            if result is Verdict.FALSE:
                return result
        return result

    def _any(self, parts: list[s.Formula], env: Mapping[s.Var, int]) -> Verdict:
        result = Verdict.FALSE
        for part in sorted(parts, key=_cost):
            result = result | self.evaluate(part, env)
            if result is Verdict.TRUE:
                return result
        return result

    def _bounded_forall(self, formula: s.BoundedForall, env: Mapping[s.Var, int]) -> Verdict:
        limit = eval_expr(formula.bound, env)
        result = Verdict.TRUE
        inner = dict(env)
        for value in range(limit):
            inner[formula.var] = value
            result = result & self.evaluate(formula.body, inner)
            if result is Verdict.FALSE:
                return result
        return result

    def _exists(
        self, formula: s.Quantifier, positive: bool, env: Mapping[s.Var, int]
    ) -> Verdict:
        """∃ over the block rooted at formula; for a ∀ root, ∃ of the negated body."""
        block = _Block(formula.fv, [], {}, [])
        bound = formula.bound if isinstance(formula, (s.BoundedForall, s.BoundedExists)) else None
        block.add(formula.var, bound)
        block.absorb(formula.body, positive)
        block.items.sort(key=_cost)
        inner = {k: val for k, val in env.items() if k not in block.bounds}
        return self._search(block, inner, frozenset(block.variables), block.items)

    def _search(
        self,
        block: _Block,
        env: dict[s.Var, int],
        unassigned: frozenset[s.Var],
        items: list[s.Formula],
    ) -> Verdict:
        partial = False
        pending = []
        for item in items:
            if item.fv & unassigned:
                pending.append(item)
                continue
            verdict = self.evaluate(item, env)
            if verdict is Verdict.FALSE:
                return verdict
            partial = partial or verdict is Verdict.UNKNOWN
        if not pending:
            return Verdict.UNKNOWN if partial else Verdict.TRUE

        live = [v for v in block.variables if v in unassigned and any(v in p.fv for p in pending)]
        live_set = frozenset(live)
        var, candidates, exhaustive = self._choose(block, env, live, live_set, pending)
        if not exhaustive:
            disjunction = next((p for p in pending if isinstance(p, s.Or)), None)
            if disjunction is not None:
                verdict = self._case_split(block, env, live_set, pending, disjunction)
                return Verdict.UNKNOWN if partial and verdict is Verdict.TRUE else verdict
        rest = live_set - {var}
        undecided = not exhaustive
        for value in candidates:
            env[var] = value
            verdict = self._search(block, env, rest, pending)
            if verdict is Verdict.TRUE:
                del env[var]
                return Verdict.UNKNOWN if partial else Verdict.TRUE
            undecided = undecided or verdict is Verdict.UNKNOWN
        env.pop(var, None)
        return Verdict.UNKNOWN if undecided else Verdict.FALSE

    def _case_split(
        self,
        block: _Block,
        env: dict[s.Var, int],
        unassigned: frozenset[s.Var],
        pending: list[s.Formula],
        disjunction: s.Or,
    ) -> Verdict:
        """∃ distributes over ∨: search each disjunct with the rest of the block."""
        others = [p for p in pending if p is not disjunction]
        result = Verdict.FALSE
        for part in _disjuncts(disjunction):
            branch = _Block(block.outer, list(block.variables), dict(block.bounds), [])
            branch.absorb(part, True)
            added = frozenset(branch.variables[len(block.variables) :])
            items = sorted(others + branch.items, key=_cost)
            result = result | self._search(branch, env, unassigned | added, items)
            if result is Verdict.TRUE:
                break
        return result

    def _choose(
        self,
        block: _Block,
        env: dict[s.Var, int],
        live: list[s.Var],
        live_set: frozenset[s.Var],
        pending: list[s.Formula],
    ) -> tuple[s.Var, Iterable[int], bool]:
        equations = [
            p.test for p in pending if isinstance(p, s.Atom) and isinstance(p.test, s.Eq)
        ]
        for eq in equations:
            unknowns = eq.fv & live_set
            if len(unknowns) == 1:
                (var,) = unknowns
                solutions = solve_linear(eq, var, env)
                if solutions is not None:
                    return var, solutions, True

        ready = []
        for var in live:
            bound = block.bounds[var]
            if bound is not None and not (bound.fv & live_set):
                enables = sum(
                    1
                    for eq in equations
                    if var in eq.fv
                    and len(eq.fv & live_set) == 2
                    and _split(eq, next(iter(eq.fv & live_set - {var}))) is not None
                )
                ready.append((-enables, eval_expr(bound, env), var))
        if ready:
            _, limit, var = min(ready, key=lambda entry: (entry[0], entry[1]))
            return var, range(limit), True

        unbounded = [v for v in live if block.bounds[v] is None] or live
        logger.debug("Searching %s over 0..%d without exhausting it", unbounded[0], self.bound)
        return unbounded[0], range(self.bound + 1), False


def _disjuncts(formula: s.Formula) -> list[s.Formula]:
    if isinstance(formula, s.Or):
        return _disjuncts(formula.left) + _disjuncts(formula.right)
    return [formula]


def _cost(formula: s.Formula) -> tuple[int, int]:
    return (0 if formula.quantifier_free else 1, formula.size)


def eval_formula(formula: s.Formula, w: Mapping[s.Var, int], bound: int) -> Verdict:
    """
    Evaluate a formula in a state.

    Args:
        formula: Formula to evaluate; free variables missing from `w` read as 0.
        w: State or plain mapping.
        bound: Search bound for unbounded quantifiers.

    Returns:
        TRUE or FALSE only when that is the truth in the naturals.
    """
    env = {v: w.get(v, 0) for v in formula.fv}
    return Evaluator(bound).evaluate(formula, env)


# -- witness checking --------------------------------------------------------


@dataclass(frozen=True)
class AssignWitness:
    pass


@dataclass(frozen=True)
class SeqWitness:
    middle: tuple[int, ...]
    first: Witness
    second: Witness


@dataclass(frozen=True)
class IfWitness:
    branch: bool
    taken: Witness


@dataclass(frozen=True)
class WhileWitness:
    """The iteration count i, the code w of the visited states and one subtree per step."""

    iterations: int
    code: int
    steps: tuple[Witness, ...]


Witness = Union[AssignWitness, SeqWitness, IfWitness, WhileWitness]
WitnessTree = Witness


class _OutOfFuel(Exception):
    pass


class _WitnessBuilder:
    def __init__(self, xs: Sequence[s.Var], fuel: int) -> None:
        self.xs = list(xs)
        self.fuel = fuel
        self.used = 0

    def state(self, values: tuple[int, ...]) -> State:
        return State.of(self.xs, values)

    def build(self, prog: s.Stmt, ins: tuple[int, ...]) -> tuple[Witness, tuple[int, ...]]:
        if isinstance(prog, s.Assign):
            outs = self.state(ins).update(prog.var, eval_expr(prog.expr, self.state(ins)))
            return AssignWitness(), outs.project(self.xs)
        if isinstance(prog, s.Seq):
            first, middle = self.build(prog.first, ins)
            second, outs = self.build(prog.second, middle)
            return SeqWitness(middle, first, second), outs
        if isinstance(prog, s.If):
            branch = holds(prog.cond, self.state(ins))
            taken, outs = self.build(prog.then if branch else prog.orelse, ins)
            return IfWitness(branch, taken), outs
        if isinstance(prog, s.While):
            rows = [ins]
            steps = []
            current = ins
            while holds(prog.cond, self.state(current)):
                if self.used >= self.fuel:
                    raise _OutOfFuel
                self.used += 1
                step, current = self.build(prog.body, current)
                steps.append(step)
                rows.append(current)
            code = coding.encode_states(rows)
            return WhileWitness(len(steps), code, tuple(steps)), current
        raise TypeError(f"Not a program: {prog!r}")


def verify_witness(
    prog: s.Stmt,
    xs: Sequence[s.Var],
    ins: Sequence[int],
    outs: Sequence[int],
    witness: Witness,
) -> bool:
    """
    Check with exact arithmetic that the witness proves α_S(ins, outs).

    Loop nodes are checked by decoding their sequence code: element 0 is the
    input tuple, element i the output tuple, the guard holds at every
    element before i and fails at i, and each consecutive pair is proved by
    the matching step subtree.
    """
    ins, outs = tuple(ins), tuple(outs)
    n = len(xs)

    def state(values: tuple[int, ...]) -> State:
        return State.of(xs, values)

    if isinstance(prog, s.Assign) and isinstance(witness, AssignWitness):
        expected = state(ins).update(prog.var, eval_expr(prog.expr, state(ins)))
        return expected.project(xs) == outs
    if isinstance(prog, s.Seq) and isinstance(witness, SeqWitness):
        return len(witness.middle) == n and (
            verify_witness(prog.first, xs, ins, witness.middle, witness.first)
            and verify_witness(prog.second, xs, witness.middle, outs, witness.second)
        )
    if isinstance(prog, s.If) and isinstance(witness, IfWitness):
        if witness.branch != holds(prog.cond, state(ins)):
            return False
        branch = prog.then if witness.branch else prog.orelse
        return verify_witness(branch, xs, ins, outs, witness.taken)
    if isinstance(prog, s.While) and isinstance(witness, WhileWitness):
        count = witness.iterations
        if len(witness.steps) != count:
            return False
        rows = [tuple(coding.elem_tuple(witness.code, j, n)) for j in range(count + 1)]
        if rows[0] != ins or rows[count] != outs or holds(prog.cond, state(outs)):
            return False
        return all(
            holds(prog.cond, state(rows[j]))
            and verify_witness(prog.body, xs, rows[j], rows[j + 1], witness.steps[j])
            for j in range(count)
        )
    return False


def check_alpha_witness(
    prog: s.Stmt,
    xs: Sequence[s.Var],
    args: Sequence[int],
    outs: Sequence[int],
    fuel: int,
) -> tuple[Verdict, Witness | None]:
    """
    Decide α_S(args, outs) by constructing and checking explicit witnesses.

    Returns:
        (TRUE, tree) when the program maps args to outs within fuel,
        (FALSE, None) when it terminates elsewhere, (UNKNOWN, None) when
        fuel runs out.
    """
    check_program_vars(prog, xs)
    if not (len(args) == len(outs) == len(xs)):
        raise DimensionError(
            f"Expected {len(xs)} inputs and outputs, got {len(args)} and {len(outs)}"
        )
    builder = _WitnessBuilder(xs, fuel)
    try:
        witness, result = builder.build(prog, tuple(args))
    except _OutOfFuel:
        logger.debug("Fuel of %d exhausted while building a witness", fuel)
        return Verdict.UNKNOWN, None
    if result != tuple(outs):
        return Verdict.FALSE, None
    if not verify_witness(prog, xs, args, outs, witness):
        logger.error("Constructed witness for %s failed verification", prog)
        return Verdict.FALSE, None
    return Verdict.TRUE, witness


def max_witness_value(witness: Witness) -> int:
    """Largest number stored in a witness tree (0 for loop-free programs without middles)."""
    if isinstance(witness, AssignWitness):
        return 0
    if isinstance(witness, SeqWitness):
        inner = max(max_witness_value(witness.first), max_witness_value(witness.second))
        return max(inner, *witness.middle) if witness.middle else inner
    if isinstance(witness, IfWitness):
        return max_witness_value(witness.taken)
    values = [witness.code, witness.iterations, *map(max_witness_value, witness.steps)]
    return max(values)
