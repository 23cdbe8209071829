"""
Big-step interpreter for while-programs over the natural numbers.

States are total maps with default value 0. Fuel counts loop-body entries
across a whole run, so a divergent program yields ``OutOfFuel`` instead of
hanging.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import Union

from . import syntax as s
from ._types import Valuation
from .exceptions import DimensionError
from .parser import VarTable
from .parser import parse_state as parse_bindings

logger = logging.getLogger(__name__)


class State(Mapping[s.Var, int]):
    """
    Immutable variable assignment in which absent variables read as 0.

    Zero bindings are not stored, so two states are equal exactly when they
    agree on every variable.
    """

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[s.Var, int] | Iterable[tuple[s.Var, int]] = ()) -> None:
        items = values.items() if isinstance(values, Mapping) else values
        stored: dict[s.Var, int] = {}
        for key, value in items:
            if value < 0:
                raise ValueError(f"State values are natural numbers, got {key}={value}")
            if value:
                stored[key] = value
        self._values = stored

    def __getitem__(self, key: s.Var) -> int:
        return self._values.get(key, 0)

    def get(self, key: s.Var, default: int | None = 0) -> int:  # type: ignore[override]
        return self._values.get(key, 0)

    def __contains__(self, key: object) -> bool:
        return key in self._values

    def __iter__(self) -> Iterator[s.Var]:
        return iter(sorted(self._values))

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, State):
            return self._values == other._values
        if isinstance(other, Mapping):
            return self == State(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._values.items()))

    def __repr__(self) -> str:
        return f"State({format_state(self)})"

    def update(self, var: s.Var, value: int) -> State:
        """The state w(value/var)."""
        changed = dict(self._values)
        changed[var] = value
        return State(changed)

    def project(self, variables: Sequence[s.Var]) -> tuple[int, ...]:
        return tuple(self[v] for v in variables)

    @classmethod
    def of(cls, variables: Sequence[s.Var], values: Sequence[int]) -> State:
        if len(variables) != len(values):
            raise DimensionError(
                f"{len(variables)} variables but {len(values)} values"
            )
        return cls(zip(variables, values))


def format_state(state: Mapping[s.Var, int], variables: Sequence[s.Var] | None = None) -> str:
    """Render as ``x1=3 x2=5``; with `variables`, exactly those are listed."""
    keys = list(variables) if variables is not None else sorted(state)
    return " ".join(f"{v.name}={state.get(v, 0)}" for v in keys)


def parse_state(text: str, table: VarTable | None = None) -> State:
    """Parse the CLI state syntax ``x1=3,x2=5`` (bare identifiers go through `table`)."""
    return State(parse_bindings(text, table))


# -- expressions and guards --------------------------------------------------


def eval_expr(expr: s.Expr, w: Valuation) -> int:
    """The value of a term in a state."""
    if isinstance(expr, s.Variable):
        return w.get(expr.var, 0)
    if isinstance(expr, s.Zero):
        return 0
    if isinstance(expr, s.One):
        return 1
    if isinstance(expr, s.Numeral):
        return expr.value
    if isinstance(expr, s.Add):
        return eval_expr(expr.left, w) + eval_expr(expr.right, w)
    if isinstance(expr, s.Mul):
        return eval_expr(expr.left, w) * eval_expr(expr.right, w)
    raise TypeError(f"Not a term: {expr!r}")


def holds(test: s.BExpr, w: Valuation) -> bool:
    """Classical truth of a guard in a state."""
    if isinstance(test, s.Less):
        return eval_expr(test.left, w) < eval_expr(test.right, w)
    if isinstance(test, s.Eq):
        return eval_expr(test.left, w) == eval_expr(test.right, w)
    if isinstance(test, s.BNot):
        return not holds(test.arg, w)
    if isinstance(test, s.BImp):
        return not holds(test.left, w) or holds(test.right, w)
    if isinstance(test, s.BAnd):
        return holds(test.left, w) and holds(test.right, w)
    if isinstance(test, s.BOr):
        return holds(test.left, w) or holds(test.right, w)
    raise TypeError(f"Not a guard: {test!r}")


# -- execution ---------------------------------------------------------------


@dataclass(frozen=True)
class Terminated:
    final: State
    steps: int


@dataclass(frozen=True)
class OutOfFuel:
    """The run needed more loop-body entries than the fuel allowed."""

    fuel: int


ExecOutcome = Union[Terminated, OutOfFuel]


class _FuelExhausted(Exception):
    pass


class _Machine:
    def __init__(self, fuel: int) -> None:
        if fuel < 0:
            raise ValueError(f"Fuel must be nonnegative, got {fuel}")
        self.fuel = fuel
        self.used = 0

    def enter_body(self) -> None:
        if self.used >= self.fuel:
            raise _FuelExhausted
        self.used += 1

    def run(self, prog: s.Stmt, w: State) -> State:
        if isinstance(prog, s.Assign):
            return w.update(prog.var, eval_expr(prog.expr, w))
        if isinstance(prog, s.Seq):
            return self.run(prog.second, self.run(prog.first, w))
        if isinstance(prog, s.If):
            return self.run(prog.then if holds(prog.cond, w) else prog.orelse, w)
        if isinstance(prog, s.While):
            while holds(prog.cond, w):
                self.enter_body()
                w = self.run(prog.body, w)
            return w
        raise TypeError(f"Not a program: {prog!r}")


def exec_program(prog: s.Stmt, w: Mapping[s.Var, int], fuel: int) -> ExecOutcome:
    """
    Run a program from a state.

    Args:
        prog: Program to execute.
        w: Initial state.
        fuel: Maximum number of loop-body entries over the whole run.

    Returns:
        Terminated with the final state and the loop-body entries used,
        or OutOfFuel.
    """
    machine = _Machine(fuel)
    try:
        final = machine.run(prog, w if isinstance(w, State) else State(w))
    except _FuelExhausted:
        logger.debug("Fuel of %d exhausted", fuel)
        return OutOfFuel(fuel)
    return Terminated(final, machine.used)


def check_program_vars(prog: s.Stmt, xs: Sequence[s.Var]) -> None:
    """Raise DimensionError unless xs is duplicate-free and covers the program."""
    if len(set(xs)) != len(xs):
        raise DimensionError(f"Variable list {[v.name for v in xs]} has duplicates")
    missing = prog.fv - set(xs)
    if missing:
        names = ", ".join(v.name for v in sorted(missing))
        raise DimensionError(f"Program variables missing from the variable list: {names}")


def run_function(
    prog: s.Stmt, xs: Sequence[s.Var], args: Sequence[int], fuel: int
) -> tuple[int, ...] | None:
    """f_S(args) read off the final state at xs, or None when fuel runs out."""
    check_program_vars(prog, xs)
    outcome = exec_program(prog, State.of(xs, args), fuel)
    if isinstance(outcome, OutOfFuel):
        return None
    return outcome.final.project(xs)


@dataclass(frozen=True)
class LoopTrace:
    """The states w_0, ..., w_i a loop passes through; the guard fails only at the last."""

    states: tuple[State, ...]

    @property
    def iterations(self) -> int:
        return len(self.states) - 1


def loop_trace(loop: s.While, w: Mapping[s.Var, int], fuel: int) -> LoopTrace | OutOfFuel:
    if not isinstance(loop, s.While):
        raise TypeError(f"loop_trace needs a while loop, got {type(loop).__name__}")
    machine = _Machine(fuel)
    current = w if isinstance(w, State) else State(w)
    states = [current]
    try:
        while holds(loop.cond, current):
            machine.enter_body()
            current = machine.run(loop.body, current)
            states.append(current)
    except _FuelExhausted:
        logger.debug("Fuel of %d exhausted after %d iterations", fuel, len(states) - 1)
        return OutOfFuel(fuel)
    return LoopTrace(tuple(states))


def trace_lines(trace: LoopTrace, variables: Sequence[s.Var] | None = None) -> Iterator[str]:
    """One JSON object per state, e.g. ``{"x1": 3, "x2": 0}``."""
    for state in trace.states:
        keys = list(variables) if variables is not None else sorted(state)
        yield json.dumps({v.name: state[v] for v in keys})
