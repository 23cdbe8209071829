"""
Tests for hoarith.sp.
"""

import pytest

from hoarith import syntax as s
from hoarith.arith_sem import is_sigma1
from hoarith.corpus import PROGRAMS
from hoarith.evaluator import Verdict, eval_formula, verify_witness
from hoarith.exceptions import DimensionError
from hoarith.interp import State
from hoarith.parser import parse_formula, parse_program
from hoarith.sp import (
    box_states,
    invariant,
    reachable_states,
    separation_rhs,
    separation_witness,
    sp,
    sp_assign,
)

X, Y = s.Var(1), s.Var(2)


class TestSpAssign:
    """Tests for sp_assign."""

    def test_shape(self):
        """∃u (p(u) ∧ x = e(u))."""
        post = sp_assign(parse_formula("x1 = 3"), parse_program("x1 := x1 + 1"), [X])
        u = s.Var(2)
        expected = s.Exists(
            u,
            s.And(
                s.Atom(s.Eq(s.Variable(u), s.Numeral(3))),
                s.Atom(s.Eq(s.var(1), s.Add(s.Variable(u), s.One()))),
            ),
        )
        assert post == expected

    def test_floor(self):
        """Fresh variables respect the floor."""
        post = sp_assign(s.TRUE, parse_program("x1 := 0"), [X], floor=40)
        assert post.var == s.Var(40)

    def test_frame(self):
        """Variables other than the assigned one keep their old value."""
        post = sp_assign(parse_formula("x1 < x2"), parse_program("x1 := 0"), [X, Y])
        assert eval_formula(post, {X: 0, Y: 4}, 0) is Verdict.TRUE
        assert eval_formula(post, {X: 1, Y: 4}, 0) is Verdict.FALSE


class TestSp:
    """Tests for sp."""

    @pytest.mark.parametrize(
        "name, pre, box",
        [("min", "0 = 0", 3), ("chain", "0 = 0", 6), ("step_smaller", "x < y", 4)],
    )
    def test_loop_free_matches_execution(self, name, pre, box):
        """SP holds exactly at the final states of runs from p-states."""
        program = PROGRAMS[name]
        pre_formula = program.formula(pre)
        post = sp(pre_formula, program.prog, program.xs).formula
        reach = reachable_states(pre_formula, program.prog, program.xs, box, fuel=10, bound=0)
        assert reach.complete
        for state in box_states(program.xs, box):
            expected = Verdict.of(state.project(program.xs) in reach.states)
            assert eval_formula(post, state, 0) is expected

    def test_loop_exit(self, count_up):
        """After count_up, y < x is impossible and the empty run is found."""
        prog, xs = count_up
        post = sp(s.TRUE, prog, xs).formula
        assert eval_formula(post, State.of(xs, [0, 0]), 2) is Verdict.TRUE
        assert eval_formula(post, State.of(xs, [1, 0]), 2) is Verdict.FALSE

    def test_result_vars(self, count_up):
        """The result records the variable list."""
        prog, xs = count_up
        assert sp(s.TRUE, prog, xs).vars == tuple(xs)

    def test_missing_program_variable(self, count_up):
        """xs must cover the program."""
        prog, _ = count_up
        with pytest.raises(DimensionError):
            sp(s.TRUE, prog, [X])


class TestInvariant:
    """Tests for invariant."""

    def test_reached_states(self, count_up):
        """States after zero loop iterations satisfy INV."""
        prog, xs = count_up
        loop = prog.second
        inv = invariant(parse_formula("x2 = 0"), loop, xs)
        assert eval_formula(inv, State.of(xs, [0, 0]), 1) is Verdict.TRUE
        assert eval_formula(inv, State.of(xs, [1, 0]), 12) is Verdict.TRUE

    def test_sigma1(self, count_up):
        """INV of a Σ1 precondition has no unbounded universal."""
        prog, xs = count_up
        assert is_sigma1(invariant(s.TRUE, prog.second, xs))

    def test_fresh_above_floor(self, count_up):
        """Bound variables start at the floor."""
        prog, xs = count_up
        inv = invariant(s.TRUE, prog.second, xs, floor=50)
        assert min(inv.indices - {1, 2}) >= 50


class TestSeparation:
    """Tests for separation_rhs."""

    def test_agrees_with_sp(self):
        """Both sides of the separation equivalence agree on min."""
        program = PROGRAMS["min"]
        pre = program.formula("0 = 0")
        post = sp(pre, program.prog, program.xs).formula
        rhs = separation_rhs(pre, program.prog, program.xs)
        for state in box_states(program.xs, 3):
            left = eval_formula(post, state, 0)
            assert left is not Verdict.UNKNOWN
            assert eval_formula(rhs, state, 0) is left

    def test_count_up_reaches_one_state(self):
        """From x = 3, count_up ends exactly at (3, 3), confirmed by a run."""
        program = PROGRAMS["count_up"]
        prog, xs = program.prog, program.xs
        pre = program.formula("x = 3")
        post = sp(pre, prog, xs).formula
        rhs = separation_rhs(pre, prog, xs)
        for state in box_states(xs, 4):
            found = separation_witness(pre, prog, xs, state, box=4, fuel=100, bound=0)
            if state.project(xs) == (3, 3):
                assert found is not None
                start, witness = found
                assert start[xs[0]] == 3
                assert verify_witness(prog, xs, start.project(xs), (3, 3), witness)
                assert eval_formula(post, state, 2) is not Verdict.FALSE
                assert eval_formula(rhs, state, 2) is not Verdict.FALSE
            else:
                assert found is None
                assert eval_formula(post, state, 2) is not Verdict.TRUE
                assert eval_formula(rhs, state, 2) is not Verdict.TRUE

    def test_witness_respects_pre(self):
        """Only p-states are tried as starting points."""
        program = PROGRAMS["count_up"]
        state = State.of(program.xs, [0, 0])
        pre = program.formula("0 < x")
        assert separation_witness(pre, program.prog, program.xs, state, 3, 100, 0) is None


class TestReachable:
    """Tests for box_states and reachable_states."""

    def test_box(self):
        """Every state with values up to the box size."""
        states = box_states([X, Y], 1)
        assert [w.project([X, Y]) for w in states] == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_divergence_marks_incomplete(self):
        """A run out of fuel makes the result incomplete."""
        prog = parse_program("while x1 < 1 do x2 := x2 + 1 od")
        reach = reachable_states(s.TRUE, prog, [X, Y], 1, fuel=20, bound=0)
        assert not reach.complete
        assert reach.states == {(1, 0), (1, 1)}

    def test_unknown_pre_marks_incomplete(self):
        """An undecided precondition makes the result incomplete."""
        pre = parse_formula("forall x3. x3 < x3 + 1")
        reach = reachable_states(pre, parse_program("x1 := 0"), [X], 1, fuel=5, bound=3)
        assert not reach.complete
        assert reach.states == frozenset()
