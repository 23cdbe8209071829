"""
Tests for hoarith.syntax.
"""

import dataclasses

import pytest

from hoarith import syntax as s
from hoarith.corpus import PROGRAMS
from hoarith.exceptions import VariableClashError

X, Y, Z = s.Var(1), s.Var(2), s.Var(3)
x, y, z = s.Variable(X), s.Variable(Y), s.Variable(Z)


def less(a, b):
    return s.Atom(s.Less(a, b))


def eq(a, b):
    return s.Atom(s.Eq(a, b))


def node_types(node):
    """Every dataclass type occurring in a syntax tree."""
    found = {type(node)}
    if dataclasses.is_dataclass(node):
        for f in dataclasses.fields(node):
            value = getattr(node, f.name)
            if dataclasses.is_dataclass(value):
                found |= node_types(value)
    return found


class TestTerms:
    """Tests for variables, numerals and term helpers."""

    def test_variable_name(self):
        """Var(k) is printed as xk."""
        assert s.Var(7).name == "x7"
        assert str(s.Var(0)) == "x0"

    def test_negative_index_rejected(self):
        """Variable indices are naturals."""
        with pytest.raises(ValueError):
            s.Var(-1)

    @pytest.mark.parametrize(
        "value, expected",
        [(0, s.Zero()), (1, s.One()), (5, s.Numeral(5))],
    )
    def test_numeral_canonical_form(self, value, expected):
        """0 and 1 are the constants, larger numbers are numerals."""
        assert s.numeral(value) == expected

    def test_negative_numeral_rejected(self):
        """Numerals denote naturals."""
        with pytest.raises(ValueError):
            s.Numeral(-3)

    def test_size(self):
        """Size counts every node."""
        assert s.Add(x, s.One()).size == 3
        assert less(x, s.Mul(y, y)).size == 5


class TestFreeVariables:
    """Tests for free variables and bound variable clashes."""

    def test_quantifier_binds(self):
        """∀x (x < y) has only y free."""
        assert s.Forall(X, less(x, y)).fv == {Y}

    def test_bounded_quantifier_bound_is_free(self):
        """The bound of a bounded quantifier is outside its scope."""
        assert s.BoundedExists(X, s.Add(y, z), eq(x, x)).fv == {Y, Z}

    def test_bounded_variable_in_bound_rejected(self):
        """∀x < x+1 is not well formed."""
        with pytest.raises(VariableClashError):
            s.BoundedForall(X, s.Add(x, s.One()), s.TRUE)

    def test_program_vars_sorted(self):
        """Program variables come back in index order."""
        prog = s.Seq(s.Assign(Z, x), s.Assign(X, y))
        assert s.program_vars(prog) == [X, Y, Z]

    def test_program_vars_follow_declaration(self):
        """The count-up program over (x, y) lists x before y."""
        program = PROGRAMS["count_up"]
        names = program.table.names
        assert [names[v] for v in s.program_vars(program.prog)] == ["x", "y"]

    def test_fresh_vars_above_everything(self):
        """Fresh variables start above the largest avoided index."""
        assert s.fresh_vars([X, 5, Z], 2) == [s.Var(6), s.Var(7)]

    def test_indices_include_bound_variables(self):
        """indices reports bound as well as free variables."""
        assert s.Exists(Z, eq(z, x)).indices == {1, 3}


class TestConstruction:
    """Tests for the formula construction helpers."""

    def test_empty_conjunction_is_true(self):
        """conj([]) is 0 = 0."""
        assert s.conj([]) == s.TRUE
        assert s.disj([]) == s.FALSE

    def test_conjuncts_flatten(self):
        """conjuncts undoes conj."""
        parts = [less(x, y), eq(y, z), less(z, x)]
        assert s.conjuncts(s.conj(parts)) == parts

    def test_universal_closure_order(self):
        """The lowest index is quantified outermost."""
        closed = s.universal_closure(less(y, x))
        assert closed == s.Forall(X, s.Forall(Y, less(y, x)))
        assert closed.fv == frozenset()

    def test_formula_of_and_back(self):
        """Guards survive the trip through formulas."""
        guard = s.BImp(s.BNot(s.Less(x, y)), s.BAnd(s.Eq(x, y), s.BOr(s.Less(y, x), s.Eq(x, x))))
        assert s.to_bexpr(s.formula_of(guard)) == guard

    def test_to_bexpr_rejects_quantifiers(self):
        """Quantified formulas are not guards."""
        assert s.to_bexpr(s.Exists(X, eq(x, y))) is None

    def test_equalities(self):
        """equalities pairs the two lists."""
        assert s.equalities([X, Y], [Z, s.One()]) == s.And(eq(x, z), eq(y, s.One()))


class TestSubstitution:
    """Tests for capture-avoiding simultaneous substitution."""

    def test_simple(self):
        """x < y with x replaced by z + 1."""
        result = s.substitute(less(x, y), {X: s.Add(z, s.One())})
        assert result == less(s.Add(z, s.One()), y)

    def test_simultaneous(self):
        """Swapping x and y in one step."""
        assert s.substitute(less(x, y), {X: y, Y: x}) == less(y, x)

    def test_bound_variable_untouched(self):
        """Substituting for a bound variable changes nothing."""
        formula = s.Exists(X, eq(x, x))
        assert s.substitute(formula, {X: s.Zero()}) is formula

    def test_capture_avoided(self):
        """(∀y x < y)[y/x] renames the bound y."""
        result = s.substitute(s.Forall(Y, less(x, y)), {X: y})
        assert result == s.Forall(Z, less(y, z))

    def test_capture_avoided_in_bounded_quantifier(self):
        """Bounded quantifiers rename too, and the bound is substituted."""
        formula = s.BoundedExists(Y, x, eq(y, x))
        result = s.substitute(formula, {X: s.Add(y, s.One())})
        assert isinstance(result, s.BoundedExists)
        assert result.var not in {X, Y}
        assert result.bound == s.Add(y, s.One())
        assert result.body == eq(s.Variable(result.var), s.Add(y, s.One()))

    def test_substitute_stmt(self):
        """Program variables are renamed everywhere."""
        prog = s.While(s.Less(x, y), s.Assign(X, s.Add(x, s.One())))
        renamed = s.substitute_stmt(prog, {X: Z})
        assert renamed == s.While(s.Less(z, y), s.Assign(Z, s.Add(z, s.One())))


class TestAlphaEquivalence:
    """Tests for alpha_equivalent."""

    def test_renamed_bound_variable(self):
        """Bound variable names do not matter."""
        assert s.alpha_equivalent(s.Forall(Z, less(z, x)), s.Forall(s.Var(9), less(s.var(9), x)))

    def test_different_free_variables(self):
        """Free variables do matter."""
        assert not s.alpha_equivalent(s.Forall(Z, less(z, x)), s.Forall(Z, less(z, y)))

    def test_quantifier_kind_matters(self):
        """∀ and ∃ are not interchangeable."""
        assert not s.alpha_equivalent(s.Forall(Z, less(z, x)), s.Exists(Z, less(z, x)))


class TestNormalForms:
    """Tests for to_strict, less_as_addition and unbounded_universals."""

    def test_to_strict_removes_sugar(self):
        """Only 0, 1, +, ·, <, ¬, → and ∀ remain."""
        formula = s.Iff(
            s.BoundedExists(Z, s.Numeral(3), s.And(eq(z, x), s.Or(less(x, y), eq(y, y)))),
            s.Exists(Y, less(y, s.Numeral(2))),
        )
        allowed = {s.Atom, s.Not, s.Imp, s.Forall, s.Less, s.Zero, s.One, s.Variable, s.Add,
                   s.Mul, s.Var}  # fmt: skip
        assert node_types(s.to_strict(formula)) <= allowed

    def test_to_strict_keep_eq(self):
        """keep_eq leaves equations alone."""
        assert s.to_strict(eq(x, y), keep_eq=True) == eq(x, y)
        assert s.Eq not in node_types(s.to_strict(eq(x, y)))

    def test_less_as_addition(self):
        """x < y becomes ∃z(¬(z = 0) ∧ x + z = y)."""
        expected = s.Exists(Z, s.And(s.Not(eq(z, s.Zero())), eq(s.Add(x, z), y)))
        assert s.less_as_addition(less(x, y)) == expected

    @pytest.mark.parametrize(
        "formula, expected",
        [
            (s.Forall(X, eq(x, x)), [X]),
            (s.Not(s.Exists(X, eq(x, x))), [X]),
            (s.Exists(X, eq(x, x)), []),
            (s.BoundedForall(X, s.Numeral(3), eq(x, x)), []),
            (s.Imp(s.Exists(X, eq(x, x)), s.TRUE), [X]),
        ],
    )
    def test_unbounded_universals(self, formula, expected):
        """Polarity decides whether a quantifier is effectively universal."""
        assert s.unbounded_universals(formula) == expected
