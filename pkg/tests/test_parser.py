"""
Tests for hoarith.parser.
"""

import pytest

from hoarith import syntax as s
from hoarith.exceptions import ParseError
from hoarith.parser import (
    VarTable,
    parse_expr,
    parse_formula,
    parse_guard,
    parse_program,
    parse_state,
    parse_vars,
)

X, Y, Z = s.Var(1), s.Var(2), s.Var(3)
x, y, z = s.Variable(X), s.Variable(Y), s.Variable(Z)


def less(a, b):
    return s.Atom(s.Less(a, b))


def eq(a, b):
    return s.Atom(s.Eq(a, b))


class TestVarTable:
    """Tests for identifier interning."""

    def test_explicit_names(self):
        """x<k> is always Var(k)."""
        table = VarTable()
        assert table.lookup("x7") == s.Var(7)
        assert "x7" in table

    def test_interned_in_order(self):
        """Other identifiers are numbered in order of first use."""
        table = VarTable()
        assert table.lookup("a") == s.Var(1)
        assert table.lookup("b") == s.Var(2)
        assert table.lookup("a") == s.Var(1)
        assert table.names == {s.Var(1): "a", s.Var(2): "b"}

    def test_interned_above_explicit(self):
        """An interned name never collides with an explicit index."""
        assert parse_formula("x3 < y") == less(s.var(3), s.var(4))

    def test_declare(self):
        """Declared names keep their index and reserve it."""
        table = VarTable()
        table.declare("y", s.Var(5))
        assert table.lookup("y") == s.Var(5)
        assert table.lookup("z") == s.Var(6)
        with pytest.raises(ParseError, match="already bound to x5"):
            table.declare("y", s.Var(1))

    def test_shared_between_calls(self):
        """A table keeps program and formula variables aligned."""
        table = VarTable()
        prog = parse_program("y := x", table)
        formula = parse_formula("x < y", table)
        assert prog == s.Assign(Y, x)
        assert formula == less(x, y)


class TestParseProgram:
    """Tests for parse_program."""

    def test_assignment(self):
        """A single assignment."""
        assert parse_program("x1 := x1 + 1") == s.Assign(X, s.Add(x, s.One()))

    def test_sequence_nests_right(self):
        """a; b; c is a; (b; c)."""
        prog = parse_program("x1 := 0; x2 := 1; x3 := 2")
        assert prog == s.Seq(
            s.Assign(X, s.Zero()), s.Seq(s.Assign(Y, s.One()), s.Assign(Z, s.Numeral(2)))
        )

    def test_trailing_semicolon(self):
        """A trailing semicolon is accepted."""
        assert parse_program("x1 := 0;") == s.Assign(X, s.Zero())

    def test_while_and_if(self):
        """Loop and conditional with compound bodies."""
        prog = parse_program(
            "while x1 < x2 do if x1 = 0 then x1 := 1 else x1 := x1 * 2; x3 := x1 fi od"
        )
        body = s.If(
            s.Eq(x, s.Zero()),
            s.Assign(X, s.One()),
            s.Seq(s.Assign(X, s.Mul(x, s.Numeral(2))), s.Assign(Z, x)),
        )
        assert prog == s.While(s.Less(x, y), body)

    def test_guard_connectives(self):
        """Guards use the formula connectives without quantifiers."""
        prog = parse_program("while ~(x1 = x2) /\\ x1 < 5 do x1 := x1 + 1 od")
        assert prog.cond == s.BAnd(s.BNot(s.Eq(x, y)), s.Less(x, s.Numeral(5)))

    def test_comments_ignored(self):
        """# starts a comment."""
        assert parse_program("x1 := 0  # reset\n") == s.Assign(X, s.Zero())

    def test_quantified_guard_rejected(self):
        """Guards must be quantifier free."""
        with pytest.raises(ParseError, match="quantifiers"):
            parse_program("while exists x3. x3 = x1 do x1 := 0 od")

    def test_error_position(self):
        """Errors carry the line and column of the bad token."""
        with pytest.raises(ParseError) as info:
            parse_program("x1 := 1 +* 2")
        assert info.value.line == 1
        assert info.value.column == 10

    def test_unexpected_character(self):
        """Characters outside the grammar are reported."""
        with pytest.raises(ParseError, match="Unexpected character"):
            parse_program("x1 := 1 $ 2")

    def test_incomplete_input(self):
        """A missing right-hand side is a parse error."""
        with pytest.raises(ParseError):
            parse_program("x1 := ")


class TestParseFormula:
    """Tests for parse_formula and friends."""

    def test_precedence(self):
        """* binds tighter than +, and /\\ tighter than \\/."""
        formula = parse_formula("x1 + x2 * 2 = x3 \\/ x1 < x2 /\\ x2 < x3")
        assert formula == s.Or(
            eq(s.Add(x, s.Mul(y, s.Numeral(2))), z),
            s.And(less(x, y), less(y, z)),
        )

    def test_implication_right_associative(self):
        """a -> b -> c is a -> (b -> c)."""
        a, b, c = eq(x, x), eq(y, y), eq(z, z)
        assert parse_formula("x1 = x1 -> x2 = x2 -> x3 = x3") == s.Imp(a, s.Imp(b, c))

    def test_quantifier_scope(self):
        """A quantifier extends as far right as possible."""
        formula = parse_formula("forall x1. x1 = x1 /\\ x2 = x2")
        assert formula == s.Forall(X, s.And(eq(x, x), eq(y, y)))

    def test_bounded_forall(self):
        """forall v. v < t -> φ is a bounded quantifier."""
        formula = parse_formula("forall x3. x3 < x1 -> x3 < x2")
        assert formula == s.BoundedForall(Z, x, less(z, y))

    def test_bounded_exists(self):
        """exists v. v < t /\\ φ is a bounded quantifier."""
        formula = parse_formula("exists x3. x3 < x1 + 1 /\\ x3 = x2")
        assert formula == s.BoundedExists(Z, s.Add(x, s.One()), eq(z, y))

    def test_bound_mentioning_variable_stays_unbounded(self):
        """v < t with v in t is an ordinary guard."""
        formula = parse_formula("forall x3. x3 < x3 + 1 -> x3 = x3")
        assert isinstance(formula, s.Forall)

    def test_leq(self):
        """<= abbreviates < or =."""
        assert parse_formula("x1 <= x2") == s.Or(less(x, y), eq(x, y))

    def test_constants(self):
        """true and false are 0 = 0 and 0 < 0."""
        assert parse_formula("true") == s.TRUE
        assert parse_formula("false") == s.FALSE

    def test_unicode_connectives(self):
        """The mathematical symbols are accepted too."""
        ascii_form = parse_formula("forall x1. ~(x1 < 0) /\\ x1 = x1 -> x1 <= x1")
        unicode_form = parse_formula("∀ x1. ¬(x1 < 0) ∧ x1 = x1 → x1 ≤ x1")
        assert ascii_form == unicode_form

    def test_guard(self):
        """parse_guard returns the guard form."""
        assert parse_guard("x1 < x2 -> x1 = 0") == s.BImp(s.Less(x, y), s.Eq(x, s.Zero()))

    def test_expr(self):
        """Numerals above 1 stay numerals."""
        assert parse_expr("(x1 + 1) * 7") == s.Mul(s.Add(x, s.One()), s.Numeral(7))


class TestParseState:
    """Tests for parse_state and parse_vars."""

    def test_bindings(self):
        """name=value pairs separated by commas."""
        table = VarTable()
        assert parse_state("x=3, y=5", table) == {X: 3, Y: 5}

    def test_empty(self):
        """The empty state."""
        assert parse_state("") == {}

    def test_duplicate_rejected(self):
        """A variable may be bound once."""
        with pytest.raises(ParseError, match="bound twice"):
            parse_state("x1=1, x1=2")

    def test_vars(self):
        """Comma separated variable lists."""
        assert parse_vars("x2, x1") == [Y, X]
