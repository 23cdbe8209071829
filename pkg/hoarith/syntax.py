"""
Abstract syntax of while-programs and of first-order arithmetic.

Terms are built from 0, 1, variables, + and ·; guards are quantifier-free
comparisons joined by ¬ and →; formulas add ∀. Conjunction, disjunction,
equivalence, ∃ and the bounded quantifiers are kept as sugar nodes whose
meaning is their usual expansion. Every node is an immutable dataclass.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from .exceptions import VariableClashError


@dataclass(frozen=True, order=True)
class Var:
    """The variable x_index."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError(f"Variable index must be nonnegative, got {self.index}")

    @property
    def name(self) -> str:
        return f"x{self.index}"

    def __str__(self) -> str:
        return self.name


class _Node:
    """Shared caching of free variables, variable indices and size."""

    @cached_property
    def fv(self) -> frozenset[Var]:
        return _free_vars(self)

    @cached_property
    def indices(self) -> frozenset[int]:
        """Indices of every variable occurring in the node, bound or free."""
        return _indices(self)

    @cached_property
    def size(self) -> int:
        return _size(self)

    @cached_property
    def quantifier_free(self) -> bool:
        return _quantifier_free(self)

    def __str__(self) -> str:
        from .printer import to_text

        return to_text(self)  # type: ignore[arg-type]


# -- terms -------------------------------------------------------------------


class Expr(_Node):
    """Base class of terms."""


@dataclass(frozen=True)
class Zero(Expr):
    pass


@dataclass(frozen=True)
class One(Expr):
    pass


@dataclass(frozen=True)
class Numeral(Expr):
    """Decimal numeral, standing for 1+…+1."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"Numerals are natural numbers, got {self.value}")


@dataclass(frozen=True)
class Variable(Expr):
    var: Var


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


def numeral(value: int) -> Expr:
    """Return the canonical term for a natural number (0 and 1 are the constants)."""
    if value == 0:
        return Zero()
    if value == 1:
        return One()
    return Numeral(value)


def var(index: int) -> Variable:
    """Shorthand for the term x_index."""
    return Variable(Var(index))


def as_term(v: Var | Expr) -> Expr:
    return Variable(v) if isinstance(v, Var) else v


# -- guards ------------------------------------------------------------------


class BExpr(_Node):
    """Base class of quantifier-free boolean expressions."""


@dataclass(frozen=True)
class Less(BExpr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Eq(BExpr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class BNot(BExpr):
    arg: BExpr


@dataclass(frozen=True)
class BImp(BExpr):
    left: BExpr
    right: BExpr


@dataclass(frozen=True)
class BAnd(BExpr):
    left: BExpr
    right: BExpr


@dataclass(frozen=True)
class BOr(BExpr):
    left: BExpr
    right: BExpr


# -- formulas ----------------------------------------------------------------


class Formula(_Node):
    """Base class of first-order formulas."""


@dataclass(frozen=True)
class Atom(Formula):
    test: BExpr


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: Var
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: Var
    body: Formula


@dataclass(frozen=True)
class BoundedForall(Formula):
    """∀var (var < bound → body); var must not occur in bound."""

    var: Var
    bound: Expr
    body: Formula

    def __post_init__(self) -> None:
        if self.var in self.bound.fv:
            raise VariableClashError(f"Bounded quantifier variable {self.var} occurs in its bound")


@dataclass(frozen=True)
class BoundedExists(Formula):
    """∃var (var < bound ∧ body); var must not occur in bound."""

    var: Var
    bound: Expr
    body: Formula

    def __post_init__(self) -> None:
        if self.var in self.bound.fv:
            raise VariableClashError(f"Bounded quantifier variable {self.var} occurs in its bound")


Quantifier = Union[Forall, Exists, BoundedForall, BoundedExists]
QUANTIFIERS = (Forall, Exists, BoundedForall, BoundedExists)
BINARY_FORMULAS = (Imp, And, Or, Iff)

TRUE: Formula = Atom(Eq(Zero(), Zero()))
FALSE: Formula = Atom(Less(Zero(), Zero()))


# -- programs ----------------------------------------------------------------


class Stmt(_Node):
    """Base class of while-programs."""


@dataclass(frozen=True)
class Assign(Stmt):
    var: Var
    expr: Expr


@dataclass(frozen=True)
class Seq(Stmt):
    first: Stmt
    second: Stmt


@dataclass(frozen=True)
class If(Stmt):
    cond: BExpr
    then: Stmt
    orelse: Stmt


@dataclass(frozen=True)
class While(Stmt):
    cond: BExpr
    body: Stmt


@dataclass(frozen=True)
class Triple:
    """The asserted program {pre} prog {post}."""

    pre: Formula
    prog: Stmt
    post: Formula


AnyNode = Union[Expr, BExpr, Formula, Stmt]


# -- structural queries ------------------------------------------------------


def _free_vars(node: object) -> frozenset[Var]:
    if isinstance(node, Variable):
        return frozenset((node.var,))
    if isinstance(node, (Zero, One, Numeral)):
        return frozenset()
    if isinstance(node, (Add, Mul, Less, Eq, BImp, BAnd, BOr, Imp, And, Or, Iff)):
        return node.left.fv | node.right.fv
    if isinstance(node, (BNot, Not)):
        return node.arg.fv
    if isinstance(node, Atom):
        return node.test.fv
    if isinstance(node, (Forall, Exists)):
        return node.body.fv - {node.var}
    if isinstance(node, (BoundedForall, BoundedExists)):
        return node.bound.fv | (node.body.fv - {node.var})
    if isinstance(node, Assign):
        return node.expr.fv | {node.var}
    if isinstance(node, Seq):
        return node.first.fv | node.second.fv
    if isinstance(node, If):
        return node.cond.fv | node.then.fv | node.orelse.fv
    if isinstance(node, While):
        return node.cond.fv | node.body.fv
    raise TypeError(f"Not a syntax node: {node!r}")


def _indices(node: object) -> frozenset[int]:
    if isinstance(node, Variable):
        return frozenset((node.var.index,))
    if isinstance(node, (Zero, One, Numeral)):
        return frozenset()
    if isinstance(node, (Add, Mul, Less, Eq, BImp, BAnd, BOr, Imp, And, Or, Iff)):
        return node.left.indices | node.right.indices
    if isinstance(node, (BNot, Not)):
        return node.arg.indices
    if isinstance(node, Atom):
        return node.test.indices
    if isinstance(node, (Forall, Exists)):
        return node.body.indices | {node.var.index}
    if isinstance(node, (BoundedForall, BoundedExists)):
        return node.bound.indices | node.body.indices | {node.var.index}
    if isinstance(node, Stmt):
        return frozenset(v.index for v in node.fv)
    raise TypeError(f"Not a syntax node: {node!r}")


def _quantifier_free(node: object) -> bool:
    if isinstance(node, QUANTIFIERS):
        return False
    if isinstance(node, (Not, BNot)):
        return node.arg.quantifier_free
    if isinstance(node, BINARY_FORMULAS):
        return node.left.quantifier_free and node.right.quantifier_free
    return True


def _size(node: object) -> int:
    if isinstance(node, (Variable, Zero, One, Numeral)):
        return 1
    if isinstance(node, (Add, Mul, Less, Eq, BImp, BAnd, BOr, Imp, And, Or, Iff, Seq)):
        left = node.first if isinstance(node, Seq) else node.left
        right = node.second if isinstance(node, Seq) else node.right
        return 1 + left.size + right.size
    if isinstance(node, (BNot, Not)):
        return 1 + node.arg.size
    if isinstance(node, Atom):
        return node.test.size
    if isinstance(node, (Forall, Exists)):
        return 1 + node.body.size
    if isinstance(node, (BoundedForall, BoundedExists)):
        return 1 + node.bound.size + node.body.size
    if isinstance(node, Assign):
        return 1 + node.expr.size
    if isinstance(node, If):
        return 1 + node.cond.size + node.then.size + node.orelse.size
    if isinstance(node, While):
        return 1 + node.cond.size + node.body.size
    raise TypeError(f"Not a syntax node: {node!r}")


def free_vars(node: AnyNode) -> frozenset[Var]:
    """Free variables of a term, guard, formula or program."""
    return node.fv


def program_vars(prog: Stmt) -> list[Var]:
    """All variables occurring in a program, in ascending index order."""
    return sorted(prog.fv)


def fresh_vars(avoid: Iterable[Var | int], count: int) -> list[Var]:
    """
    Return `count` distinct variables numbered above everything in `avoid`.

    Args:
        avoid: Variables (or raw indices) the result must not collide with.
        count: How many variables to produce.
    """
    top = -1
    for item in avoid:
        index = item.index if isinstance(item, Var) else item
        top = max(top, index)
    return [Var(top + 1 + k) for k in range(count)]


def used_indices(*nodes: AnyNode | Var | Iterable[Var]) -> set[int]:
    """Every index occurring in the given nodes and variable collections."""
    result: set[int] = set()
    for node in nodes:
        if isinstance(node, Var):
            result.add(node.index)
        elif isinstance(node, _Node):
            result |= node.indices
        else:
            result |= {v.index for v in node}
    return result


# -- construction helpers ----------------------------------------------------


def formula_of(test: BExpr) -> Formula:
    """Lift a guard into a formula, moving its connectives to the formula level."""
    if isinstance(test, (Less, Eq)):
        return Atom(test)
    if isinstance(test, BNot):
        return Not(formula_of(test.arg))
    if isinstance(test, BImp):
        return Imp(formula_of(test.left), formula_of(test.right))
    if isinstance(test, BAnd):
        return And(formula_of(test.left), formula_of(test.right))
    if isinstance(test, BOr):
        return Or(formula_of(test.left), formula_of(test.right))
    raise TypeError(f"Not a guard: {test!r}")


def to_bexpr(formula: Formula) -> BExpr | None:
    """Inverse of formula_of; None when the formula has a quantifier."""
    if isinstance(formula, Atom):
        return formula.test
    if isinstance(formula, Not):
        arg = to_bexpr(formula.arg)
        return None if arg is None else BNot(arg)
    if isinstance(formula, (Imp, And, Or)):
        left = to_bexpr(formula.left)
        right = to_bexpr(formula.right)
        if left is None or right is None:
            return None
        if isinstance(formula, Imp):
            return BImp(left, right)
        if isinstance(formula, And):
            return BAnd(left, right)
        return BOr(left, right)
    return None


def conj(parts: Iterable[Formula]) -> Formula:
    """Right-nested conjunction; the empty conjunction is 0 = 0."""
    items = list(parts)
    if not items:
        return TRUE
    result = items[-1]
    for item in reversed(items[:-1]):
        result = And(item, result)
    return result


def disj(parts: Iterable[Formula]) -> Formula:
    """Right-nested disjunction; the empty disjunction is 0 < 0."""
    items = list(parts)
    if not items:
        return FALSE
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Or(item, result)
    return result


def conjuncts(formula: Formula) -> list[Formula]:
    """Flatten nested And nodes."""
    if isinstance(formula, And):
        return conjuncts(formula.left) + conjuncts(formula.right)
    return [formula]


def exists_all(variables: Sequence[Var], body: Formula) -> Formula:
    for v in reversed(variables):
        body = Exists(v, body)
    return body


def bounded_exists_all(variables: Sequence[Var], bound: Expr, body: Formula) -> Formula:
    for v in reversed(variables):
        body = BoundedExists(v, bound, body)
    return body


def forall_all(variables: Sequence[Var], body: Formula) -> Formula:
    for v in reversed(variables):
        body = Forall(v, body)
    return body


def universal_closure(formula: Formula) -> Formula:
    """∀-close every free variable, outermost quantifier on the lowest index."""
    return forall_all(sorted(formula.fv), formula)


def equalities(left: Sequence[Var | Expr], right: Sequence[Var | Expr]) -> Formula:
    """Conjunction of pointwise equations left_k = right_k."""
    return conj(Atom(Eq(as_term(a), as_term(b))) for a, b in zip(left, right))


def renaming(source: Sequence[Var], target: Sequence[Var | Expr]) -> dict[Var, Expr]:
    return {s: as_term(t) for s, t in zip(source, target)}


# -- substitution ------------------------------------------------------------


def substitute_expr(expr: Expr, sigma: Mapping[Var, Expr]) -> Expr:
    if not sigma or not (expr.fv & sigma.keys()):
        return expr
    if isinstance(expr, Variable):
        return sigma.get(expr.var, expr)
    if isinstance(expr, Add):
        return Add(substitute_expr(expr.left, sigma), substitute_expr(expr.right, sigma))
    if isinstance(expr, Mul):
        return Mul(substitute_expr(expr.left, sigma), substitute_expr(expr.right, sigma))
    return expr


def substitute_bexpr(test: BExpr, sigma: Mapping[Var, Expr]) -> BExpr:
    if not sigma or not (test.fv & sigma.keys()):
        return test
    if isinstance(test, Less):
        return Less(substitute_expr(test.left, sigma), substitute_expr(test.right, sigma))
    if isinstance(test, Eq):
        return Eq(substitute_expr(test.left, sigma), substitute_expr(test.right, sigma))
    if isinstance(test, BNot):
        return BNot(substitute_bexpr(test.arg, sigma))
    if isinstance(test, (BImp, BAnd, BOr)):
        return type(test)(substitute_bexpr(test.left, sigma), substitute_bexpr(test.right, sigma))
    raise TypeError(f"Not a guard: {test!r}")


def substitute(formula: Formula, sigma: Mapping[Var, Expr]) -> Formula:
    """
    Simultaneous, capture-avoiding substitution.

    Bound variables whose renaming is required to avoid capturing a free
    variable of a substituted term are renamed to the least index above every
    index in the quantifier's scope and in the substituted terms.

    Args:
        formula: Formula to substitute into.
        sigma: Map from variables to replacement terms.

    Returns:
        The formula with each free occurrence of x in dom(sigma) replaced by sigma[x].
    """
    relevant = {v: t for v, t in sigma.items() if v in formula.fv}
    if not relevant:
        return formula
    if isinstance(formula, Atom):
        return Atom(substitute_bexpr(formula.test, relevant))
    if isinstance(formula, Not):
        return Not(substitute(formula.arg, relevant))
    if isinstance(formula, BINARY_FORMULAS):
        left = substitute(formula.left, relevant)
        return type(formula)(left, substitute(formula.right, relevant))
    if isinstance(formula, QUANTIFIERS):
        return _substitute_binder(formula, relevant)
    raise TypeError(f"Not a formula: {formula!r}")


def _substitute_binder(formula: Quantifier, sigma: dict[Var, Expr]) -> Formula:
    bound_var = formula.var
    inner = {v: t for v, t in sigma.items() if v != bound_var and v in formula.body.fv}
    captured = any(bound_var in t.fv for t in inner.values())
    if captured:
        avoid = used_indices(formula.body, bound_var)
        for term in inner.values():
            avoid |= term.indices
        if isinstance(formula, (BoundedForall, BoundedExists)):
            avoid |= formula.bound.indices
        (new_var,) = fresh_vars(avoid, 1)
        inner[bound_var] = Variable(new_var)
        bound_var = new_var
    body = substitute(formula.body, inner)
    if isinstance(formula, (BoundedForall, BoundedExists)):
        bound = substitute_expr(formula.bound, sigma)
        return type(formula)(bound_var, bound, body)
    return type(formula)(bound_var, body)


def substitute_stmt(prog: Stmt, sigma: Mapping[Var, Var]) -> Stmt:
    """Rename program variables (used to move programs between variable lists)."""
    terms = {v: Variable(t) for v, t in sigma.items()}
    if isinstance(prog, Assign):
        return Assign(sigma.get(prog.var, prog.var), substitute_expr(prog.expr, terms))
    if isinstance(prog, Seq):
        return Seq(substitute_stmt(prog.first, sigma), substitute_stmt(prog.second, sigma))
    if isinstance(prog, If):
        return If(
            substitute_bexpr(prog.cond, terms),
            substitute_stmt(prog.then, sigma),
            substitute_stmt(prog.orelse, sigma),
        )
    if isinstance(prog, While):
        return While(substitute_bexpr(prog.cond, terms), substitute_stmt(prog.body, sigma))
    raise TypeError(f"Not a program: {prog!r}")


# -- α-equivalence -----------------------------------------------------------


def _canonical(formula: Formula, env: dict[Var, Var], counter: list[int]) -> Formula:
    if isinstance(formula, Atom):
        return Atom(substitute_bexpr(formula.test, {v: Variable(t) for v, t in env.items()}))
    if isinstance(formula, Not):
        return Not(_canonical(formula.arg, env, counter))
    if isinstance(formula, BINARY_FORMULAS):
        left = _canonical(formula.left, env, counter)
        right = _canonical(formula.right, env, counter)
        return type(formula)(left, right)
    if isinstance(formula, QUANTIFIERS):
        target = Var(counter[0])
        counter[0] += 1
        body = _canonical(formula.body, {**env, formula.var: target}, counter)
        if isinstance(formula, (BoundedForall, BoundedExists)):
            bound = substitute_expr(formula.bound, {v: Variable(t) for v, t in env.items()})
            return type(formula)(target, bound, body)
        return type(formula)(target, body)
    raise TypeError(f"Not a formula: {formula!r}")


def alpha_equivalent(first: Formula, second: Formula) -> bool:
    """True when the formulas differ only in the names of bound variables."""
    if first == second:
        return True
    if first.fv != second.fv:
        return False
    base = max(used_indices(first, second), default=-1) + 1
    return _canonical(first, {}, [base]) == _canonical(second, {}, [base])


# -- normal forms ------------------------------------------------------------


def _strict_expr(expr: Expr) -> Expr:
    if isinstance(expr, Numeral):
        if expr.value <= 1:
            return numeral(expr.value)
        result: Expr = One()
        for _ in range(expr.value - 1):
            result = Add(result, One())
        return result
    if isinstance(expr, (Add, Mul)):
        return type(expr)(_strict_expr(expr.left), _strict_expr(expr.right))
    return expr


def _strict_and(left: Formula, right: Formula) -> Formula:
    return Not(Imp(left, Not(right)))


def _strict_test(test: BExpr, keep_eq: bool) -> Formula:
    if isinstance(test, Less):
        return Atom(Less(_strict_expr(test.left), _strict_expr(test.right)))
    if isinstance(test, Eq):
        left, right = _strict_expr(test.left), _strict_expr(test.right)
        if keep_eq:
            return Atom(Eq(left, right))
        return Not(Imp(Not(Atom(Less(left, right))), Atom(Less(right, left))))
    if isinstance(test, BNot):
        return Not(_strict_test(test.arg, keep_eq))
    if isinstance(test, BImp):
        return Imp(_strict_test(test.left, keep_eq), _strict_test(test.right, keep_eq))
    if isinstance(test, BAnd):
        return _strict_and(_strict_test(test.left, keep_eq), _strict_test(test.right, keep_eq))
    if isinstance(test, BOr):
        return Imp(Not(_strict_test(test.left, keep_eq)), _strict_test(test.right, keep_eq))
    raise TypeError(f"Not a guard: {test!r}")


def to_strict(formula: Formula, keep_eq: bool = False) -> Formula:
    """
    Expand every abbreviation, leaving only 0, 1, +, ·, <, ¬, → and ∀.

    Args:
        formula: Formula possibly using sugar nodes.
        keep_eq: Keep = as a primitive instead of ¬(a<b) ∧ ¬(b<a).
    """
    if isinstance(formula, Atom):
        return _strict_test(formula.test, keep_eq)
    if isinstance(formula, Not):
        return Not(to_strict(formula.arg, keep_eq))
    if isinstance(formula, Imp):
        return Imp(to_strict(formula.left, keep_eq), to_strict(formula.right, keep_eq))
    if isinstance(formula, And):
        return _strict_and(to_strict(formula.left, keep_eq), to_strict(formula.right, keep_eq))
    if isinstance(formula, Or):
        return Imp(Not(to_strict(formula.left, keep_eq)), to_strict(formula.right, keep_eq))
    if isinstance(formula, Iff):
        left, right = to_strict(formula.left, keep_eq), to_strict(formula.right, keep_eq)
        return _strict_and(Imp(left, right), Imp(right, left))
    if isinstance(formula, Forall):
        return Forall(formula.var, to_strict(formula.body, keep_eq))
    if isinstance(formula, Exists):
        return Not(Forall(formula.var, Not(to_strict(formula.body, keep_eq))))
    bound = _strict_expr(formula.bound)  # type: ignore[attr-defined]
    guard = Atom(Less(Variable(formula.var), bound))  # type: ignore[attr-defined]
    if isinstance(formula, BoundedForall):
        return Forall(formula.var, Imp(guard, to_strict(formula.body, keep_eq)))
    if isinstance(formula, BoundedExists):
        body = _strict_and(guard, to_strict(formula.body, keep_eq))
        return Not(Forall(formula.var, Not(body)))
    raise TypeError(f"Not a formula: {formula!r}")


def less_as_addition(formula: Formula) -> Formula:
    """Rewrite every a < b as ∃z(¬(z = 0) ∧ a + z = b), z fresh."""
    (z,) = fresh_vars(formula.indices, 1)

    def rewrite_test(test: BExpr) -> Formula:
        if isinstance(test, Less):
            positive = Not(Atom(Eq(Variable(z), Zero())))
            return Exists(z, And(positive, Atom(Eq(Add(test.left, Variable(z)), test.right))))
        if isinstance(test, Eq):
            return Atom(test)
        if isinstance(test, BNot):
            return Not(rewrite_test(test.arg))
        combined = {BImp: Imp, BAnd: And, BOr: Or}[type(test)]  # type: ignore[index]
        left = rewrite_test(test.left)  # type: ignore[attr-defined]
        return combined(left, rewrite_test(test.right))  # type: ignore[attr-defined]

    def rewrite(node: Formula) -> Formula:
        if isinstance(node, Atom):
            return rewrite_test(node.test)
        if isinstance(node, Not):
            return Not(rewrite(node.arg))
        if isinstance(node, BINARY_FORMULAS):
            return type(node)(rewrite(node.left), rewrite(node.right))
        if isinstance(node, (Forall, Exists)):
            return type(node)(node.var, rewrite(node.body))
        if isinstance(node, (BoundedForall, BoundedExists)):
            return type(node)(node.var, node.bound, rewrite(node.body))
        raise TypeError(f"Not a formula: {node!r}")

    return rewrite(formula)


def unbounded_universals(formula: Formula, positive: bool = True) -> list[Var]:
    """
    Variables bound by an effectively universal unbounded quantifier.

    A ∀ in positive position or an ∃ under an odd number of negations counts;
    an empty result means the formula is Σ1 in shape.
    """
    if isinstance(formula, Atom):
        return []
    if isinstance(formula, Not):
        return unbounded_universals(formula.arg, not positive)
    if isinstance(formula, Imp):
        return unbounded_universals(formula.left, not positive) + unbounded_universals(
            formula.right, positive
        )
    if isinstance(formula, (And, Or)):
        return unbounded_universals(formula.left, positive) + unbounded_universals(
            formula.right, positive
        )
    if isinstance(formula, Iff):
        both = [formula.left, formula.right]
        return [
            v for part in both for pol in (True, False) for v in unbounded_universals(part, pol)
        ]
    if isinstance(formula, (BoundedForall, BoundedExists)):
        return unbounded_universals(formula.body, positive)
    inner = unbounded_universals(formula.body, positive)  # type: ignore[attr-defined]
    if isinstance(formula, Forall) == positive:
        return [formula.var, *inner]  # type: ignore[attr-defined]
    return inner
