"""
Hoare derivations for while-programs with arithmetic side conditions.

A derivation is a tree of rule applications. Its conclusion is computed from
the leaves upwards; the consequence rule contributes implications that must
be theorems of arithmetic. Those obligations are discharged by truth in the
naturals: a refuted obligation makes the derivation invalid, an undecided
one is reported back.
"""

from __future__ import annotations

import dataclasses
import enum
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Union

from . import syntax as s
from ._types import NodePath
from .arith_sem import FreshSupply, alpha
from .evaluator import Verdict, eval_formula
from .exceptions import DerivationError
from .interp import OutOfFuel, State, exec_program
from .sp import box_states, invariant, sp_assign

logger = logging.getLogger(__name__)


# -- derivation trees --------------------------------------------------------


@dataclass(frozen=True)
class AssignAxiom:
    """{post(expr/var)} var := expr {post}."""

    post: s.Formula
    var: s.Var
    expr: s.Expr


@dataclass(frozen=True)
class Comp:
    left: Derivation
    right: Derivation
    mid: s.Formula


@dataclass(frozen=True)
class Cond:
    then_d: Derivation
    else_d: Derivation


@dataclass(frozen=True)
class Iter:
    body_d: Derivation


@dataclass(frozen=True)
class Conseq:
    pre: s.Formula
    inner: Derivation
    post: s.Formula


Derivation = Union[AssignAxiom, Comp, Cond, Iter, Conseq]

CHILDREN: dict[type, tuple[tuple[str, str], ...]] = {
    AssignAxiom: (),
    Comp: (("left", "left"), ("right", "right")),
    Cond: (("then_d", "then"), ("else_d", "else")),
    Iter: (("body_d", "body"),),
    Conseq: (("inner", "inner"),),
}


def _same(first: s.Formula, second: s.Formula) -> bool:
    return s.alpha_equivalent(first, second)


def _split_guard(pre: s.Formula, path: NodePath) -> tuple[s.Formula, s.Formula, s.BExpr]:
    if not isinstance(pre, s.And):
        raise DerivationError("Precondition must have the form p /\\ b", path)
    test = s.to_bexpr(pre.right)
    if test is None:
        raise DerivationError("Guard conjunct must be quantifier-free", path)
    return pre.left, pre.right, test


def conclusion(d: Derivation, path: NodePath = ()) -> s.Triple:
    """
    The triple a derivation proves.

    Raises:
        DerivationError: When a rule application does not fit its premises;
            the error carries the node path.
    """
    if isinstance(d, AssignAxiom):
        pre = s.substitute(d.post, {d.var: d.expr})
        return s.Triple(pre, s.Assign(d.var, d.expr), d.post)
    if isinstance(d, Comp):
        left = conclusion(d.left, (*path, "left"))
        right = conclusion(d.right, (*path, "right"))
        if not _same(left.post, d.mid):
            raise DerivationError("Left postcondition differs from the middle assertion", path)
        if not _same(right.pre, d.mid):
            raise DerivationError("Right precondition differs from the middle assertion", path)
        return s.Triple(left.pre, s.Seq(left.prog, right.prog), right.post)
    if isinstance(d, Cond):
        then = conclusion(d.then_d, (*path, "then"))
        orelse = conclusion(d.else_d, (*path, "else"))
        pre, guard, test = _split_guard(then.pre, (*path, "then"))
        expected_else = s.And(pre, s.Not(guard))
        if not _same(orelse.pre, expected_else):
            raise DerivationError("Else branch must assume p /\\ ~b", path)
        if not _same(then.post, orelse.post):
            raise DerivationError("Branches prove different postconditions", path)
        return s.Triple(pre, s.If(test, then.prog, orelse.prog), then.post)
    if isinstance(d, Iter):
        body = conclusion(d.body_d, (*path, "body"))
        inv, guard, test = _split_guard(body.pre, (*path, "body"))
        if not _same(body.post, inv):
            raise DerivationError("Loop body does not preserve the invariant", path)
        return s.Triple(inv, s.While(test, body.prog), s.And(inv, s.Not(guard)))
    if isinstance(d, Conseq):
        inner = conclusion(d.inner, (*path, "inner"))
        return s.Triple(d.pre, inner.prog, d.post)
    raise DerivationError(f"Unknown derivation node {type(d).__name__}", path)


@dataclass(frozen=True)
class Obligation:
    """A closed formula the consequence rule needs to be a theorem of arithmetic."""

    formula: s.Formula
    path: NodePath
    side: str

    @property
    def where(self) -> str:
        return "/".join(self.path) or "<root>"


def obligations(d: Derivation, path: NodePath = ()) -> Iterator[Obligation]:
    """Every consequence-rule implication in the tree, universally closed."""
    if isinstance(d, Conseq):
        inner = conclusion(d.inner, (*path, "inner"))
        yield Obligation(s.universal_closure(s.Imp(d.pre, inner.pre)), path, "pre")
        yield Obligation(s.universal_closure(s.Imp(inner.post, d.post)), path, "post")
    for attr, label in CHILDREN[type(d)]:
        yield from obligations(getattr(d, attr), (*path, label))


def _strip_closure(formula: s.Formula) -> s.Formula:
    while isinstance(formula, s.Forall):
        formula = formula.body
    return formula


def _implies(antecedent: s.Formula, consequent: s.Formula) -> bool:
    """Propositional entailment through ∧/∨ down to α-equivalent leaves."""
    if consequent == s.TRUE or antecedent == s.FALSE or _same(antecedent, consequent):
        return True
    if isinstance(consequent, s.And):
        return _implies(antecedent, consequent.left) and _implies(antecedent, consequent.right)
    if isinstance(antecedent, s.Or):
        return _implies(antecedent.left, consequent) and _implies(antecedent.right, consequent)
    if isinstance(consequent, s.Or) and (
        _implies(antecedent, consequent.left) or _implies(antecedent, consequent.right)
    ):
        return True
    if isinstance(antecedent, s.And):
        return _implies(antecedent.left, consequent) or _implies(antecedent.right, consequent)
    return False


def is_tautology(obligation: s.Formula) -> bool:
    """True for closed implications that hold by propositional reasoning alone."""
    body = _strip_closure(obligation)
    return isinstance(body, s.Imp) and _implies(body.left, body.right)


# -- checking ----------------------------------------------------------------


class Status(enum.Enum):
    VALID = "Valid"
    INVALID = "Invalid"
    VALID_MODULO_OBLIGATIONS = "ValidModuloObligations"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CheckResult:
    status: Status
    conclusion: s.Triple | None = None
    reason: str | None = None
    residual: tuple[Obligation, ...] = ()
    discharged: int = 0

    @property
    def exit_code(self) -> int:
        return {Status.VALID: 0, Status.INVALID: 1, Status.VALID_MODULO_OBLIGATIONS: 2}[
            self.status
        ]


def _triples_match(found: s.Triple, expected: s.Triple) -> bool:
    return (
        found.prog == expected.prog
        and _same(found.pre, expected.pre)
        and _same(found.post, expected.post)
    )


def check_derivation(
    d: Derivation, oracle_bound: int, expected: s.Triple | None = None
) -> CheckResult:
    """
    Check rule conformance and evaluate every consequence obligation.

    Args:
        d: Derivation tree.
        oracle_bound: Search bound for the obligation evaluator.
        expected: When given, the conclusion must be this triple.

    Returns:
        Invalid when a rule is misapplied or an obligation is false in the
        naturals, Valid when every obligation is decided true, otherwise
        ValidModuloObligations with the undecided ones.
    """
    try:
        found = conclusion(d)
        pending = list(obligations(d))
    except DerivationError as e:
        logger.info("Derivation rejected: %s", e)
        return CheckResult(Status.INVALID, reason=str(e))
    if expected is not None and not _triples_match(found, expected):
        reason = "Conclusion differs from the expected triple"
        return CheckResult(Status.INVALID, found, reason=reason)

    residual = []
    discharged = 0
    for obligation in pending:
        if is_tautology(obligation.formula):
            discharged += 1
            continue
        verdict = eval_formula(obligation.formula, {}, oracle_bound)
        if verdict is Verdict.FALSE:
            reason = f"{obligation.side} obligation at {obligation.where} is false"
            logger.info("Derivation rejected: %s", reason)
            return CheckResult(Status.INVALID, found, reason=reason)
        if verdict is Verdict.TRUE:
            discharged += 1
        else:
            residual.append(obligation)
    status = Status.VALID_MODULO_OBLIGATIONS if residual else Status.VALID
    logger.info("Derivation %s: %d discharged, %d open", status, discharged, len(residual))
    return CheckResult(status, found, residual=tuple(residual), discharged=discharged)


# -- generation --------------------------------------------------------------


def generate_sp_derivation(
    pre: s.Formula, prog: s.Stmt, xs: Sequence[s.Var], floor: int = 0
) -> Derivation:
    """
    A derivation of {pre} prog {SP(pre, prog)}.

    The conclusion's postcondition is the very formula ``sp.sp`` builds for
    the same arguments.
    """
    if isinstance(prog, s.Assign):
        post = sp_assign(pre, prog, xs, floor)
        return Conseq(pre, AssignAxiom(post, prog.var, prog.expr), post)
    if isinstance(prog, s.Seq):
        first = generate_sp_derivation(pre, prog.first, xs, floor)
        mid = conclusion(first).post
        second = generate_sp_derivation(mid, prog.second, xs, floor)
        return Comp(first, second, mid)
    if isinstance(prog, s.If):
        cond = s.formula_of(prog.cond)
        then_pre, else_pre = s.And(pre, cond), s.And(pre, s.Not(cond))
        then_d = generate_sp_derivation(then_pre, prog.then, xs, floor)
        else_d = generate_sp_derivation(else_pre, prog.orelse, xs, floor)
        post = s.Or(conclusion(then_d).post, conclusion(else_d).post)
        return Cond(Conseq(then_pre, then_d, post), Conseq(else_pre, else_d, post))
    if isinstance(prog, s.While):
        inv = invariant(pre, prog, xs, floor)
        cond = s.formula_of(prog.cond)
        body_pre = s.And(inv, cond)
        body = generate_sp_derivation(body_pre, prog.body, xs)
        loop = Iter(Conseq(body_pre, body, inv))
        return Conseq(pre, loop, s.And(inv, s.Not(cond)))
    raise TypeError(f"Not a program: {prog!r}")


# -- semantic checking -------------------------------------------------------


@dataclass(frozen=True)
class TripleReport:
    """
    Outcome of sweeping a triple over a box of initial states.

    Attributes:
        verdict: FALSE with a counterexample, TRUE when every relevant state
            was decided, UNKNOWN otherwise.
        counterexample: (initial, final) states violating the postcondition.
        checked: Initial states satisfying the precondition that were run.
    """

    verdict: Verdict
    counterexample: tuple[State, State] | None = None
    checked: int = 0
    undecided: int = 0


def check_triple_bounded(
    triple: s.Triple,
    xs: Sequence[s.Var],
    box: int,
    fuel: int,
    bound: int | None = None,
) -> TripleReport:
    bound = box if bound is None else bound
    checked = 0
    undecided = 0
    for start in box_states(xs, box):
        pre = eval_formula(triple.pre, start, bound)
        if pre is Verdict.FALSE:
            continue
        if pre is Verdict.UNKNOWN:
            undecided += 1
            continue
        outcome = exec_program(triple.prog, start, fuel)
        if isinstance(outcome, OutOfFuel):
            undecided += 1
            continue
        checked += 1
        post = eval_formula(triple.post, outcome.final, bound)
        if post is Verdict.FALSE:
            logger.info("Counterexample: %r -> %r", start, outcome.final)
            return TripleReport(Verdict.FALSE, (start, outcome.final), checked, undecided)
        if post is Verdict.UNKNOWN:
            undecided += 1
    verdict = Verdict.UNKNOWN if undecided else Verdict.TRUE
    return TripleReport(verdict, None, checked, undecided)


# -- arithmetic --------------------------------------------------------------


def _axioms() -> dict[str, s.Formula]:
    x, y = s.var(0), s.var(1)
    one, zero = s.One(), s.Zero()

    def eq(left: s.Expr, right: s.Expr) -> s.Formula:
        return s.Atom(s.Eq(left, right))

    axioms = {
        "S1": s.Not(eq(s.Add(x, one), zero)),
        "S2": s.Imp(eq(s.Add(x, one), s.Add(y, one)), eq(x, y)),
        "S3": eq(s.Add(x, zero), x),
        "S4": eq(s.Add(x, s.Add(y, one)), s.Add(s.Add(x, y), one)),
        "S5": eq(s.Mul(x, zero), zero),
        "S6": eq(s.Mul(x, s.Add(y, one)), s.Add(s.Mul(x, y), x)),
    }
    return {name: s.universal_closure(body) for name, body in axioms.items()}


PA_AXIOMS: dict[str, s.Formula] = _axioms()


def instantiate_induction(phi: s.Formula, x: s.Var) -> s.Formula:
    """φ(0) ∧ ∀x(φ(x) → φ(x+1)) → ∀x φ(x), closed over the remaining free variables."""
    base = s.substitute(phi, {x: s.Zero()})
    step = s.Forall(x, s.Imp(phi, s.substitute(phi, {x: s.Add(s.Variable(x), s.One())})))
    return s.universal_closure(s.Imp(s.And(base, step), s.Forall(x, phi)))


def corollary_formula(
    pre: s.Formula, prog: s.Stmt, post: s.Formula, xs: Sequence[s.Var]
) -> s.Formula:
    """The closure of p(x⃗) ∧ α_S(x⃗, y⃗) → q(y⃗/x⃗)."""
    supply = FreshSupply(pre, prog, post, xs)
    ys = supply.take(len(xs))
    relation = alpha(prog, xs, ys).formula
    body = s.Imp(s.And(pre, relation), s.substitute(post, s.renaming(xs, ys)))
    return s.universal_closure(body)


def walk(d: Derivation, path: NodePath = ()) -> Iterator[tuple[NodePath, Derivation]]:
    """Every node with its path, parents first."""
    yield path, d
    for attr, label in CHILDREN[type(d)]:
        yield from walk(getattr(d, attr), (*path, label))


def replace_at(d: Derivation, path: NodePath, node: Derivation) -> Derivation:
    """A copy of the tree with the node at `path` replaced."""
    if not path:
        return node
    head, *rest = path
    for attr, label in CHILDREN[type(d)]:
        if label == head:
            child = replace_at(getattr(d, attr), tuple(rest), node)
            return dataclasses.replace(d, **{attr: child})  # type: ignore[arg-type]
    raise DerivationError(f"No child '{head}'", path)

