"""
Desk-scale acceptance suites.

Each suite sweeps a finite slice of the naturals and returns a SuiteReport.
Everything the calculus proves in arithmetic is true in the naturals, so a
single refuted case is a genuine failure; undecided cases are counted but do
not fail a suite unless the suite says otherwise.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from . import coding
from . import syntax as s
from .arith_sem import alpha
from .config import DEFAULT_FUEL
from .corpus import PROGRAMS, SEPARATION_CASES, TRIPLES, CorpusTriple, Program, SeparationCase
from .evaluator import Verdict, check_alpha_witness, eval_formula
from .exceptions import DerivationError
from .hoare import (
    AssignAxiom,
    Comp,
    Cond,
    Conseq,
    Derivation,
    Iter,
    Status,
    check_derivation,
    check_triple_bounded,
    conclusion,
    generate_sp_derivation,
    obligations,
    replace_at,
    walk,
)
from .interp import eval_expr, holds, run_function
from .nonstd_order import KElem, NonStd, Std, k_less, k_predecessor, k_successor
from .sp import box_states, reachable_states, separation_rhs, separation_witness, sp

logger = logging.getLogger(__name__)


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    unknown: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        logger.warning("%s: %s", self.name, message)
        self.failures.append(message)

    def summary(self) -> str:
        status = "ok" if self.passed else f"{len(self.failures)} failures"
        return f"{self.name}: {status} ({self.checked} checked, {self.unknown} unknown)"


# -- the count-up program ----------------------------------------------------


def count_up_suite(
    max_x: int = 50, fuel: int = DEFAULT_FUEL, alpha_bound: int = 4, spread: int = 2
) -> SuiteReport:
    """
    y := 0; while y < x do y := y + 1 od computes the identity on x.

    For every x, α is evaluated at each output (a, b) ≠ (x, x) with a and b
    within `spread` of x; the evaluation must never come out True.
    """
    report = SuiteReport("count_up")
    program = PROGRAMS["count_up"]
    prog, xs = program.prog, program.xs
    relation = alpha(prog, xs, [s.Var(10), s.Var(11)]).formula
    for x in range(max_x + 1):
        report.checked += 1
        if run_function(prog, xs, (x, 0), fuel) != (x, x):
            report.fail(f"run_function({x}, 0) is not ({x}, {x})")
        for y0 in (0, 5):
            verdict, _ = check_alpha_witness(prog, xs, (x, y0), (x, x), fuel)
            if verdict is not Verdict.TRUE:
                report.fail(f"no witness for α({x}, {y0}; {x}, {x})")
        near = range(max(0, x - spread), x + spread + 1)
        for outs in itertools.product(near, repeat=2):
            if outs == (x, x):
                continue
            env = {xs[0]: x, xs[1]: 0, s.Var(10): outs[0], s.Var(11): outs[1]}
            verdict = eval_formula(relation, env, alpha_bound)
            if verdict is Verdict.TRUE:
                report.fail(f"α({x}, 0; {outs}) evaluated True")
            report.unknown += verdict is Verdict.UNKNOWN
    return report


# -- definability ------------------------------------------------------------


def _inputs(program: Program, box: int | None = None) -> Iterable[tuple[int, ...]]:
    limit = program.box if box is None else min(box, program.box)
    return itertools.product(range(limit + 1), repeat=len(program.xs))


def definability_suite(
    programs: Iterable[Program] | None = None, fuel: int = 2000, box: int | None = None
) -> SuiteReport:
    """check_alpha_witness agrees with run_function on every input in each program's box."""
    report = SuiteReport("definability")
    for program in programs if programs is not None else PROGRAMS.values():
        prog, xs = program.prog, program.xs
        for args in _inputs(program, box):
            report.checked += 1
            expected = run_function(prog, xs, args, fuel)
            if expected is None:
                verdict, _ = check_alpha_witness(prog, xs, args, args, fuel)
                report.unknown += 1
                if verdict is Verdict.TRUE:
                    report.fail(f"{program.name}{args}: witness for a diverging run")
                continue
            verdict, _ = check_alpha_witness(prog, xs, args, expected, fuel)
            if verdict is not Verdict.TRUE:
                report.fail(f"{program.name}{args}: no witness for {expected}")
            wrong = (expected[0] + 1, *expected[1:])
            verdict, _ = check_alpha_witness(prog, xs, args, wrong, fuel)
            if verdict is not Verdict.FALSE:
                report.fail(f"{program.name}{args}: {wrong} not refuted")
    return report


# -- separation ----------------------------------------------------------------


def separation_suite(
    cases: Sequence[SeparationCase] = SEPARATION_CASES,
    bounds: Sequence[int] = (64, 128, 256),
    fuel: int = DEFAULT_FUEL,
    max_unknown_rate: float = 0.1,
    loop_bounds: Sequence[int] = (2, 4),
) -> SuiteReport:
    """
    SP(p, S) and ∃u⃗(p(u⃗/x⃗) ∧ α_S(u⃗/x⃗, x⃗/y⃗)) never disagree and match execution.

    The oracle enumerates pre-states in the same box; the cases are programs
    whose final values never fall below the initial ones they depend on, so
    every final state in the box has a pre-state in the box. Where bounded
    evaluation leaves the separated form undecided, a run from a box
    pre-state with a verified α_S witness decides it True.

    Programs with loops are evaluated at `loop_bounds`, since their sequence
    codes outgrow any practical bound; the unknown-rate limits apply to the
    loop-free cases only.
    """
    report = SuiteReport("separation")
    unknown_by_bound = dict.fromkeys(bounds, 0)
    total = 0
    for case in cases:
        program = case.source
        pre = program.formula(case.pre)
        prog, xs = program.prog, program.xs
        case_bounds = bounds if program.loop_free else loop_bounds
        post = sp(pre, prog, xs).formula
        rhs = separation_rhs(pre, prog, xs)
        reach = reachable_states(pre, prog, xs, case.box, fuel, max(case_bounds))
        if not reach.complete:
            report.notes.append(f"{case.program}: incomplete oracle")
        case_unknown = 0
        for state in box_states(xs, case.box):
            total += program.loop_free
            reachable = state.project(xs) in reach.states
            confirmed: bool | None = None
            for bound in case_bounds:
                left = eval_formula(post, state, bound)
                right = eval_formula(rhs, state, bound)
                if right is Verdict.UNKNOWN:
                    if confirmed is None:
                        found = separation_witness(pre, prog, xs, state, case.box, fuel, bound)
                        confirmed = found is not None
                    if confirmed:
                        right = Verdict.TRUE
                report.checked += 1
                if Verdict.UNKNOWN in (left, right):
                    report.unknown += 1
                    case_unknown += 1
                    if program.loop_free:
                        unknown_by_bound[bound] += 1
                if Verdict.UNKNOWN not in (left, right) and left is not right:
                    report.fail(f"{case.program} at {state!r}: SP {left}, separation {right}")
                for name, verdict in (("SP", left), ("separation", right)):
                    if verdict is Verdict.FALSE and reachable:
                        report.fail(f"{case.program}: {name} False at reachable {state!r}")
                    if verdict is Verdict.TRUE and not reachable and reach.complete:
                        report.fail(f"{case.program}: {name} True at unreachable {state!r}")
        if not program.loop_free:
            report.notes.append(f"{case.program}: {case_unknown} undecided comparisons")
    rates = [unknown_by_bound[b] / total if total else 0.0 for b in bounds]
    report.notes.append("unknown rates: " + ", ".join(f"{r:.3f}" for r in rates))
    if rates and rates[-1] >= max_unknown_rate:
        report.fail(f"unknown rate {rates[-1]:.3f} at bound {bounds[-1]}")
    if any(later > earlier for earlier, later in zip(rates, rates[1:])):
        report.fail("unknown rate grows with the bound")
    return report


# -- triples against SP -------------------------------------------------------


def triple_suite(
    triples: Sequence[CorpusTriple] = TRIPLES,
    box: int = 6,
    bound: int = 64,
    loop_bound: int = 3,
    fuel: int = DEFAULT_FUEL,
) -> SuiteReport:
    """Bounded triple checking agrees with SP(p, S) → q at every tested state."""
    report = SuiteReport("triples")
    for corpus_triple in triples:
        program = corpus_triple.source
        xs = program.xs
        limit = min(box, program.box)
        triple = corpus_triple.triple()
        eval_bound = bound if program.loop_free else loop_bound
        result = check_triple_bounded(triple, xs, limit, fuel, bound)
        report.checked += 1
        if (result.verdict is Verdict.FALSE) == corpus_triple.valid:
            report.fail(f"{corpus_triple.name}: verdict {result.verdict}")
        if result.verdict is Verdict.FALSE and result.counterexample is None:
            report.fail(f"{corpus_triple.name}: False without a counterexample")

        claim = s.Imp(sp(triple.pre, triple.prog, xs).formula, triple.post)
        tested = {state for state in box_states(xs, limit)}
        if result.counterexample is not None:
            tested.add(result.counterexample[1])
        refuted = False
        for state in sorted(tested, key=lambda w: w.project(xs)):
            verdict = eval_formula(claim, state, eval_bound)
            report.unknown += verdict is Verdict.UNKNOWN
            if verdict is Verdict.FALSE:
                refuted = True
                if result.verdict is Verdict.TRUE:
                    report.fail(f"{corpus_triple.name}: SP → q False at {state!r}")
            if (
                result.counterexample is not None
                and state == result.counterexample[1]
                and verdict is Verdict.TRUE
            ):
                report.fail(f"{corpus_triple.name}: SP → q True at the counterexample")
        if program.loop_free and corpus_triple.valid == refuted:
            report.fail(f"{corpus_triple.name}: SP → q disagrees with the triple's validity")
    return report


# -- derivations ---------------------------------------------------------------


def sp_pairs() -> list[tuple[Program, str]]:
    """Distinct (program, precondition) pairs from the separation cases and triples."""
    seen: dict[tuple[str, str], Program] = {}
    for case in SEPARATION_CASES:
        seen.setdefault((case.program, case.pre), case.source)
    for corpus_triple in TRIPLES:
        seen.setdefault((corpus_triple.program, corpus_triple.pre), corpus_triple.source)
    return [(program, pre) for (_, pre), program in seen.items()]


def derivation_suite(
    oracle_bound: int = 6,
    recheck_bound: int = 1024,
    loop_bound: int = 2,
    samples: int = 32,
    seed: int = 0,
) -> SuiteReport:
    """
    Every generated SP derivation checks as Valid or ValidModuloObligations,
    and no open obligation turns False at a larger bound.

    Open obligations of loop-free programs are re-evaluated at `samples`
    random states with values up to `recheck_bound`, searching inner
    quantifiers up to the same bound. Loop invariants quantify over
    sequence codes, so obligations of programs with loops are checked at
    `loop_bound` and re-checked one above it.
    """
    report = SuiteReport("derivations")
    rng = random.Random(seed)
    for program, pre_text in sp_pairs():
        pre = program.formula(pre_text)
        derivation = generate_sp_derivation(pre, program.prog, program.xs)
        result = check_derivation(derivation, oracle_bound if program.loop_free else loop_bound)
        report.checked += 1
        if result.status is Status.INVALID:
            report.fail(f"{program.name} from {pre_text}: {result.reason}")
            continue
        for obligation in result.residual:
            report.unknown += 1
            if program.loop_free:
                refuted = _refuted_at_samples(obligation.formula, rng, samples, recheck_bound)
            else:
                refuted = eval_formula(obligation.formula, {}, loop_bound + 1) is Verdict.FALSE
            if refuted:
                report.fail(f"{program.name}: obligation at {obligation.where} is False")
    return report


def _refuted_at_samples(
    obligation: s.Formula, rng: random.Random, samples: int, bound: int
) -> bool:
    body = obligation
    while isinstance(body, s.Forall):
        body = body.body
    free = sorted(body.fv)
    for _ in range(samples):
        env = {v: rng.randint(0, bound) for v in free}
        if eval_formula(body, env, bound) is Verdict.FALSE:
            logger.info("Obligation refuted at %s", env)
            return True
    return False


# -- mutations -----------------------------------------------------------------


def _mutant(node: Derivation) -> tuple[str, Derivation] | None:
    if isinstance(node, Comp):
        return "mid", Comp(node.left, node.right, s.FALSE)
    if isinstance(node, Cond):
        return "swapped branches", Cond(node.else_d, node.then_d)
    if isinstance(node, Iter) and isinstance(node.body_d, Conseq):
        body = node.body_d
        return "invariant", Iter(Conseq(body.pre, body.inner, s.Atom(s.Eq(s.One(), s.One()))))
    if isinstance(node, Conseq):
        return "post", Conseq(node.pre, node.inner, s.FALSE)
    if isinstance(node, AssignAxiom):
        return "assignment", AssignAxiom(node.post, node.var, s.Add(node.expr, s.One()))
    return None


def mutations(d: Derivation) -> list[tuple[str, Derivation]]:
    """Rule-breaking variants of a derivation, one per node."""
    result = []
    for path, node in walk(d):
        found = _mutant(node)
        if found is not None:
            label, replacement = found
            where = "/".join(path) or "<root>"
            result.append((f"{label} at {where}", replace_at(d, path, replacement)))
    return result


def is_broken(mutant: Derivation, expected: s.Triple, box: int, bound: int) -> bool:
    """
    Whether a mutant is wrong regardless of how the checker decides it.

    A mutant is broken when no rule produces its tree, when it concludes a
    different triple, or when one of its consequence implications fails at
    a concrete state with values up to `box`. Mutants that still describe
    sound reasoning, such as a changed assertion after a dead branch, are
    not broken.
    """
    try:
        found = conclusion(mutant)
        pending = list(obligations(mutant))
    except DerivationError:
        return True
    if found != expected:
        return True
    for obligation in pending:
        body = obligation.formula
        while isinstance(body, s.Forall):
            body = body.body
        free = sorted(body.fv)
        for values in itertools.product(range(box + 1), repeat=len(free)):
            if eval_formula(body, dict(zip(free, values)), bound) is Verdict.FALSE:
                return True
    return False


def mutation_suite(
    count: int = 20, seed: int = 0, oracle_bound: int = 4, box: int = 3
) -> SuiteReport:
    """
    Broken mutants of valid derivations are rejected as Invalid.

    Mutants that `is_broken` does not refute are skipped and noted; `count`
    broken mutants must be available.
    """
    report = SuiteReport("mutations")
    candidates = []
    for program, pre_text in sp_pairs():
        if not program.loop_free and program.name != "count_up":
            continue
        derivation = generate_sp_derivation(program.formula(pre_text), program.prog, program.xs)
        expected = conclusion(derivation)
        candidates += [
            (program.name, label, mutant, expected) for label, mutant in mutations(derivation)
        ]
    random.Random(seed).shuffle(candidates)
    limit = min(box, oracle_bound)
    skipped = []
    for name, label, mutant, expected in candidates:
        if report.checked == count:
            break
        if not is_broken(mutant, expected, limit, oracle_bound):
            skipped.append(f"{name}: {label}")
            continue
        report.checked += 1
        result = check_derivation(mutant, oracle_bound, expected)
        if result.status is not Status.INVALID:
            report.fail(f"{name}: mutant '{label}' was {result.status}")
    if skipped:
        report.notes.append("not refuted, skipped: " + "; ".join(skipped))
    if report.checked < count:
        report.fail(f"only {report.checked} broken mutants available")
    return report


# -- coding --------------------------------------------------------------------


def coding_suite(
    seed: int = 0, pair_limit: int = 200, sequences: int = 1000, samples: int = 200
) -> SuiteReport:
    """Pairing is a bijection, β decodes what seq_encode stores, formulas match functions."""
    report = SuiteReport("coding")
    rng = random.Random(seed)
    codes = set()
    for x, y in itertools.product(range(pair_limit + 1), repeat=2):
        z = coding.pair(x, y)
        codes.add(z)
        if coding.unpair(z) != (x, y):
            report.fail(f"unpair(pair({x}, {y})) != ({x}, {y})")
    report.checked += len(codes)
    if len(codes) != (pair_limit + 1) ** 2:
        report.fail("pair is not injective")
    for z in range(coding.pair(0, pair_limit) + 1):
        x, y = coding.unpair(z)
        if coding.pair(x, y) != z:
            report.fail(f"pair(unpair({z})) != {z}")

    for _ in range(sequences):
        values = [rng.randint(0, 1000) for _ in range(rng.randint(1, 6))]
        code = coding.seq_encode(values)
        report.checked += 1
        decoded = [coding.seq_elem(code, i) for i in range(len(values))]
        if decoded != values:
            report.fail(f"seq_elem(seq_encode({values})) = {decoded}")

    a, b, c, d = (s.Var(k) for k in range(1, 5))
    checks: list[tuple[str, s.Formula, Callable[[random.Random], dict[s.Var, int]], Callable]] = [
        (
            "pair",
            coding.pair_formula(a, b, c),
            lambda r: _maybe(r, {a: r.randint(0, 30), b: r.randint(0, 30)}, c,
                             lambda e: coding.pair(e[a], e[b]), 2000),
            lambda e: coding.pair(e[a], e[b]) == e[c],
        ),
        (
            "unpair",
            coding.unpair_formula(a, b, c),
            lambda r: _maybe_pair(r, a, b, c, 400),
            lambda e: coding.unpair(e[a]) == (e[b], e[c]),
        ),
        (
            "beta",
            coding.beta_formula(a, b, c, d),
            lambda r: _maybe(r, {a: r.randint(0, 300), b: r.randint(0, 10), c: r.randint(0, 5)},
                             d, lambda e: coding.beta(e[a], e[b], e[c]), 60),
            lambda e: coding.beta(e[a], e[b], e[c]) == e[d],
        ),
        (
            "elem",
            coding.elem_formula(a, b, c),
            lambda r: _maybe(r, {a: r.randint(0, 150), b: r.randint(0, 3)}, c,
                             lambda e: coding.seq_elem(e[a], e[b]), 40),
            lambda e: coding.seq_elem(e[a], e[b]) == e[c],
        ),
    ]  # fmt: skip
    for name, formula, sample, truth in checks:
        for _ in range(samples):
            env = sample(rng)
            verdict = eval_formula(formula, env, 0)
            report.checked += 1
            if verdict is not Verdict.of(truth(env)):
                report.fail(f"{name} formula gave {verdict} at {env}")
    return report


def _maybe(
    rng: random.Random,
    env: dict[s.Var, int],
    target: s.Var,
    value: Callable[[dict[s.Var, int]], int],
    noise: int,
) -> dict[s.Var, int]:
    """Put the right value at target half of the time, a random one otherwise."""
    env[target] = value(env) if rng.random() < 0.5 else rng.randint(0, noise)
    return env


def _maybe_pair(
    rng: random.Random, z: s.Var, left: s.Var, right: s.Var, limit: int
) -> dict[s.Var, int]:
    code = rng.randint(0, limit)
    first, second = coding.unpair(code)
    if rng.random() < 0.5:
        first, second = rng.randint(0, 30), rng.randint(0, 30)
    return {z: code, left: first, right: second}


# -- nonstandard order ---------------------------------------------------------


def _random_kelem(rng: random.Random) -> KElem:
    if rng.random() < 0.4:
        return Std(rng.randint(0, 20))
    return NonStd(Fraction(rng.randint(-6, 6), rng.randint(1, 4)), rng.randint(-5, 5))


def order_suite(samples: int = 10000, seed: int = 0) -> SuiteReport:
    """Strict total order, standard initial segment, discreteness, no least nonstandard."""
    report = SuiteReport("nonstd_order")
    rng = random.Random(seed)
    for _ in range(samples):
        u, v, w = (_random_kelem(rng) for _ in range(3))
        report.checked += 1
        if k_less(u, u):
            report.fail(f"{u} < {u}")
        if [k_less(u, v), k_less(v, u), u == v].count(True) != 1:
            report.fail(f"trichotomy fails for {u}, {v}")
        if k_less(u, v) and k_less(v, w) and not k_less(u, w):
            report.fail(f"transitivity fails for {u}, {v}, {w}")
        if isinstance(u, Std) and isinstance(v, NonStd) and not k_less(u, v):
            report.fail(f"{v} is not above the standard {u}")
        after = k_successor(u)
        if not k_less(u, after) or (k_less(u, v) and k_less(v, after)):
            report.fail(f"{u} and its successor are not adjacent")
        before = k_predecessor(u)
        if before is not None and (k_successor(before) != u or not k_less(before, u)):
            report.fail(f"predecessor of {u} is wrong")
        if isinstance(u, NonStd) and not isinstance(before, NonStd):
            report.fail(f"nonstandard {u} has no nonstandard element below it")
    return report


# -- evaluator -----------------------------------------------------------------


class SentenceGenerator:
    """Random closed formulas whose quantifiers range below small terms."""

    def __init__(
        self, rng: random.Random, max_depth: int = 3, variable_bounds: bool = True
    ) -> None:
        self.rng = rng
        self.max_depth = max_depth
        self.variable_bounds = variable_bounds

    def term(self, scope: Sequence[s.Var], depth: int = 0) -> s.Expr:
        r = self.rng.random()
        if depth >= 2 or r < 0.5:
            if scope and self.rng.random() < 0.6:
                return s.Variable(self.rng.choice(list(scope)))
            return s.numeral(self.rng.randint(0, 4))
        left, right = self.term(scope, depth + 1), self.term(scope, depth + 1)
        return s.Add(left, right) if r < 0.8 else s.Mul(left, right)

    def bound(self, scope: Sequence[s.Var]) -> s.Expr:
        if self.variable_bounds and scope and self.rng.random() < 0.4:
            v = s.Variable(self.rng.choice(list(scope)))
            return s.Add(v, s.numeral(self.rng.randint(0, 2)))
        return s.numeral(self.rng.randint(0, 5))

    def formula(self, scope: Sequence[s.Var] = (), depth: int = 0) -> s.Formula:
        choice = self.rng.randint(0, 9) if depth < self.max_depth else 0
        if choice <= 2:
            test = s.Less if self.rng.random() < 0.5 else s.Eq
            return s.Atom(test(self.term(scope), self.term(scope)))
        if choice == 3:
            return s.Not(self.formula(scope, depth + 1))
        if choice <= 6:
            kind = self.rng.choice([s.And, s.Or, s.Imp, s.Iff])
            return kind(self.formula(scope, depth + 1), self.formula(scope, depth + 1))
        v = s.Var(len(scope) + 1)
        kind = s.BoundedForall if choice == 7 else s.BoundedExists
        return kind(v, self.bound(scope), self.formula([*scope, v], depth + 1))

    def with_unbounded(self) -> s.Formula:
        """One unbounded quantifier around a formula whose inner bounds are numerals."""
        v = s.Var(1)
        inner = SentenceGenerator(self.rng, self.max_depth - 1, variable_bounds=False)
        body = inner.formula([v], 1)
        return s.Exists(v, body) if self.rng.random() < 0.5 else s.Forall(v, body)


def expand(formula: s.Formula, env: dict[s.Var, int]) -> bool:
    """Exhaustive truth of a formula whose quantifiers are all bounded."""
    if isinstance(formula, s.Atom):
        return holds(formula.test, env)
    if isinstance(formula, s.Not):
        return not expand(formula.arg, env)
    if isinstance(formula, s.And):
        return expand(formula.left, env) and expand(formula.right, env)
    if isinstance(formula, s.Or):
        return expand(formula.left, env) or expand(formula.right, env)
    if isinstance(formula, s.Imp):
        return not expand(formula.left, env) or expand(formula.right, env)
    if isinstance(formula, s.Iff):
        return expand(formula.left, env) == expand(formula.right, env)
    if isinstance(formula, (s.BoundedForall, s.BoundedExists)):
        values = range(eval_expr(formula.bound, env))
        results = (expand(formula.body, {**env, formula.var: k}) for k in values)
        return all(results) if isinstance(formula, s.BoundedForall) else any(results)
    raise ValueError(f"Unbounded quantifier in {formula}")


def evaluator_suite(
    sentences: int = 500, seed: int = 0, bounds: Sequence[int] = (8, 64, 512)
) -> SuiteReport:
    """Bounded sentences evaluate exactly; verdicts never change once definite."""
    report = SuiteReport("evaluator")
    rng = random.Random(seed)
    generator = SentenceGenerator(rng)
    for _ in range(sentences):
        sentence = generator.formula()
        report.checked += 1
        verdict = eval_formula(sentence, {}, bounds[0])
        if verdict is not Verdict.of(expand(sentence, {})):
            report.fail(f"{sentence}: {verdict}")
    for _ in range(sentences):
        sentence = generator.with_unbounded()
        report.checked += 1
        previous = Verdict.UNKNOWN
        for bound in bounds:
            verdict = eval_formula(sentence, {}, bound)
            if previous is not Verdict.UNKNOWN and verdict is not previous:
                report.fail(f"{sentence}: {previous} then {verdict} at bound {bound}")
            previous = verdict
        report.unknown += previous is Verdict.UNKNOWN
    return report


SUITES: dict[str, Callable[[], SuiteReport]] = {
    "count_up": count_up_suite,
    "definability": definability_suite,
    "separation": separation_suite,
    "triples": triple_suite,
    "derivations": derivation_suite,
    "coding": coding_suite,
    "mutations": mutation_suite,
    "nonstd_order": order_suite,
    "evaluator": evaluator_suite,
}


def run_suites(names: Iterable[str] | None = None) -> list[SuiteReport]:
    reports = []
    for name in names if names is not None else SUITES:
        report = SUITES[name]()
        logger.info("%s", report.summary())
        reports.append(report)
    return reports
