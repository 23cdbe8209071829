"""
Tests for hoarith.acceptance, run at reduced sizes.
"""

import random

import pytest

from hoarith import syntax as s
from hoarith.acceptance import (
    SUITES,
    SentenceGenerator,
    SuiteReport,
    coding_suite,
    count_up_suite,
    definability_suite,
    derivation_suite,
    evaluator_suite,
    expand,
    is_broken,
    mutation_suite,
    mutations,
    order_suite,
    separation_suite,
    sp_pairs,
    triple_suite,
)
from hoarith.corpus import PROGRAMS, SEPARATION_CASES, TRIPLES
from hoarith.hoare import conclusion, generate_sp_derivation
from hoarith.parser import parse_formula


class TestSuiteReport:
    """Tests for SuiteReport."""

    def test_summary(self):
        """Passing and failing summaries."""
        report = SuiteReport("coding", checked=3, unknown=1)
        assert report.passed
        assert report.summary() == "coding: ok (3 checked, 1 unknown)"
        report.fail("pair is not injective")
        assert not report.passed
        assert report.summary() == "coding: 1 failures (3 checked, 1 unknown)"

    def test_registry(self):
        """Every suite is registered under its report name."""
        assert set(SUITES) == {
            "count_up",
            "definability",
            "separation",
            "triples",
            "derivations",
            "coding",
            "mutations",
            "nonstd_order",
            "evaluator",
        }


class TestExpand:
    """Tests for the exhaustive reference evaluation."""

    def test_bounded(self):
        """Bounded quantifiers are expanded."""
        assert expand(parse_formula("forall x1. x1 < 4 -> x1 * x1 < 10"), {})
        assert not expand(parse_formula("exists x1. x1 < 3 /\\ x1 = 3"), {})

    def test_unbounded(self):
        """Unbounded quantifiers cannot be expanded."""
        with pytest.raises(ValueError):
            expand(parse_formula("exists x1. x1 = 3"), {})


class TestSentenceGenerator:
    """Tests for the random sentence generator."""

    def test_sentences_are_closed_and_bounded(self):
        """Generated sentences have no free variables and only bounded quantifiers."""
        generator = SentenceGenerator(random.Random(7))
        for _ in range(50):
            sentence = generator.formula()
            assert not sentence.fv
            assert not s.unbounded_universals(sentence)
            expand(sentence, {})

    def test_one_unbounded_quantifier(self):
        """with_unbounded wraps a quantifier over x1."""
        sentence = SentenceGenerator(random.Random(3)).with_unbounded()
        assert isinstance(sentence, (s.Exists, s.Forall))
        assert sentence.var == s.Var(1)
        assert not sentence.fv


class TestMutations:
    """Tests for derivation mutants."""

    def test_one_mutant_per_node(self):
        """Every node of a generated derivation yields one labelled mutant."""
        program = PROGRAMS["min"]
        derivation = generate_sp_derivation(program.formula("0 = 0"), program.prog, program.xs)
        found = mutations(derivation)
        assert found
        assert all(mutant != derivation for _, mutant in found)
        assert any(label.startswith("swapped branches") for label, _ in found)

    def test_dead_branch_mutant_not_broken(self):
        """Changing the assertion after an unreachable else branch keeps the proof sound."""
        program = PROGRAMS["step_smaller"]
        derivation = generate_sp_derivation(program.formula("x < y"), program.prog, program.xs)
        expected = conclusion(derivation)
        assert not is_broken(derivation, expected, box=3, bound=4)
        verdicts = {
            label: is_broken(mutant, expected, box=3, bound=4)
            for label, mutant in mutations(derivation)
        }
        assert verdicts["post at else/inner"] is False
        assert any(verdicts.values())

    def test_wrong_conclusion_is_broken(self):
        """A mutant proving another triple is broken."""
        program = PROGRAMS["reset"]
        derivation = generate_sp_derivation(program.formula("0 = 0"), program.prog, program.xs)
        other = generate_sp_derivation(program.formula("x < 2"), program.prog, program.xs)
        assert is_broken(other, conclusion(derivation), box=2, bound=2)


class TestSuites:
    """The suites pass on small slices."""

    def test_coding(self):
        """Pairing, β and the defining formulas."""
        report = coding_suite(pair_limit=20, sequences=50, samples=20)
        assert report.passed, report.failures

    def test_order(self):
        """The nonstandard order axioms."""
        report = order_suite(samples=500)
        assert report.passed, report.failures
        assert report.checked == 500

    def test_evaluator(self):
        """Bounded sentences are exact and verdicts are stable."""
        report = evaluator_suite(sentences=40, bounds=(8, 16))
        assert report.passed, report.failures

    def test_count_up(self):
        """count_up computes the identity on x."""
        report = count_up_suite(max_x=6, fuel=100)
        assert report.passed, report.failures

    def test_count_up_every_x(self):
        """Every x up to 50 is run, witnessed and compared with its neighbouring outputs."""
        report = count_up_suite(fuel=200, alpha_bound=1, spread=1)
        assert report.passed, report.failures
        assert report.checked == 51

    def test_definability(self):
        """Witnesses exist exactly for the computed outputs."""
        programs = [PROGRAMS[name] for name in ("reset", "min", "swap", "count_up")]
        report = definability_suite(programs, fuel=200, box=2)
        assert report.passed, report.failures
        assert report.unknown == 0

    def test_triples(self):
        """Bounded triple checks agree with the corpus validity flags."""
        triples = [t for t in TRIPLES if t.program in ("reset", "min", "chain")]
        report = triple_suite(triples, box=2, bound=16, fuel=100)
        assert report.passed, report.failures

    def test_separation(self):
        """SP and the separated form never give opposite verdicts."""
        cases = [c for c in SEPARATION_CASES if c.program in ("reset", "min")]
        report = separation_suite(cases, bounds=(16, 32), fuel=100, max_unknown_rate=1.01)
        assert not [f for f in report.failures if "unknown rate" not in f]

    def test_separation_with_loop(self):
        """count_up from 0 < x: no contradictions, and runs confirm the reached states."""
        cases = [c for c in SEPARATION_CASES if c.program == "count_up"]
        assert cases
        report = separation_suite(cases, fuel=100, loop_bounds=(2,))
        assert report.passed, report.failures
        assert report.checked == 16

    def test_derivations(self):
        """Generated derivations are never Invalid."""
        report = derivation_suite(oracle_bound=2, recheck_bound=3, loop_bound=1, samples=4)
        assert report.passed, report.failures

    def test_derivations_recheck_at_1024(self):
        """Open obligations survive states and searches up to 1024."""
        report = derivation_suite(oracle_bound=2, loop_bound=1, samples=2)
        assert report.passed, report.failures
        assert report.checked == len(sp_pairs())

    def test_mutations(self):
        """Mutants are rejected."""
        report = mutation_suite(count=5, oracle_bound=2)
        assert report.passed, report.failures
        assert report.checked == 5

    def test_mutations_at_defaults(self):
        """Twenty broken mutants are found and every one is rejected."""
        report = mutation_suite()
        assert report.passed, report.failures
        assert report.checked == 20
