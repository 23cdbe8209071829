"""
Tests for hoarith.smt.
"""

from pysmt.shortcuts import get_free_variables

from hoarith import syntax as s
from hoarith.hoare import Obligation
from hoarith.parser import parse_formula
from hoarith.smt import LOGIC, export_obligations, formula_to_pysmt, obligation_to_smtlib


def closed(text):
    return s.universal_closure(parse_formula(text))


class TestFormulaToPysmt:
    """Tests for the formula translation."""

    def test_free_variables_become_symbols(self):
        """Free variables map to integer symbols of the same name."""
        node = formula_to_pysmt(parse_formula("x1 < x2 + 1"))
        assert {v.symbol_name() for v in get_free_variables(node)} == {"x1", "x2"}

    def test_quantifiers_relativized(self):
        """Quantified variables are guarded by a nonnegativity test."""
        node = formula_to_pysmt(parse_formula("exists x1. x1 = 2"))
        assert node.is_exists()
        assert node.arg(0).is_and()
        assert not get_free_variables(node)

    def test_bounded_quantifier(self):
        """Bounded quantifiers add their bound to the guard."""
        node = formula_to_pysmt(parse_formula("forall x1. x1 < 3 -> x1 * x1 < 9"))
        assert node.is_forall()
        assert node.arg(0).is_implies()


class TestObligationToSmtlib:
    """Tests for the SMT-LIB script rendering."""

    def test_script_shape(self):
        """The closure is declared, guarded and the negation asserted."""
        script = obligation_to_smtlib(closed("x1 = 0 -> x1 + x2 = x2"))
        lines = script.splitlines()
        assert lines[0] == f"(set-logic {LOGIC})"
        assert "(declare-fun x1 () Int)" in lines
        assert "(declare-fun x2 () Int)" in lines
        assert sum(line.startswith("(assert ") for line in lines) == 3
        assert lines[-3].startswith("(assert (not ")
        assert lines[-2:] == ["(check-sat)", "(exit)"]

    def test_open_formula_is_closed(self):
        """Free variables of a bare formula are declared too."""
        script = obligation_to_smtlib(parse_formula("x3 < x3 + 1"))
        assert "(declare-fun x3 () Int)" in script.splitlines()

    def test_comment_from_obligation(self):
        """Obligations are labelled with their side and node path."""
        obligation = Obligation(closed("x1 = x1"), ("left", "inner"), "post")
        script = obligation_to_smtlib(obligation)
        assert script.splitlines()[0] == "; post obligation at left/inner"

    def test_sentence_has_no_declarations(self):
        """Closed arithmetic facts need no constants."""
        script = obligation_to_smtlib(parse_formula("1 + 1 = 2"))
        assert "declare-fun" not in script


class TestExportObligations:
    """Tests for export_obligations."""

    def test_numbered_files(self, tmp_path):
        """One file per obligation, numbered from 1."""
        obligations = [
            Obligation(closed("x1 = x1"), (), "pre"),
            Obligation(closed("x1 < x1 + 1"), (), "post"),
        ]
        paths = export_obligations(obligations, tmp_path / "out")
        assert [p.name for p in paths] == ["obligation-001.smt2", "obligation-002.smt2"]
        assert paths[1].read_text(encoding="utf-8").startswith("; post obligation at <root>")

    def test_nothing_to_export(self, tmp_path):
        """The directory is still created."""
        assert export_obligations([], tmp_path / "empty") == []
        assert (tmp_path / "empty").is_dir()
