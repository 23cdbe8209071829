"""
Tests for the published JSON schemas.
"""

import json

import jsonschema
import pytest

from hoarith.cli import main
from hoarith.corpus import PROGRAMS
from hoarith.derivation_io import dumps
from hoarith.hoare import generate_sp_derivation
from hoarith.interp import State, loop_trace, trace_lines
from hoarith.parser import parse_formula
from hoarith.printer import to_json
from hoarith.schemas import SCHEMA_NAMES, load_schema


@pytest.fixture(params=SCHEMA_NAMES)
def schema(request):
    return load_schema(request.param)


def test_schemas_are_well_formed(schema):
    """Every shipped schema is a valid draft-07 schema."""
    jsonschema.Draft7Validator.check_schema(schema)


def test_unknown_schema():
    """Only the published names load."""
    with pytest.raises(ValueError, match="Unknown schema 'proof'"):
        load_schema("proof")


class TestDerivationSchema:
    """Derivation documents."""

    @pytest.mark.parametrize("name, pre", [("min", "0 = 0"), ("count_up", "0 < x")])
    def test_generated_documents_validate(self, name, pre):
        """Generated derivations, loops included, match the schema."""
        program = PROGRAMS[name]
        derivation = generate_sp_derivation(program.formula(pre), program.prog, program.xs)
        document = json.loads(dumps(derivation, program.table.names))
        jsonschema.validate(document, load_schema("derivation"))

    def test_unknown_rule_rejected(self):
        """Rule names outside the five rules do not validate."""
        document = {
            "format": "hoarith-derivation",
            "version": 1,
            "root": {"rule": "Frame", "inner": {}},
        }
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(document, load_schema("derivation"))


class TestSyntaxSchema:
    """Tagged syntax trees."""

    def test_formula_validates(self):
        """Quantified formulas, numerals and variables."""
        formula = parse_formula("forall x3. x3 < x1 + 7 -> exists x4. x4 * 2 = x3")
        jsonschema.validate(to_json(formula), load_schema("syntax"))

    def test_program_validates(self):
        """Programs use the same encoding."""
        jsonschema.validate(to_json(PROGRAMS["count_up"].prog), load_schema("syntax"))

    def test_untagged_rejected(self):
        """Objects without a tag are not syntax nodes."""
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate({"left": 1}, load_schema("syntax"))


class TestTraceSchema:
    """Loop trace lines."""

    def test_lines_validate(self):
        """Each state is an object of naturals keyed by variable name."""
        program = PROGRAMS["count_up"]
        loop = program.prog.second
        trace = loop_trace(loop, State.of(program.xs, [3, 0]), 100)
        schema = load_schema("trace")
        lines = list(trace_lines(trace, program.xs))
        assert lines
        for line in lines:
            jsonschema.validate(json.loads(line), schema)


class TestCliOutput:
    """What the command line writes validates."""

    def test_sp_json(self, tmp_path, capsys):
        """sp --out json prints a syntax tree."""
        path = tmp_path / "count_up.whl"
        path.write_text("y := 0; while y < x do y := y + 1 od", encoding="utf-8")
        assert main(["sp", str(path), "--pre", "0 < x", "--out", "json"]) == 0
        jsonschema.validate(json.loads(capsys.readouterr().out), load_schema("syntax"))

    def test_prove_sp_file(self, tmp_path):
        """prove-sp writes a derivation document."""
        path = tmp_path / "step.whl"
        path.write_text("if x < y then x := x + 1 else y := y + 1 fi", encoding="utf-8")
        output = tmp_path / "step.deriv.json"
        assert main(["prove-sp", str(path), "--pre", "x < y", "-o", str(output)]) == 0
        document = json.loads(output.read_text(encoding="utf-8"))
        jsonschema.validate(document, load_schema("derivation"))
