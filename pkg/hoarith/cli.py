"""
Command line interface.

Checking commands exit with 0 for True or Valid, 1 for False, Invalid or an
error, and 2 for Unknown or ValidModuloObligations. Usage errors exit 64.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Callable, NoReturn

from . import __version__, coding, derivation_io
from . import syntax as s
from .acceptance import SUITES, run_suites
from .arith_sem import alpha, alpha_component
from .config import OUTPUT_FORMATS, Config
from .evaluator import Verdict, eval_formula
from .exceptions import ConfigError, HoarithError
from .hoare import (
    check_derivation,
    check_triple_bounded,
    generate_sp_derivation,
    is_tautology,
    obligations,
)
from .interp import OutOfFuel, exec_program, loop_trace, parse_state, trace_lines
from .nonstd_order import compare, format_kelem, k_predecessor, k_successor, parse_kelem
from .parser import VarTable, parse_expr, parse_formula, parse_program, parse_vars
from .printer import Names, to_json, to_sexpr, to_text
from .smt import export_obligations, obligation_to_smtlib
from .sp import box_states, separation_rhs, sp

logger = logging.getLogger(__name__)

EX_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


# -- helpers -----------------------------------------------------------------


def _read(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    try:
        return Path(name).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"Cannot read {name}: {e.strerror}") from e


def _config(args: argparse.Namespace) -> Config:
    try:
        return Config.from_env().with_overrides(
            fuel=args.fuel, bound=args.bound, box=args.box, output_format=args.out
        )
    except ConfigError as e:
        raise UsageError(str(e)) from e


class _Session:
    """
    A program with the formulas about it, parsed through one identifier table.

    Identifiers are numbered in the order they are declared: ``--vars`` first,
    then the names bound by ``--input``, then the program and its formulas.
    """

    def __init__(self, args: argparse.Namespace) -> None:
        self.table = VarTable()
        self.config = _config(args)
        declared = parse_vars(args.vars, self.table) if getattr(args, "vars", None) else []
        self.start = parse_state(getattr(args, "input", None) or "", self.table)
        self.prog = parse_program(_read(args.program), self.table)
        self.formulas = {
            key: parse_formula(getattr(args, key), self.table)
            for key in ("pre", "post")
            if getattr(args, key, None) is not None
        }
        if declared:
            self.xs = declared
        else:
            found = set(self.prog.fv)
            for formula in self.formulas.values():
                found |= formula.fv
            self.xs = sorted(found)

    @property
    def names(self) -> dict[s.Var, str]:
        return self.table.names

    def render(self, node: s.AnyNode, names: Names | None = None) -> str:
        return _render(node, self.config, names if names is not None else self.names)


def _render(node: s.AnyNode, config: Config, names: Names | None) -> str:
    if config.output_format == "sexpr":
        return to_sexpr(node)
    if config.output_format == "json":
        return json.dumps(to_json(node))
    if config.output_format == "smt2":
        raise UsageError("smt2 output is only available for export-obligations")
    return to_text(node, names)


def _state_text(state: Any, xs: Sequence[s.Var], names: Names) -> str:
    return " ".join(f"{names.get(v, v.name)}={state.get(v, 0)}" for v in xs)


# -- commands ----------------------------------------------------------------


def cmd_parse(args: argparse.Namespace) -> int:
    config = _config(args)
    table = VarTable()
    text = _read(args.program)
    readers: dict[str, Callable[[str, VarTable], s.AnyNode]] = {
        "program": parse_program,
        "formula": parse_formula,
        "term": parse_expr,
    }
    node = readers[args.kind](text, table)
    print(_render(node, config, table.names))
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    session = _Session(args)
    start = session.start
    xs = session.xs or sorted(start)
    if args.trace:
        if not isinstance(session.prog, s.While):
            raise UsageError("--trace needs a program that is a single while loop")
        trace = loop_trace(session.prog, start, session.config.fuel)
        if isinstance(trace, OutOfFuel):
            print(f"out of fuel after {trace.fuel} iterations", file=sys.stderr)
            return 2
        for line in trace_lines(trace, xs):
            print(line)
        return 0
    outcome = exec_program(session.prog, start, session.config.fuel)
    if isinstance(outcome, OutOfFuel):
        print(f"out of fuel after {outcome.fuel} loop iterations", file=sys.stderr)
        return 2
    print(_state_text(outcome.final, xs, session.names))
    return 0


def _output_names(xs: Sequence[s.Var], ys: Sequence[s.Var], names: Names) -> dict[s.Var, str]:
    result = dict(names)
    for x, y in zip(xs, ys):
        result[y] = f"{names.get(x, x.name)}_out"
    return result


def cmd_alpha(args: argparse.Namespace) -> int:
    session = _Session(args)
    xs = session.xs
    if args.component is not None:
        result = alpha_component(session.prog, xs, args.component)
    else:
        ys = s.fresh_vars(s.used_indices(session.prog, xs), len(xs))
        result = alpha(session.prog, xs, ys)
    names = _output_names(xs, result.out_vars, session.names)
    print(session.render(result.formula, names))
    return 0


def cmd_sp(args: argparse.Namespace) -> int:
    session = _Session(args)
    result = sp(session.formulas["pre"], session.prog, session.xs)
    print(session.render(result.formula))
    return 0


def cmd_check_triple(args: argparse.Namespace) -> int:
    session = _Session(args)
    config = session.config
    triple = s.Triple(session.formulas["pre"], session.prog, session.formulas["post"])
    report = check_triple_bounded(triple, session.xs, config.box, config.fuel, config.bound)
    print(f"{report.verdict} ({report.checked} runs checked, {report.undecided} undecided)")
    if report.counterexample is not None:
        before, after = report.counterexample
        print(f"counterexample: {_state_text(before, session.xs, session.names)}")
        print(f"final state:    {_state_text(after, session.xs, session.names)}")
    return report.verdict.exit_code


def cmd_check_separation(args: argparse.Namespace) -> int:
    session = _Session(args)
    config = session.config
    pre, xs = session.formulas["pre"], session.xs
    left, right = sp(pre, session.prog, xs).formula, separation_rhs(pre, session.prog, xs)
    disagreements = unknown = 0
    for state in box_states(xs, config.box):
        first = eval_formula(left, state, config.bound)
        second = eval_formula(right, state, config.bound)
        if Verdict.UNKNOWN in (first, second):
            unknown += 1
        elif first is not second:
            disagreements += 1
            print(f"disagreement at {_state_text(state, xs, session.names)}: {first} vs {second}")
    print(f"{disagreements} disagreements, {unknown} undecided states")
    if disagreements:
        return 1
    return 2 if unknown else 0


def cmd_prove_sp(args: argparse.Namespace) -> int:
    session = _Session(args)
    derivation = generate_sp_derivation(session.formulas["pre"], session.prog, session.xs)
    if args.output:
        derivation_io.write_derivation(Path(args.output), derivation, session.names)
    else:
        sys.stdout.write(derivation_io.dumps(derivation, session.names))
    return 0


def cmd_check_proof(args: argparse.Namespace) -> int:
    config = _config(args)
    table = VarTable()
    derivation = derivation_io.loads(_read(args.derivation), table)
    expected = None
    if args.program:
        if args.pre is None or args.post is None:
            raise UsageError("--program needs --pre and --post")
        prog = parse_program(_read(args.program), table)
        expected = s.Triple(parse_formula(args.pre, table), prog, parse_formula(args.post, table))
    result = check_derivation(derivation, config.bound, expected)
    print(result.status)
    if result.reason:
        print(result.reason)
    for obligation in result.residual:
        text = to_text(obligation.formula, table.names)
        print(f"open at {obligation.where} ({obligation.side}): {text}")
    return result.exit_code


def cmd_export_obligations(args: argparse.Namespace) -> int:
    derivation = derivation_io.loads(_read(args.derivation))
    pending = [o for o in obligations(derivation) if not is_tautology(o.formula)]
    if args.dir:
        for path in export_obligations(pending, Path(args.dir)):
            print(path)
    else:
        sys.stdout.write("\n".join(obligation_to_smtlib(o) for o in pending))
    return 0


def cmd_encode_seq(args: argparse.Namespace) -> int:
    parts = coding.seq_encode_parts(args.values)
    if args.parts:
        print(f"s={parts.s} t={parts.t}")
    print(parts.code)
    return 0


def cmd_elem(args: argparse.Namespace) -> int:
    if args.arity is None:
        print(coding.seq_elem(args.code, args.index))
    else:
        print(" ".join(map(str, coding.elem_tuple(args.code, args.index, args.arity))))
    return 0


def cmd_korder(args: argparse.Namespace) -> int:
    first = parse_kelem(args.elements[0])
    if args.operation == "cmp":
        if len(args.elements) != 2:
            raise UsageError("cmp needs two elements")
        print({-1: "<", 0: "=", 1: ">"}[compare(first, parse_kelem(args.elements[1]))])
        return 0
    if len(args.elements) != 1:
        raise UsageError(f"{args.operation} needs one element")
    if args.operation == "succ":
        print(format_kelem(k_successor(first)))
        return 0
    before = k_predecessor(first)
    print("none" if before is None else format_kelem(before))
    return 0 if before is not None else 1


def cmd_acceptance(args: argparse.Namespace) -> int:
    unknown = [name for name in args.suites if name not in SUITES]
    if unknown:
        raise UsageError(f"Unknown suites: {', '.join(unknown)}")
    reports = run_suites(args.suites or None)
    for report in reports:
        print(report.summary())
        for failure in report.failures:
            print(f"  FAIL {failure}")
        for note in report.notes:
            print(f"  note {note}")
    return 0 if all(r.passed for r in reports) else 1


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, help="loop iterations allowed per run")
    common.add_argument("--bound", type=int, help="search bound for unbounded quantifiers")
    common.add_argument("--box", type=int, help="largest value per variable in state sweeps")
    common.add_argument("--out", choices=OUTPUT_FORMATS, help="output format")
    common.add_argument("-v", "--verbose", action="store_true", help="log debug output")

    parser = _Parser(
        prog="hoarith",
        description="Strongest postconditions and Hoare derivations for while-programs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, handler: Callable[[argparse.Namespace], int], summary: str) -> Any:
        sub = commands.add_parser(name, parents=[common], help=summary)
        sub.set_defaults(handler=handler)
        return sub

    def program_command(
        name: str, handler: Callable[[argparse.Namespace], int], summary: str
    ) -> Any:
        sub = command(name, handler, summary)
        sub.add_argument("program", help="program file (.whl), - for stdin")
        sub.add_argument("--vars", help="comma separated program variables, in order")
        return sub

    sub = command("parse", cmd_parse, "parse and print a program, formula or term")
    sub.add_argument("program", help="input file, - for stdin")
    sub.add_argument("--kind", choices=("program", "formula", "term"), default="program")

    sub = program_command("run", cmd_run, "execute a program")
    sub.add_argument("--input", help="initial state, e.g. x=3,y=0")
    sub.add_argument("--trace", action="store_true", help="print every loop state as JSON")

    sub = program_command("alpha", cmd_alpha, "print the formula defining the program's function")
    sub.add_argument("--component", type=int, help="project onto one output slot (1-based)")

    sub = program_command("sp", cmd_sp, "print the strongest postcondition")
    sub.add_argument("--pre", required=True)

    sub = program_command("check-triple", cmd_check_triple, "sweep a triple over a box")
    sub.add_argument("--pre", required=True)
    sub.add_argument("--post", required=True)

    sub = program_command("check-separation", cmd_check_separation, "compare SP with α")
    sub.add_argument("--pre", required=True)

    sub = program_command("prove-sp", cmd_prove_sp, "generate a derivation of {p} S {SP(p, S)}")
    sub.add_argument("--pre", required=True)
    sub.add_argument("-o", "--output", help="write the .deriv.json here instead of stdout")

    sub = command("check-proof", cmd_check_proof, "check a derivation file")
    sub.add_argument("derivation", help="derivation file (.deriv.json)")
    sub.add_argument("--program", help="program the conclusion must be about")
    sub.add_argument("--pre")
    sub.add_argument("--post")

    sub = command("export-obligations", cmd_export_obligations, "write obligations as SMT-LIB")
    sub.add_argument("derivation", help="derivation file (.deriv.json)")
    sub.add_argument("--dir", help="directory for one .smt2 file per obligation")

    sub = command("encode-seq", cmd_encode_seq, "code a finite sequence")
    sub.add_argument("values", type=int, nargs="+")
    sub.add_argument("--parts", action="store_true", help="also print s and t")

    sub = command("elem", cmd_elem, "decode one element of a sequence code")
    sub.add_argument("code", type=int)
    sub.add_argument("index", type=int)
    sub.add_argument("--arity", type=int, help="decode the element as a tuple")

    sub = command("korder", cmd_korder, "work with the nonstandard order")
    sub.add_argument("operation", choices=("cmp", "succ", "pred"))
    sub.add_argument("elements", nargs="+", help="n or (p/q, a)")

    sub = command("acceptance", cmd_acceptance, "run the acceptance suites")
    sub.add_argument("suites", nargs="*", help=f"subset of: {', '.join(SUITES)}")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return int(args.handler(args))
    except UsageError as e:
        print(f"hoarith: {e}", file=sys.stderr)
        return EX_USAGE
    except HoarithError as e:
        print(f"hoarith: {e}", file=sys.stderr)
        return 1
