"""
Named programs and triples shared by the acceptance suites, the CLI and the tests.

Identifiers are interned in the order of ``variables``, so the first listed
variable is x1, the second x2 and so on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import syntax as s
from .parser import VarTable, parse_formula, parse_program


@dataclass(frozen=True)
class Program:
    """
    A corpus program.

    Attributes:
        name: Key in PROGRAMS.
        source: Program text.
        variables: Identifiers in variable-list order.
        box: Largest input value per slot used by the definability suite.
    """

    name: str
    source: str
    variables: tuple[str, ...]
    box: int

    @cached_property
    def table(self) -> VarTable:
        table = VarTable()
        for name in self.variables:
            table.lookup(name)
        return table

    @cached_property
    def xs(self) -> tuple[s.Var, ...]:
        return tuple(self.table.lookup(name) for name in self.variables)

    @cached_property
    def prog(self) -> s.Stmt:
        return parse_program(self.source, self.table)

    def formula(self, text: str) -> s.Formula:
        return parse_formula(text, self.table)

    @property
    def loop_free(self) -> bool:
        return not _has_loop(self.prog)


def _has_loop(prog: s.Stmt) -> bool:
    if isinstance(prog, s.While):
        return True
    if isinstance(prog, s.Seq):
        return _has_loop(prog.first) or _has_loop(prog.second)
    if isinstance(prog, s.If):
        return _has_loop(prog.then) or _has_loop(prog.orelse)
    return False


_GCD = """
while ~(a = b) do
  if a < b then
    d := 0; while a + d < b do d := d + 1 od; b := d
  else
    d := 0; while b + d < a do d := d + 1 od; a := d
  fi
od
"""

PROGRAMS: dict[str, Program] = {
    p.name: p
    for p in (
        Program("reset", "x := 0", ("x",), 12),
        Program("copy", "y := x", ("x", "y"), 12),
        Program("count_up", "y := 0; while y < x do y := y + 1 od", ("x", "y"), 12),
        Program("chain", "x := x + 1; y := x * 2; x := y + x", ("x", "y"), 12),
        Program("swap", "t := x; x := y; y := t", ("x", "y", "t"), 6),
        Program("min", "if x < y then m := x else m := y fi", ("x", "y", "m"), 6),
        Program(
            "step_smaller",
            "if x < y then x := x + 1 else y := y + 1 fi",
            ("x", "y"),
            8,
        ),
        Program(
            "add",
            "z := x; i := 0; while i < y do z := z + 1; i := i + 1 od",
            ("x", "y", "z", "i"),
            4,
        ),
        Program(
            "mul",
            "z := 0; i := 0; while i < y do z := z + x; i := i + 1 od",
            ("x", "y", "z", "i"),
            4,
        ),
        Program("monus", "z := 0; while y + z < x do z := z + 1 od", ("x", "y", "z"), 6),
        Program("gcd", _GCD, ("a", "b", "d"), 5),
        Program(
            "nested",
            "i := 0; while i < x do j := 0; while j < y do z := z + 1; j := j + 1 od; "
            "i := i + 1 od",
            ("x", "y", "z", "i", "j"),
            3,
        ),
    )
}


@dataclass(frozen=True)
class CorpusTriple:
    name: str
    program: str
    pre: str
    post: str
    valid: bool

    @property
    def source(self) -> Program:
        return PROGRAMS[self.program]

    def triple(self) -> s.Triple:
        program = self.source
        return s.Triple(program.formula(self.pre), program.prog, program.formula(self.post))


TRIPLES: tuple[CorpusTriple, ...] = (
    CorpusTriple("reset_zero", "reset", "0 = 0", "x = 0", True),
    CorpusTriple("copy_positive", "copy", "0 < x", "0 < y", True),
    CorpusTriple("swap_order", "swap", "x < y", "y < x", True),
    CorpusTriple("min_below", "min", "0 = 0", "m <= x /\\ m <= y", True),
    CorpusTriple("chain_order", "chain", "0 = 0", "y < x", True),
    CorpusTriple("step_gap", "step_smaller", "x < y", "x <= y", True),
    CorpusTriple("count_up_equal", "count_up", "0 = 0", "y = x", True),
    CorpusTriple("monus_sum", "monus", "y <= x", "y + z = x", True),
    CorpusTriple("reset_one", "reset", "0 = 0", "x = 1", False),
    CorpusTriple("copy_unguarded", "copy", "0 = 0", "0 < y", False),
    CorpusTriple("swap_unchanged", "swap", "0 = 0", "x < y", False),
    CorpusTriple("min_first", "min", "0 = 0", "m = x", False),
    CorpusTriple("chain_reversed", "chain", "0 = 0", "x < y", False),
    CorpusTriple("count_up_short", "count_up", "0 = 0", "y < x", False),
    CorpusTriple("monus_unguarded", "monus", "0 = 0", "y + z = x", False),
)


@dataclass(frozen=True)
class SeparationCase:
    program: str
    pre: str
    box: int

    @property
    def source(self) -> Program:
        return PROGRAMS[self.program]


SEPARATION_CASES: tuple[SeparationCase, ...] = (
    SeparationCase("reset", "0 = 0", 8),
    SeparationCase("copy", "x < 4", 6),
    SeparationCase("chain", "0 = 0", 8),
    SeparationCase("swap", "x < y", 4),
    SeparationCase("min", "0 = 0", 4),
    SeparationCase("step_smaller", "0 = 0", 6),
    SeparationCase("count_up", "0 < x", 3),
)
