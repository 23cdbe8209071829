"""
Pairing, tuples and the β-function, as functions over the naturals and as
formulas of arithmetic defining their graphs.

The formulas avoid subtraction and division; every auxiliary quantifier is
bounded by a term built from the input variables, so that decoding a code
never needs a value larger than the code itself.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from . import syntax as s
from .exceptions import VariableClashError

# -- executable side ---------------------------------------------------------


def pair(x: int, y: int) -> int:
    """Cantor pairing ⟨x, y⟩ = (x+y)(x+y+1)/2 + x."""
    k = x + y
    return k * (k + 1) // 2 + x


def unpair(z: int) -> tuple[int, int]:
    """The inverse of pair: (L(z), R(z))."""
    k = (math.isqrt(8 * z + 1) - 1) // 2
    x = z - k * (k + 1) // 2
    return x, k - x


def tuple_encode(values: Sequence[int]) -> int:
    """Right-nested pairing ⟨a1, ⟨a2, ..., an⟩⟩; a 1-tuple codes as itself."""
    if not values:
        raise ValueError("Tuples have arity at least 1")
    code = values[-1]
    for value in reversed(values[:-1]):
        code = pair(value, code)
    return code


def tuple_decode(code: int, arity: int) -> list[int]:
    if arity < 1:
        raise ValueError(f"Tuples have arity at least 1, got {arity}")
    values = []
    for _ in range(arity - 1):
        head, code = unpair(code)
        values.append(head)
    values.append(code)
    return values


def beta(s_: int, t: int, i: int) -> int:
    """Gödel's β(s, t, i) = s mod (1 + (i+1)·t)."""
    return s_ % (1 + (i + 1) * t)


@dataclass(frozen=True)
class SeqCode:
    """A single natural c with seq_elem(c, i) = a_i for the encoded sequence."""

    code: int
    s: int
    t: int


def seq_encode_parts(values: Sequence[int]) -> SeqCode:
    """
    Encode a nonempty sequence for the β-function.

    Chooses t as a multiple of lcm(1..n) exceeding every entry, which makes
    the moduli 1+(i+1)t pairwise coprime, and solves for s with the Chinese
    remainder theorem.

    The factorial choice t = k·n! works for the same reason and only needs
    every d ≤ n to divide t: a prime p dividing both 1+(i+1)t and 1+(j+1)t
    with i < j divides their difference (j-i)t, and j-i < n, so p divides
    (j-i) or t. Either way p divides t, hence p divides 1, a contradiction.
    The entries stay below their moduli because t exceeds them, so β
    returns them unchanged. lcm(1..n) is far smaller than n!, and so are
    the codes.
    """
    if not values:
        raise ValueError("Cannot encode an empty sequence")
    n = len(values)
    base = math.lcm(*range(1, n + 1))
    t = base * (max(values) // base + 1)
    moduli = [1 + (i + 1) * t for i in range(n)]
    product = math.prod(moduli)
    total = 0
    for value, modulus in zip(values, moduli):
        rest = product // modulus
        total += value * rest * pow(rest, -1, modulus)
    s_ = total % product
    return SeqCode(pair(s_, t), s_, t)


def seq_encode(values: Sequence[int]) -> int:
    return seq_encode_parts(values).code


def seq_elem(code: int, i: int) -> int:
    """(c)_i = β(L(c), R(c), i)."""
    s_, t = unpair(code)
    return beta(s_, t, i)


def elem_tuple(code: int, i: int, arity: int) -> list[int]:
    """Decode the i-th element of a sequence of tuple codes."""
    return tuple_decode(seq_elem(code, i), arity)


def encode_states(rows: Sequence[Sequence[int]]) -> int:
    """The code w of a sequence of tuples, as used for loop traces."""
    return seq_encode([tuple_encode(row) for row in rows])


# -- defining formulas -------------------------------------------------------


def _distinct(*variables: s.Var) -> None:
    if len(set(variables)) != len(variables):
        names = ", ".join(v.name for v in variables)
        raise VariableClashError(f"Defining formulas need distinct variables, got {names}")


def _t(v: s.Var) -> s.Expr:
    return s.Variable(v)


def _eq(left: s.Expr, right: s.Expr) -> s.Formula:
    return s.Atom(s.Eq(left, right))


def _succ(v: s.Var) -> s.Expr:
    return s.Add(_t(v), s.One())


def _two(e: s.Expr) -> s.Expr:
    return s.Mul(s.Numeral(2), e)


def pair_formula(x: s.Var, y: s.Var, z: s.Var) -> s.Formula:
    """(x+y)·(x+y+1) + 2·x = 2·z, the graph of z = ⟨x, y⟩."""
    _distinct(x, y, z)
    total = s.Add(_t(x), _t(y))
    lhs = s.Add(s.Mul(total, s.Add(total, s.One())), _two(_t(x)))
    return _eq(lhs, _two(_t(z)))


def unpair_formula(
    z: s.Var, left: s.Var, right: s.Var, avoid: frozenset[int] = frozenset()
) -> s.Formula:
    """∃k<z+1 (k = l+r ∧ k·(k+1) + 2·l = 2·z), the graph of (l, r) = unpair(z)."""
    _distinct(z, left, right)
    (k,) = s.fresh_vars(avoid | {z.index, left.index, right.index}, 1)
    body = s.And(
        _eq(_t(k), s.Add(_t(left), _t(right))),
        _eq(s.Add(s.Mul(_t(k), _succ(k)), _two(_t(left))), _two(_t(z))),
    )
    return s.BoundedExists(k, _succ(z), body)


def beta_formula(
    s_: s.Var, t: s.Var, i: s.Var | s.Expr, y: s.Var, avoid: frozenset[int] = frozenset()
) -> s.Formula:
    """∃q<s+1 (s = q·m + y ∧ y < m) with m = 1+(i+1)·t, the graph of y = β(s, t, i)."""
    index = s.as_term(i)
    _distinct(s_, t, y, *(v for v in [i] if isinstance(v, s.Var)))
    if isinstance(i, s.Expr) and i.fv & {s_, t, y}:
        raise VariableClashError("The index term of beta_formula must not mention s, t or y")
    taken = avoid | {s_.index, t.index, y.index} | set(index.indices)
    (q,) = s.fresh_vars(taken, 1)
    modulus = s.Add(s.One(), s.Mul(s.Add(index, s.One()), _t(t)))
    body = s.And(
        _eq(_t(s_), s.Add(s.Mul(_t(q), modulus), _t(y))),
        s.Atom(s.Less(_t(y), modulus)),
    )
    return s.BoundedExists(q, _succ(s_), body)


def elem_formula(
    c: s.Var, i: s.Var | s.Expr, y: s.Var, avoid: frozenset[int] = frozenset()
) -> s.Formula:
    """∃s<c+1 ∃t<c+1 (unpair(c) = (s, t) ∧ y = β(s, t, i)), the graph of y = (c)_i."""
    index = s.as_term(i)
    if isinstance(i, s.Var):
        _distinct(c, i, y)
    else:
        _distinct(c, y)
        if i.fv & {c, y}:
            raise VariableClashError("The index term of elem_formula must not mention c or y")
    taken = avoid | {c.index, y.index} | set(index.indices)
    s_, t = s.fresh_vars(taken, 2)
    taken = taken | {s_.index, t.index}
    body = s.And(unpair_formula(c, s_, t, taken), beta_formula(s_, t, index, y, taken))
    return s.BoundedExists(s_, _succ(c), s.BoundedExists(t, _succ(c), body))


def tuple_decode_formula(
    z: s.Var, us: Sequence[s.Var], avoid: frozenset[int] = frozenset()
) -> s.Formula:
    """
    The graph of (u1, ..., un) = tuple_decode(z, n).

    Arity 1 is the equation u1 = z; longer tuples peel one pair at a time
    through a bounded rest variable.
    """
    if not us:
        raise ValueError("Tuples have arity at least 1")
    _distinct(z, *us)
    if len(us) == 1:
        return _eq(_t(us[0]), _t(z))
    taken = avoid | {z.index} | {u.index for u in us}
    (rest,) = s.fresh_vars(taken, 1)
    taken = taken | {rest.index}
    body = s.And(
        unpair_formula(z, us[0], rest, taken),
        tuple_decode_formula(rest, us[1:], taken),
    )
    return s.BoundedExists(rest, _succ(z), body)


def element_tuple_formula(
    w: s.Var, j: s.Var | s.Expr, us: Sequence[s.Var], avoid: frozenset[int] = frozenset()
) -> s.Formula:
    """∃e<w+1 ((w)_j = e ∧ e decodes to u1, ..., un)."""
    index = s.as_term(j)
    _distinct(w, *us)
    if index.fv & ({w} | set(us)):
        raise VariableClashError("The element index must not mention the code or the tuple")
    taken = avoid | {w.index} | {u.index for u in us} | set(index.indices)
    (e,) = s.fresh_vars(taken, 1)
    taken = taken | {e.index}
    body = s.And(elem_formula(w, index, e, taken), tuple_decode_formula(e, us, taken))
    return s.BoundedExists(e, _succ(w), body)
