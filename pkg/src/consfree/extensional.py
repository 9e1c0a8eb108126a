"""Extensional values: finite stand-ins for values of every type.

Over a finite universe ``B`` of data, a sort denotes its members in ``B``,
a pair type the product, and an arrow type a set of relations between the
two sides.  In deterministic mode the relations are partial functions;
in non-deterministic mode any relation is allowed.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable

from .syntax import Clause, Pair, Pattern, PConstructor, PPair, Program, PVar, Sort, Type
from .typecheck import type_depth, type_length, type_order
from .values import Data, Relation, VPair, sort_key

DET = "det"
NONDET = "nondet"
MODES = (DET, NONDET)

DEFAULT_CEILING = 2_000_000


class TooLarge(Exception):
    """An enumeration would exceed the configured ceiling."""


# ---------------------------------------------------------------- counting


def count_ext(sort_sizes: dict[str, int], t: Type, mode: str) -> int:
    """Closed-form size of the extensional denotation of ``t``."""
    if isinstance(t, Sort):
        return sort_sizes.get(t.name, 0)
    if isinstance(t, Pair):
        return count_ext(sort_sizes, t.left, mode) * count_ext(sort_sizes, t.right, mode)
    keys = count_ext(sort_sizes, t.arg, mode)
    vals = count_ext(sort_sizes, t.res, mode)
    if mode == DET:
        return (vals + 1) ** keys
    return 2 ** (keys * vals)


def exp2(k: int, n: int) -> int:
    """Tower of ``k`` twos topped by ``n``: exp2(0, n) = n, exp2(k+1, n) = 2 ** exp2(k, n)."""
    out = n
    for _ in range(k):
        out = 2**out
    return out


def below_exp2(count: int, k: int, n: int) -> bool:
    """Exactly decide ``count < exp2(k, n)`` without building the tower."""
    if count < 0:
        return True
    if count == 0:
        return exp2_positive(k, n)
    if k == 0:
        return count < n
    # count < 2**X  iff  count.bit_length() <= X  iff  bit_length - 1 < X
    return below_exp2(count.bit_length() - 1, k - 1, n)


def exp2_positive(k: int, n: int) -> bool:
    return k > 0 or n > 0


def metric_value(t: Type, metric: str) -> int:
    if metric == "order":
        return type_order(t)
    if metric == "depth":
        return type_depth(t)
    raise ValueError(f"unknown metric {metric!r}")


def cardinality_bound(t: Type, n: int, metric: str) -> int:
    """``exp2^K(n^L)`` with K the metric value and L the length of ``t``."""
    return exp2(metric_value(t, metric), n ** type_length(t))


def within_cardinality_bound(count: int, t: Type, n: int, metric: str) -> bool:
    return below_exp2(count, metric_value(t, metric), n ** type_length(t))


# ---------------------------------------------------------------- universe


class Universe:
    """The data universe ``B`` plus cached extensional denotations."""

    def __init__(self, program: Program, data: Iterable[Data], mode: str, ceiling: int = DEFAULT_CEILING):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.program = program
        self.mode = mode
        self.ceiling = ceiling
        self.data = frozenset(data)
        members: dict[str, list[Data]] = {s: [] for s in program.sorts}
        for d in self.data:
            members[program.constructors[d.con][1]].append(d)
        self.members = {s: sorted(ds, key=sort_key) for s, ds in members.items()}
        self._cache: dict[Type, list] = {}

    def sort_sizes(self) -> dict[str, int]:
        return {s: len(ds) for s, ds in self.members.items()}

    def count(self, t: Type) -> int:
        return count_ext(self.sort_sizes(), t, self.mode)

    def values(self, t: Type) -> list:
        """All extensional values of type ``t`` in canonical order."""
        if t in self._cache:
            return self._cache[t]
        n = self.count(t)
        if n > self.ceiling:
            raise TooLarge(f"{n} extensional values of one type exceed the ceiling {self.ceiling}")
        out = enumerate_values(self, t)
        self._cache[t] = out
        return out

    def contains(self, v, t: Type) -> bool:
        """Membership in the denotation of ``t``, checked structurally."""
        if isinstance(t, Sort):
            return isinstance(v, Data) and v in self.data and self.program.constructors[v.con][1] == t.name
        if isinstance(t, Pair):
            return isinstance(v, VPair) and self.contains(v.left, t.left) and self.contains(v.right, t.right)
        if not isinstance(v, Relation) or v.type != t:
            return False
        if self.mode == DET and any(len(vs) > 1 for vs in v.by_key().values()):
            return False
        return all(self.contains(k, t.arg) and self.contains(u, t.res) for k, u in v.pairs)


def enumerate_values(u: Universe, t: Type) -> list:
    if isinstance(t, Sort):
        return list(u.members.get(t.name, []))
    if isinstance(t, Pair):
        return [VPair(a, b) for a in u.values(t.left) for b in u.values(t.right)]
    keys = u.values(t.arg)
    vals = u.values(t.res)
    out = []
    if u.mode == DET:
        for choice in itertools.product([None] + vals, repeat=len(keys)):
            out.append(Relation(t, [(k, v) for k, v in zip(keys, choice) if v is not None]))
    else:
        cells = [(k, v) for k in keys for v in vals]
        for bits in itertools.product((False, True), repeat=len(cells)):
            out.append(Relation(t, [c for c, b in zip(cells, bits) if b]))
    out.sort(key=sort_key)
    return out


def enumerate_ext(universe_data: Iterable[Data], t: Type, mode: str, program: Program | None = None,
                  ceiling: int = DEFAULT_CEILING) -> list:
    """Every extensional value of type ``t`` over the given data.

    Without a program only the built-in sorts are known."""
    program = program or Program((), (), ())
    return Universe(program, universe_data, mode, ceiling).values(t)


# ---------------------------------------------------------------- order and application


@lru_cache(maxsize=1 << 20)
def ext_geq(a, b) -> bool:
    """``a`` carries at least the information of ``b`` (same type assumed)."""
    if a is b or a == b:
        return True
    if isinstance(a, Data) or isinstance(b, Data):
        return False
    if isinstance(a, VPair):
        return isinstance(b, VPair) and ext_geq(a.left, b.left) and ext_geq(a.right, b.right)
    if not isinstance(a, Relation) or not isinstance(b, Relation):
        return False
    index = a.by_key()
    for k, v in b.pairs:
        if not any(ext_geq(w, v) for w in index.get(k, ())):
            return False
    return True


def covered(o, maxima: Iterable) -> bool:
    """``o`` lies below one of ``maxima``."""
    return any(ext_geq(m, o) for m in maxima)


def maximal(values: Iterable) -> frozenset:
    """One representative of each ⊒-maximal class, first occurrence kept."""
    vals = list(dict.fromkeys(values))
    if len(vals) <= 1 or all(isinstance(v, Data) for v in vals):
        return frozenset(vals)
    out = []
    for i, v in enumerate(vals):
        if not any(
            j != i and ext_geq(w, v) and (j < i or not ext_geq(v, w))
            for j, w in enumerate(vals)
        ):
            out.append(v)
    return frozenset(out)


def ext_apply(e, args: list) -> set:
    """The set of possible results of applying ``e`` to ``args``."""
    current = {e}
    for a in args:
        nxt = set()
        for r in current:
            nxt.update(r.lookup(a))
        current = nxt
    return current


# ---------------------------------------------------------------- matching


def ext_match_pattern(p: Pattern, v, env: dict) -> bool:
    if isinstance(p, PVar):
        env[p.name] = v
        return True
    if isinstance(p, PPair):
        return isinstance(v, VPair) and ext_match_pattern(p.left, v.left, env) and ext_match_pattern(p.right, v.right, env)
    assert isinstance(p, PConstructor)
    if not isinstance(v, Data) or v.con != p.name or len(v.args) != len(p.args):
        return False
    return all(ext_match_pattern(q, w, env) for q, w in zip(p.args, v.args))


def ext_match(clause: Clause, args) -> dict | None:
    """The matching ext-environment of ``clause`` for ``args``, if any."""
    env: dict = {}
    if len(args) != clause.arity:
        raise ValueError("argument count differs from the clause's pattern count")
    for p, v in zip(clause.patterns, args):
        if not ext_match_pattern(p, v, env):
            return None
    return env


def relation_is_function(r: Relation) -> bool:
    return all(len(vs) <= 1 for vs in r.by_key().values())
