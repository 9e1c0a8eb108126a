"""Runtime values shared by the evaluator and the tabulator.

Data terms, pairs and partial applications are what the evaluator
produces.  ``Relation`` is the finite, type-tagged stand-in for a
functional value used during tabulation.  All four are immutable and
hash-consed lazily (the hash is computed once at construction).
"""

from __future__ import annotations

from typing import Iterable, Union


class Data:
    __slots__ = ("con", "args", "_hash")

    def __init__(self, con: str, args: Iterable["Data"] = ()):
        self.con = con
        self.args = tuple(args)
        self._hash = hash(("D", con, self.args))

    def __eq__(self, other):
        return self is other or (
            type(other) is Data
            and self._hash == other._hash
            and self.con == other.con
            and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from .syntax import pretty_value

        return f"Data<{pretty_value(self)}>"


class VPair:
    __slots__ = ("left", "right", "_hash")

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self._hash = hash(("P", left, right))

    def __eq__(self, other):
        return self is other or (
            type(other) is VPair
            and self._hash == other._hash
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from .syntax import pretty_value

        return f"VPair<{pretty_value(self)}>"


class Closure:
    """A defined symbol applied to fewer arguments than its arity."""

    __slots__ = ("fun", "args", "_hash")

    def __init__(self, fun: str, args: Iterable = ()):
        self.fun = fun
        self.args = tuple(args)
        self._hash = hash(("C", fun, self.args))

    def __eq__(self, other):
        return self is other or (
            type(other) is Closure
            and self._hash == other._hash
            and self.fun == other.fun
            and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from .syntax import pretty_value

        return f"Closure<{pretty_value(self)}>"


class Relation:
    """A finite relation between extensional values, tagged with its type."""

    __slots__ = ("type", "pairs", "_hash", "_index")

    def __init__(self, type_, pairs: Iterable[tuple] = ()):
        self.type = type_
        self.pairs = frozenset(pairs)
        self._hash = hash(("R", type_, self.pairs))
        self._index = None

    def __eq__(self, other):
        return self is other or (
            type(other) is Relation
            and self._hash == other._hash
            and self.type == other.type
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.pairs)

    def by_key(self) -> dict:
        """Key -> list of related values (built once)."""
        if self._index is None:
            index: dict = {}
            for k, v in self.pairs:
                index.setdefault(k, []).append(v)
            self._index = index
        return self._index

    def lookup(self, key) -> list:
        return self.by_key().get(key, [])

    def __repr__(self):
        from .syntax import pretty_value

        return f"Relation<{pretty_value(self)}>"


Value = Union[Data, VPair, Closure]
ExtValue = Union[Data, VPair, Relation]


def sort_key(v) -> tuple:
    """Canonical structural order on values and extensional values."""
    if isinstance(v, Data):
        return (0, v.con, tuple(sort_key(a) for a in v.args))
    if isinstance(v, VPair):
        return (1, sort_key(v.left), sort_key(v.right))
    if isinstance(v, Closure):
        return (2, v.fun, tuple(sort_key(a) for a in v.args))
    if isinstance(v, Relation):
        return (3, len(v.pairs), tuple(sorted((sort_key(a), sort_key(b)) for a, b in v.pairs)))
    raise TypeError(v)


def canonical(values: Iterable) -> list:
    return sorted(values, key=sort_key)


def data_size(d) -> int:
    """Number of constructor nodes; pairs count their components only."""
    if isinstance(d, VPair):
        return data_size(d.left) + data_size(d.right)
    return 1 + sum(data_size(a) for a in d.args)


def sub_data(d) -> set:
    """All constructor-headed sub-terms of a data value (pairs descended into)."""
    out: set = set()

    def go(x):
        if isinstance(x, VPair):
            go(x.left)
            go(x.right)
        elif isinstance(x, Data):
            if x not in out:
                out.add(x)
                for a in x.args:
                    go(a)
        elif isinstance(x, Closure):
            for a in x.args:
                go(a)

    go(d)
    return out


def from_bits(bits: Iterable[bool]) -> Data:
    """Boolean list literal."""
    out = Data("nil")
    for b in reversed(list(bits)):
        out = Data("cons", (Data("true" if b else "false"), out))
    return out


def to_bits(d: Data) -> list[bool]:
    out = []
    while d.con == "cons":
        out.append(d.args[0].con == "true")
        d = d.args[1]
    return out


TRUE = Data("true")
FALSE = Data("false")
NIL = Data("nil")
