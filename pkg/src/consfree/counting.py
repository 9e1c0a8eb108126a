"""Generators for counting modules: clause packages that represent the
numbers ``0 .. P(n)-1`` for an input list of length ``n`` using only
sub-data of that list, and provide ``seed`` (the largest number),
``pred`` and ``zero``.

Three constructions are available:

* ``gen_count_poly(a, b)`` counts to ``a*(n+1)^b`` with tuples of lists;
* ``gen_count_exp(inner)`` counts to ``2^P(n)`` with bit vectors
  ``inner number -> bool``;
* ``gen_count_nondet(inner)`` counts to ``2^(P(n)-1)`` with values of type
  ``bool -> inner number`` whose bits are read through ``choose``.

Every generated symbol carries the module's tag as suffix, so modules can
be nested without clashes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .syntax import Type, parse_program, parse_type, pretty_type
from .typecheck import TypedProgram, check_program, type_order
from .values import VPair


@dataclass(frozen=True)
class CountingModule:
    tag: str
    number_type: Type
    signatures: tuple[tuple[str, str], ...]  # (symbol, type text), seed first
    clause_text: tuple[str, ...]
    bound: Callable[[int], int] = field(compare=False)
    bound_description: str
    data_order: int
    deterministic: bool
    has_equal: bool = False

    @property
    def seed(self) -> str:
        return f"seed_{self.tag}"

    @property
    def pred(self) -> str:
        return f"pred_{self.tag}"

    @property
    def zero(self) -> str:
        return f"zero_{self.tag}"

    @property
    def equal(self) -> str:
        return f"equal_{self.tag}"

    @property
    def succ(self) -> str:
        return f"succ_{self.tag}"

    def source(self) -> str:
        """Declarations and clauses of the module as program text."""
        return "\n".join(self.body_lines()) + "\n"

    def body_lines(self) -> list[str]:
        """Signatures followed by clauses, ready to be appended to a program."""
        return [f"{name} : {t}" for name, t in self.signatures] + list(self.clause_text)

    def program(self) -> TypedProgram:
        """The module behind the counting driver of ``chain_program``.

        Above the first exponential layer ``seed`` returns a function, so
        the module cannot serve as its own entry point."""
        return chain_program(self)


def _tuple_type(n: int) -> str:
    return " * ".join(["list"] * n)


def _nest(items: list[str]) -> str:
    """Right-nested pair expression or pattern."""
    if len(items) == 1:
        return items[0]
    return f"({items[0]}, {_nest(items[1:])})"


def gen_count_poly(a: int, b: int) -> CountingModule:
    """Numbers ``(d0, ..., db)`` read as ``sum |di| * (n+1)^(b-i)`` with ``|d0| < a``."""
    if a < 1 or b < 1:
        raise ValueError("both a and b must be positive")
    tag = f"p{a}_{b}"
    num = _tuple_type(b + 1)
    alist = "::".join(["false"] * (a - 1) + ["[]"])
    seed, pred, zero = f"seed_{tag}", f"pred_{tag}", f"zero_{tag}"
    lines = [f"{seed} cs = {_nest([alist] + ['cs'] * b)}"]
    # Position j is the last component holding a non-empty list; later ones are [].
    pred_lines, zero_lines = [], []
    for j in range(b, -1, -1):
        before = [f"x{i}" for i in range(j)]
        after_pat = ["[]"] * (b - j)
        pat = _nest(before + ["y::ys"] + after_pat)
        res = _nest(before + ["ys"] + ["cs"] * (b - j))
        pred_lines.append(f"{pred} cs {_paren_pattern(pat)} = {res}")
        zero_lines.append(f"{zero} cs {_paren_pattern(pat)} = false")
    empty = _nest(["[]"] * (b + 1))
    pred_lines.append(f"{pred} cs {empty} = {empty}")
    zero_lines.append(f"{zero} cs {empty} = true")
    sigs = ((seed, f"list => {_paren_type(num)}"), (pred, f"list => {_paren_type(num)} => {_paren_type(num)}"),
            (zero, f"list => {_paren_type(num)} => bool"))
    return CountingModule(
        tag=tag,
        number_type=parse_type(num),
        signatures=sigs,
        clause_text=tuple(lines + pred_lines + zero_lines),
        bound=lambda n, a=a, b=b: a * (n + 1) ** b,
        bound_description=f"{a}*(n+1)^{b}",
        data_order=0,
        deterministic=True,
    )


def _paren_pattern(p: str) -> str:
    return p if p.startswith("(") else f"({p})"


def _paren_type(t: str) -> str:
    return f"({t})" if ("*" in t or "=>" in t) else t


def extend_succ_equal(m: CountingModule) -> CountingModule:
    """Add ``equal``, ``succ`` and the helper ``sc`` to a module."""
    if m.has_equal:
        return m
    t = m.tag
    num = _paren_type(pretty_type(m.number_type))
    sigs = m.signatures + (
        (f"succ_{t}", f"list => {num} => {num}"),
        (f"sc_{t}", f"list => {num} => {num} => {num}"),
        (f"equal_{t}", f"list => {num} => {num} => bool"),
    )
    seed, pred, zero = m.seed, m.pred, m.zero
    clauses = m.clause_text + (
        f"succ_{t} cs i = sc_{t} cs ({seed} cs) i",
        f"sc_{t} cs j i = if equal_{t} cs ({pred} cs j) i then j else sc_{t} cs ({pred} cs j) i",
        f"equal_{t} cs i j = if {zero} cs i then {zero} cs j"
        f" else if {zero} cs j then false else equal_{t} cs ({pred} cs i) ({pred} cs j)",
    )
    return CountingModule(m.tag, m.number_type, sigs, clauses, m.bound, m.bound_description,
                          m.data_order, m.deterministic, True)


def gen_count_exp(inner: CountingModule) -> CountingModule:
    """Bit vectors over the inner numbers, most significant bit at inner 0."""
    inner = extend_succ_equal(inner)
    tag = f"e_{inner.tag}"
    a = _paren_type(pretty_type(inner.number_type))
    f_t = f"({a} => bool)"
    s, p, z, eq = inner.seed, inner.pred, inner.zero, inner.equal
    sigs = (
        (f"seed_{tag}", f"list => {a} => bool"),
        (f"zero_{tag}", f"list => {f_t} => bool"),
        (f"zhelp_{tag}", f"list => {f_t} => {a} => bool"),
        (f"pred_{tag}", f"list => {f_t} => {a} => bool"),
        (f"phelp_{tag}", f"list => {f_t} => {a} => {a} => bool"),
        (f"flip_{tag}", f"list => {f_t} => {a} => {a} => bool"),
        (f"not_{tag}", "bool => bool"),
    )
    clauses = (
        f"seed_{tag} cs x = true",
        f"zero_{tag} cs F = zhelp_{tag} cs F ({s} cs)",
        f"zhelp_{tag} cs F k = if F k then false else if {z} cs k then true"
        f" else zhelp_{tag} cs F ({p} cs k)",
        f"pred_{tag} cs F = phelp_{tag} cs F ({s} cs)",
        f"phelp_{tag} cs F k = if F k then flip_{tag} cs F k else if {z} cs k then seed_{tag} cs"
        f" else phelp_{tag} cs (flip_{tag} cs F k) ({p} cs k)",
        f"flip_{tag} cs F k i = if {eq} cs k i then not_{tag} (F i) else F i",
        f"not_{tag} b = if b then false else true",
    )
    return CountingModule(
        tag=tag,
        number_type=parse_type(f"{a} => bool"),
        signatures=sigs + inner.signatures,
        clause_text=clauses + inner.clause_text,
        bound=lambda n, inner=inner: 2 ** inner.bound(n),
        bound_description=f"2^({inner.bound_description})",
        data_order=max(inner.data_order, type_order(inner.number_type) + 1),
        deterministic=inner.deterministic,
    )


def gen_count_nondet(inner: CountingModule) -> CountingModule:
    """Numbers as ``bool -> inner`` values whose bit ``i`` is set when ``F true`` may yield ``i``.

    The input list is passed explicitly to every helper that needs the
    inner module."""
    if inner.data_order > 1:
        raise ValueError("the inner module must have data order at most 1")
    inner = extend_succ_equal(inner)
    tag = f"r_{inner.tag}"
    a = _paren_type(pretty_type(inner.number_type))
    g = f"(bool => {a})"
    s, p, z, eq = inner.seed, inner.pred, inner.zero, inner.equal
    sigs = (
        (f"seed_{tag}", f"list => bool => {a}"),
        (f"base_{tag}", f"{a} => bool => {a}"),
        (f"st1_{tag}", f"{a} => {g} => bool => {a}"),
        (f"st0_{tag}", f"{a} => {g} => bool => {a}"),
        (f"bitset_{tag}", f"list => {g} => {a} => bool"),
        (f"nul_{tag}", f"list => {a}"),
        (f"nulh_{tag}", f"list => {a} => {a}"),
        (f"seedh_{tag}", f"list => {a} => {g} => bool => {a}"),
        (f"zero_{tag}", f"list => {g} => bool"),
        (f"zeroh_{tag}", f"list => {g} => {a} => bool"),
        (f"pred_{tag}", f"list => {g} => bool => {a}"),
        (f"pr_{tag}", f"list => {g} => {a} => {g} => bool => {a}"),
        (f"cp_{tag}", f"list => {g} => {a} => {g} => bool => {a}"),
    )
    clauses = (
        f"seed_{tag} cs = seedh_{tag} cs ({s} cs) (base_{tag} (nul_{tag} cs))",
        f"base_{tag} x b = x",
        f"st1_{tag} n F true = choose(n, F true)",
        f"st1_{tag} n F false = F false",
        f"st0_{tag} n F true = F true",
        f"st0_{tag} n F false = choose(n, F false)",
        f"bitset_{tag} cs F i = if {eq} cs (F true) i then true"
        f" else if {eq} cs (F false) i then false else bitset_{tag} cs F i",
        f"nul_{tag} cs = nulh_{tag} cs ({s} cs)",
        f"nulh_{tag} cs n = if {z} cs n then n else nulh_{tag} cs ({p} cs n)",
        f"seedh_{tag} cs i F = if {z} cs i then F else seedh_{tag} cs ({p} cs i) (st1_{tag} i F)",
        f"zero_{tag} cs F = zeroh_{tag} cs F ({s} cs)",
        f"zeroh_{tag} cs F i = if {z} cs i then true"
        f" else if bitset_{tag} cs F i then false else zeroh_{tag} cs F ({p} cs i)",
        f"pred_{tag} cs F = pr_{tag} cs F ({s} cs) (base_{tag} (nul_{tag} cs))",
        f"pr_{tag} cs F i G = if bitset_{tag} cs F i then cp_{tag} cs F ({p} cs i) (st0_{tag} i G)"
        f" else pr_{tag} cs F ({p} cs i) (st1_{tag} i G)",
        f"cp_{tag} cs F i G = if {z} cs i then G"
        f" else if bitset_{tag} cs F i then cp_{tag} cs F ({p} cs i) (st1_{tag} i G)"
        f" else cp_{tag} cs F ({p} cs i) (st0_{tag} i G)",
    )
    return CountingModule(
        tag=tag,
        number_type=parse_type(f"bool => {a}"),
        signatures=sigs + inner.signatures,
        clause_text=clauses + inner.clause_text,
        bound=lambda n, inner=inner: 2 ** (inner.bound(n) - 1),
        bound_description=f"2^(({inner.bound_description})-1)",
        data_order=1,
        deterministic=False,
    )


# ---------------------------------------------------------------- interpretations and drivers


def interpret_poly(value, n: int) -> int:
    """The number denoted by a tuple of lists, base ``n+1`` with the first digit most significant."""
    digits = []
    while isinstance(value, VPair):
        digits.append(_length(value.left))
        value = value.right
    digits.append(_length(value))
    out = 0
    for d in digits:
        out = out * (n + 1) + d
    return out


def _length(d) -> int:
    k = 0
    while d.con == "cons":
        k += 1
        d = d.args[1]
    return k


def chain_program(m: CountingModule) -> TypedProgram:
    return check_program(parse_program(chain_source(m)))


def chain_source(m: CountingModule) -> str:
    """A driver deciding whether ``pred`` applied ``k`` times to ``seed`` is zero.

    ``main cs k`` takes the input list and ``k`` in unary."""
    num = _paren_type(pretty_type(m.number_type))
    lines = [
        "data nat = z | s nat",
        "main : list => nat => bool",
        f"steps : list => nat => {num} => bool",
        f"main cs k = steps cs k ({m.seed} cs)",
        f"steps cs z v = {m.zero} cs v",
        f"steps cs (s k) v = steps cs k ({m.pred} cs v)",
    ]
    return "\n".join(lines + m.body_lines()) + "\n"


__all__ = [
    "CountingModule",
    "chain_program",
    "chain_source",
    "extend_succ_equal",
    "gen_count_exp",
    "gen_count_nondet",
    "gen_count_poly",
    "interpret_poly",
    "pred_chain",
]


def pred_chain(m: CountingModule, cs, fuel: int = 100_000, limit: int = 10_000) -> list:
    """Values ``seed, pred seed, ...`` up to the first one that is zero.

    Every step must produce exactly one value with an exhausted search;
    this suits deterministic, terminating modules."""
    from .evaluate import eval_call

    tp = m.program()

    def single(f, args):
        out = eval_call(tp, f, args, fuel)
        if not out.exhausted or len(out.values) != 1:
            raise ValueError(f"{f} did not produce exactly one value")
        return next(iter(out.values))

    chain = [single(m.seed, [cs])]
    while single(m.zero, [cs, chain[-1]]).con != "true":
        if len(chain) >= limit:
            raise ValueError("chain longer than the limit")
        chain.append(single(m.pred, [cs, chain[-1]]))
    return chain
