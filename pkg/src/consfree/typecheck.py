"""Type checking, well-formedness and the static program metrics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .syntax import (
    BOOL,
    Arrow,
    Choose,
    Clause,
    Constructor,
    Expr,
    FunSymbol,
    If,
    Pair,
    PairExpr,
    PPair,
    Program,
    PVar,
    Sort,
    Type,
    Var,
    drop_args,
    pattern_to_expr,
    pretty_expr,
    pretty_type,
    split_type,
    subexpression_list,
    subexpressions,
    walk,
)


# ---------------------------------------------------------------- metrics


def type_order(t: Type) -> int:
    if isinstance(t, Sort):
        return 0
    if isinstance(t, Pair):
        return max(type_order(t.left), type_order(t.right))
    return max(type_order(t.arg) + 1, type_order(t.res))


def type_depth(t: Type) -> int:
    if isinstance(t, Sort):
        return 0
    if isinstance(t, Pair):
        return max(type_depth(t.left), type_depth(t.right))
    return 1 + max(type_depth(t.arg), type_depth(t.res))


def type_length(t: Type) -> int:
    if isinstance(t, Sort):
        return 1
    if isinstance(t, Pair):
        return type_length(t.left) + type_length(t.right)
    return type_length(t.arg) + type_length(t.res)


def type_metrics(t: Type) -> tuple[int, int, int]:
    """(order, arrow depth, length) of a type."""
    return type_order(t), type_depth(t), type_length(t)


def is_unitary_type(t: Type) -> bool:
    """A sort-or-pair of order 0, or ``σ => κ`` with ``κ`` of order 0."""
    if type_order(t) == 0:
        return True
    return isinstance(t, Arrow) and not isinstance(t.res, Arrow) and type_order(t.res) == 0


# ---------------------------------------------------------------- errors


class TypeCheckError(Exception):
    """Raised when a program is ill-typed or ill-formed.

    ``rule`` names the violated requirement, e.g. ``"inconsistent-arity"``.
    """

    def __init__(self, rule: str, message: str, clause: int | None = None):
        self.rule, self.message, self.clause = rule, message, clause
        where = f"clause {clause + 1}: " if clause is not None else ""
        super().__init__(f"{where}{message} [{rule}]")


# ---------------------------------------------------------------- typing


@dataclass(frozen=True)
class TypedProgram:
    program: Program
    clause_envs: tuple[dict[str, Type], ...]
    clause_types: tuple[Type, ...]
    arities: dict[str, int]

    @property
    def main(self) -> str:
        return self.program.main

    @property
    def main_type(self) -> Type:
        return self.program.signatures[self.main]

    @property
    def input_types(self) -> list[Type]:
        return split_type(self.main_type)[0]

    def expr_type(self, clause_index: int, e: Expr) -> Type:
        return infer_type(e, self.clause_envs[clause_index], self.program)


def infer_type(e: Expr, env: dict[str, Type], program: Program, clause: int | None = None) -> Type:
    """Synthesize the unique type of ``e`` (types are never ambiguous here)."""

    def fail(msg: str) -> None:
        raise TypeCheckError("ill-typed", msg, clause)

    def go(e: Expr) -> Type:
        if isinstance(e, Var):
            if e.name not in env:
                raise TypeCheckError("unbound-variable", f"variable {e.name!r} is not bound by the left-hand side", clause)
            return env[e.name]
        if isinstance(e, FunSymbol):
            return program.signatures[e.name]
        if isinstance(e, Constructor):
            args, sort = program.constructors[e.name]
            if len(e.args) != len(args):
                raise TypeCheckError(
                    "partial-constructor",
                    f"constructor {e.name!r} needs {len(args)} arguments, has {len(e.args)}",
                    clause,
                )
            for a, want in zip(e.args, args):
                got = go(a)
                if got != want:
                    fail(f"argument {pretty_expr(a)} of {e.name!r} has type {pretty_type(got)}, expected {pretty_type(want)}")
            return Sort(sort)
        if isinstance(e, If):
            c = go(e.cond)
            if c != BOOL:
                fail(f"condition {pretty_expr(e.cond)} has type {pretty_type(c)}")
            a, b = go(e.then), go(e.else_)
            if a != b:
                fail(f"branches have types {pretty_type(a)} and {pretty_type(b)}")
            return a
        if isinstance(e, Choose):
            ts = [go(a) for a in e.alts]
            if any(t != ts[0] for t in ts):
                fail("choose alternatives differ in type: " + ", ".join(pretty_type(t) for t in ts))
            return ts[0]
        if isinstance(e, PairExpr):
            return Pair(go(e.left), go(e.right))
        h = go(e.head)
        if not isinstance(h, Arrow):
            fail(f"{pretty_expr(e.head)} of type {pretty_type(h)} is applied to an argument")
        a = go(e.arg)
        if a != h.arg:
            fail(f"argument {pretty_expr(e.arg)} has type {pretty_type(a)}, expected {pretty_type(h.arg)}")
        return h.res

    return go(e)


def _type_pattern(p, t: Type, env: dict[str, Type], program: Program, clause: int) -> None:
    if isinstance(p, PVar):
        if p.name in env:
            raise TypeCheckError("nonlinear-pattern", f"variable {p.name!r} occurs twice on the left-hand side", clause)
        env[p.name] = t
    elif isinstance(p, PPair):
        if not isinstance(t, Pair):
            raise TypeCheckError("ill-typed", f"pair pattern at type {pretty_type(t)}", clause)
        _type_pattern(p.left, t.left, env, program, clause)
        _type_pattern(p.right, t.right, env, program, clause)
    else:
        args, sort = program.constructors[p.name]
        if len(p.args) != len(args):
            raise TypeCheckError(
                "partial-constructor",
                f"constructor {p.name!r} needs {len(args)} arguments in a pattern, has {len(p.args)}",
                clause,
            )
        if t != Sort(sort):
            raise TypeCheckError("ill-typed", f"pattern {p.name!r} of sort {sort} at type {pretty_type(t)}", clause)
        for a, want in zip(p.args, args):
            _type_pattern(a, want, env, program, clause)


def check_program(p: Program) -> TypedProgram:
    """Check well-typedness and well-formedness; return the typing data."""
    for _, (args, sort) in p.constructors.items():
        for a in args:
            if type_order(a) != 0:
                raise TypeCheckError("constructor-type", f"constructor argument of sort {sort} has type {pretty_type(a)} of order > 0")

    for f in p.signatures:
        if not p.clauses_of(f):
            raise TypeCheckError("no-clauses", f"defined symbol {f!r} has a signature but no clauses")

    main_args, main_res = split_type(p.signatures[p.main])
    if any(type_order(a) for a in main_args) or type_order(main_res):
        raise TypeCheckError(
            "main-type",
            f"main function {p.main!r} has type {pretty_type(p.signatures[p.main])}; arguments and result must have order 0",
        )

    arities: dict[str, int] = {}
    envs, types = [], []
    for i, c in enumerate(p.clauses):
        if c.root in arities and arities[c.root] != c.arity:
            raise TypeCheckError(
                "inconsistent-arity",
                f"{c.root!r} has clauses with {arities[c.root]} and {c.arity} arguments",
                i,
            )
        arities[c.root] = c.arity
        sig = p.signatures[c.root]
        sig_args, _ = split_type(sig)
        if c.arity > len(sig_args):
            raise TypeCheckError("ill-typed", f"{c.root!r} of type {pretty_type(sig)} given {c.arity} patterns", i)
        env: dict[str, Type] = {}
        for pat, t in zip(c.patterns, sig_args):
            _type_pattern(pat, t, env, p, i)
        unbound = sorted(
            {e.name for e in walk(c.body) if isinstance(e, Var)} - set(env)
        )
        if unbound:
            raise TypeCheckError("unbound-variable", f"variables {unbound} occur in the body but not on the left", i)
        want = drop_args(sig, c.arity)
        got = infer_type(c.body, env, p, i)
        if got != want:
            raise TypeCheckError(
                "ill-typed", f"body has type {pretty_type(got)} but the left-hand side has {pretty_type(want)}", i
            )
        envs.append(env)
        types.append(want)
    return TypedProgram(p, tuple(envs), tuple(types), arities)


# ---------------------------------------------------------------- analysis


@dataclass(frozen=True)
class AnalysisReport:
    cons_free: bool
    deterministic: bool
    data_order: int
    data_arrow_depth: int
    unitary: bool
    offending_locations: tuple[tuple[int, str, str], ...] = field(default=())

    def to_text(self) -> str:
        yn = lambda b: "yes" if b else "no"  # noqa: E731
        lines = [
            f"cons_free: {yn(self.cons_free)}",
            f"deterministic: {yn(self.deterministic)}",
            f"data_order: {self.data_order}",
            f"arrow_depth: {self.data_arrow_depth}",
            f"unitary: {yn(self.unitary)}",
        ]
        for i, expr, reason in self.offending_locations:
            lines.append(f"# clause {i + 1}: {reason}: {expr}")
        return "\n".join(lines) + "\n"


def non_cons_free_subterms(c: Clause) -> list[Expr]:
    """Constructor sub-expressions of the body that build new data."""
    pattern_subs: set[Expr] = set()
    for p in c.patterns:
        pattern_subs |= subexpressions(pattern_to_expr(p))
    out = []
    for t in subexpression_list(c.body):
        if isinstance(t, Constructor) and not is_ground_data(t) and t not in pattern_subs:
            out.append(t)
    return out


def is_ground_data(e: Expr) -> bool:
    if isinstance(e, Constructor):
        return all(is_ground_data(a) for a in e.args)
    if isinstance(e, PairExpr):
        return is_ground_data(e.left) and is_ground_data(e.right)
    return False


def check_cons_free(tp: TypedProgram) -> tuple[bool, list[tuple[int, str, str]]]:
    offenders = []
    for i, c in enumerate(tp.program.clauses):
        for t in non_cons_free_subterms(c):
            offenders.append((i, pretty_expr(t), "constructs new data"))
    return not offenders, offenders


def is_deterministic(p: Program) -> bool:
    return not any(isinstance(e, Choose) for c in p.clauses for e in walk(c.body))


def variable_types(tp: TypedProgram) -> Iterable[tuple[int, str, Type]]:
    for i, env in enumerate(tp.clause_envs):
        for x, t in env.items():
            yield i, x, t


def analyze(tp: TypedProgram) -> AnalysisReport:
    cons_free, offenders = check_cons_free(tp)
    offenders = list(offenders)
    for i, c in enumerate(tp.program.clauses):
        if any(isinstance(e, Choose) for e in walk(c.body)):
            offenders.append((i, pretty_expr(c.body), "uses choose"))
    order = depth = 0
    unitary = True
    for i, x, t in variable_types(tp):
        order = max(order, type_order(t))
        depth = max(depth, type_depth(t))
        if not is_unitary_type(t):
            unitary = False
            offenders.append((i, x, f"variable of non-unitary type {pretty_type(t)}"))
    return AnalysisReport(
        cons_free=cons_free,
        deterministic=is_deterministic(tp.program),
        data_order=order,
        data_arrow_depth=depth,
        unitary=unitary,
        offending_locations=tuple(offenders),
    )
