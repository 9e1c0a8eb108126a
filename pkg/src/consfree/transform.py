"""Normalization so that every expression and signature component has a
"proper" type, parameterized by the notion of properness.

Pipeline: eta-expansion of clauses with an improper functional result,
lifting of ``if``/``choose`` out of application heads, excision of
unreachable applications with an improper argument, removal of symbols
with improper signature components, and a fresh ``start`` wrapper.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable

from .syntax import (
    Apply,
    Arrow,
    Choose,
    Clause,
    Constructor,
    Expr,
    FunSymbol,
    If,
    Pair,
    PairExpr,
    Program,
    PVar,
    Sort,
    Type,
    Var,
    apply_all,
    pretty_type,
    spine,
    split_type,
    subexpressions,
    walk,
)
from .typecheck import TypedProgram, check_program, infer_type, type_depth, type_order


class TransformError(Exception):
    """The program does not satisfy a transformation's precondition."""


# ---------------------------------------------------------------- properness


@dataclass(frozen=True)
class Properness:
    """``mode`` is ``"order"``, ``"depth"`` or ``"unitary"``; ``bound`` is K."""

    mode: str
    bound: int

    def __post_init__(self):
        if self.mode not in ("order", "depth", "unitary"):
            raise ValueError(f"unknown properness mode {self.mode!r}")
        if self.bound < 0:
            raise ValueError("bound must be non-negative")

    def proper(self, t: Type) -> bool:
        if self.mode == "order":
            return type_order(t) <= self.bound
        if self.mode == "depth":
            return type_depth(t) <= self.bound
        if type_order(t) > self.bound:
            return False
        if type_order(t) == 0:
            return True
        if isinstance(t, Arrow):
            return not isinstance(t.res, Arrow) and type_order(t.res) == 0
        if isinstance(t, Pair):
            return self.proper(t.left) and self.proper(t.right)
        return False


def OrderAtMost(k: int) -> Properness:  # noqa: N802
    return Properness("order", k)


def DepthAtMost(k: int) -> Properness:  # noqa: N802
    return Properness("depth", k)


def RecursivelyUnitary(k: int) -> Properness:  # noqa: N802
    return Properness("unitary", k)


def signature_components(t: Type) -> list[Type]:
    args, result = split_type(t)
    return args + [result]


def improper_variables(tp: TypedProgram, props: Properness) -> list[tuple[int, str, Type]]:
    return [
        (i, x, t)
        for i, env in enumerate(tp.clause_envs)
        for x, t in env.items()
        if not props.proper(t)
    ]


def require_proper(tp: TypedProgram, props: Properness) -> None:
    bad = improper_variables(tp, props)
    if bad:
        i, x, t = bad[0]
        raise TransformError(
            f"clause {i + 1}: variable {x} has type {pretty_type(t)}, which exceeds "
            f"{props.mode} bound {props.bound}"
        )


# ---------------------------------------------------------------- names


def used_names(p: Program) -> set[str]:
    names = set(p.signatures) | set(p.constructors) | set(p.sorts)
    for c in p.clauses:
        names |= set(c.lhs_vars())
    return names


def fresh(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


# ---------------------------------------------------------------- eta expansion


def eta_expand_improper(tp: TypedProgram, props: Properness) -> TypedProgram:
    """Give clauses with an improper result ``σ => τ`` (σ proper) one more
    argument, for every clause of that root, until none is left."""
    while True:
        p = tp.program
        roots = []
        for f, arity in tp.arities.items():
            rest = _drop(p.signatures[f], arity)
            if isinstance(rest, Arrow) and not props.proper(rest) and props.proper(rest.arg):
                roots.append(f)
        if not roots:
            return tp
        taken = used_names(p)
        new_clauses = []
        for c in p.clauses:
            if c.root in roots:
                x = fresh("x_eta", taken | set(c.lhs_vars()))
                c = Clause(c.root, c.patterns + (PVar(x),), Apply(c.body, Var(x)))
            new_clauses.append(c)
        tp = check_program(p.replace(clauses=new_clauses))


def _drop(t: Type, n: int) -> Type:
    for _ in range(n):
        t = t.res
    return t


# ---------------------------------------------------------------- lifting


def lift_expr(e: Expr) -> Expr:
    """Push ``if``/``choose`` heads of applications over their arguments."""
    head, args = spine(e)
    args = [lift_expr(a) for a in args]
    if args and isinstance(head, If):
        return If(
            lift_expr(head.cond),
            lift_expr(apply_all(head.then, args)),
            lift_expr(apply_all(head.else_, args)),
        )
    if args and isinstance(head, Choose):
        return Choose(tuple(lift_expr(apply_all(a, args)) for a in head.alts))
    return apply_all(_lift_node(head), args)


def _lift_node(e: Expr) -> Expr:
    if isinstance(e, Constructor):
        return Constructor(e.name, tuple(lift_expr(a) for a in e.args))
    if isinstance(e, If):
        return If(lift_expr(e.cond), lift_expr(e.then), lift_expr(e.else_))
    if isinstance(e, Choose):
        return Choose(tuple(lift_expr(a) for a in e.alts))
    if isinstance(e, PairExpr):
        return PairExpr(lift_expr(e.left), lift_expr(e.right))
    return e


def lift_head_conditionals(tp: TypedProgram) -> TypedProgram:
    p = tp.program
    clauses = [Clause(c.root, c.patterns, lift_expr(c.body)) for c in p.clauses]
    return check_program(p.replace(clauses=clauses))


def has_lifted_heads(e: Expr) -> bool:
    for t in walk(e):
        if isinstance(t, Apply) and isinstance(spine(t)[0], (If, Choose)):
            return True
    return False


# ---------------------------------------------------------------- excision


def bottom_name(t: Type) -> str:
    return "bot_" + hashlib.sha1(pretty_type(t).encode()).hexdigest()[:8]


def excise_improper_args(tp: TypedProgram, props: Properness) -> TypedProgram:
    """Replace each outermost application ``a s1 ... sn`` (``a`` a variable
    or defined symbol) of proper type with an improper argument by a
    looping constant of the same type."""
    p = tp.program
    if any(has_lifted_heads(c.body) for c in p.clauses):
        raise TransformError("if/choose heads must be lifted before excision")
    bottoms: dict[Type, str] = {}
    taken = used_names(p)

    def bottom(t: Type) -> FunSymbol:
        if t not in bottoms:
            name = bottom_name(t)
            while name in taken:
                name += "_"
            taken.add(name)
            bottoms[t] = name
        return FunSymbol(bottoms[t])

    clauses = []
    for i, c in enumerate(p.clauses):
        env = tp.clause_envs[i]

        def ty(e: Expr) -> Type:
            return infer_type(e, env, p, i)

        def go(e: Expr) -> Expr:
            if isinstance(e, Apply):
                head, args = spine(e)
                if isinstance(head, (Var, FunSymbol)):
                    t = ty(e)
                    if props.proper(t) and any(not props.proper(ty(a)) for a in args):
                        return bottom(t)
                    return apply_all(head, [go(a) for a in args])
                return apply_all(go(head), [go(a) for a in args])
            if isinstance(e, Constructor):
                return Constructor(e.name, tuple(go(a) for a in e.args))
            if isinstance(e, If):
                return If(go(e.cond), go(e.then), go(e.else_))
            if isinstance(e, Choose):
                return Choose(tuple(go(a) for a in e.alts))
            if isinstance(e, PairExpr):
                return PairExpr(go(e.left), go(e.right))
            return e

        clauses.append(Clause(c.root, c.patterns, go(c.body)))
    if not bottoms:
        return tp
    sigs = list(p.fun_sigs) + [(name, t) for t, name in bottoms.items()]
    clauses += [Clause(name, (), FunSymbol(name)) for name in bottoms.values()]
    return check_program(p.replace(fun_sigs=sigs, clauses=clauses))


# ---------------------------------------------------------------- removal


def bad_symbols(p: Program, props: Properness) -> set[str]:
    return {
        f
        for f, t in p.fun_sigs
        if any(not props.proper(c) for c in signature_components(t))
    }


def drop_improper_symbols(tp: TypedProgram, props: Properness) -> TypedProgram:
    p = tp.program
    bad = bad_symbols(p, props)
    if not bad:
        return tp
    if p.main in bad:
        raise TransformError(f"main function {p.main} has an improper type")
    clauses = [c for c in p.clauses if c.root not in bad]
    for c in clauses:
        for e in walk(c.body):
            if isinstance(e, FunSymbol) and e.name in bad:
                raise AssertionError(
                    f"internal error: removed symbol {e.name} still used by a clause of {c.root}"
                )
    sigs = [(f, t) for f, t in p.fun_sigs if f not in bad]
    return check_program(p.replace(fun_sigs=sigs, clauses=clauses))


# ---------------------------------------------------------------- start wrapper


def add_start_wrapper(tp: TypedProgram) -> TypedProgram:
    p = tp.program
    taken = used_names(p)
    name = "start"
    i = 0
    while name in taken:
        i += 1
        name = f"start_{i}"
    m = len(tp.input_types)
    xs = []
    for j in range(m):
        x = fresh(f"x{j + 1}", taken)
        taken.add(x)
        xs.append(x)
    clause = Clause(name, tuple(PVar(x) for x in xs), apply_all(FunSymbol(p.main), [Var(x) for x in xs]))
    sigs = [(name, tp.main_type)] + list(p.fun_sigs)
    return check_program(p.replace(fun_sigs=sigs, clauses=[clause] + list(p.clauses)))


# ---------------------------------------------------------------- pipeline


def normalize_core(tp: TypedProgram, props: Properness) -> TypedProgram:
    require_proper(tp, props)
    tp = eta_expand_improper(tp, props)
    tp = lift_head_conditionals(tp)
    tp = excise_improper_args(tp, props)
    return drop_improper_symbols(tp, props)


def normalize(tp: TypedProgram, props: Properness) -> TypedProgram:
    return add_start_wrapper(normalize_core(tp, props))


def normal_form_violations(tp: TypedProgram, props: Properness) -> list[str]:
    """Signature components and body sub-expressions with improper types."""
    p = tp.program
    out = []
    for f, t in p.fun_sigs:
        for comp in signature_components(t):
            if not props.proper(comp):
                out.append(f"{f}: signature component {pretty_type(comp)} is improper")
    for i, c in enumerate(p.clauses):
        for e in subexpressions(c.body):
            t = tp.expr_type(i, e)
            if not props.proper(t):
                out.append(f"clause {i + 1}: sub-expression of improper type {pretty_type(t)}")
    return out


# ---------------------------------------------------------------- fixtype


def fixtype(t: Type) -> Type:
    """Collapse the unused tail of unitary arrows so that arrow depth
    matches order.  Arrows ending in a non-order-0 result are rewritten
    componentwise."""
    if isinstance(t, Sort):
        return t
    if isinstance(t, Pair):
        return Pair(fixtype(t.left), fixtype(t.right))
    args, result = split_type(t)
    if type_order(result) == 0:
        return Arrow(fixtype(args[0]), result)
    return _arrows([fixtype(a) for a in args], fixtype(result))


def _arrows(args: Iterable[Type], result: Type) -> Type:
    out = result
    for a in reversed(list(args)):
        out = Arrow(a, out)
    return out


def fixtype_signature(t: Type) -> Type:
    args, result = split_type(t)
    return _arrows([fixtype(a) for a in args], fixtype(result))


def fixtype_signatures(tp: TypedProgram) -> TypedProgram:
    p = tp.program
    sigs = [(f, fixtype_signature(t)) for f, t in p.fun_sigs]
    return check_program(p.replace(fun_sigs=sigs))


def normalize_unitary(tp: TypedProgram, k: int) -> TypedProgram:
    """Normalize under recursive unitarity, then shrink signatures so the
    arrow depth of every variable is at most ``k``."""
    return fixtype_signatures(normalize(tp, RecursivelyUnitary(k)))


__all__ = [
    "Properness",
    "OrderAtMost",
    "DepthAtMost",
    "RecursivelyUnitary",
    "TransformError",
    "add_start_wrapper",
    "eta_expand_improper",
    "lift_head_conditionals",
    "excise_improper_args",
    "drop_improper_symbols",
    "normalize",
    "normalize_core",
    "normal_form_violations",
    "fixtype",
    "fixtype_signatures",
    "normalize_unitary",
]

