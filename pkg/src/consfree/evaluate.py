"""Reference call-by-value evaluator with exhaustive non-deterministic branching.

``fuel`` bounds the depth of derivation trees: a judgement at depth ``d``
may only use sub-derivations of depth ``d - 1``.  Each judgement form is
evaluated to the *set* of values it can derive within its budget, which
keeps the search polynomial in the number of distinct outcomes instead of
the number of derivation paths.  Nothing is cached between judgements.
"""

from __future__ import annotations

import random
import sys
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, TypeVar

from .syntax import (
    Apply,
    Choose,
    Clause,
    Constructor,
    Expr,
    FunSymbol,
    If,
    PairExpr,
    Pattern,
    PPair,
    Pair,
    Program,
    PVar,
    Sort,
    Var,
    apply_all,
    pretty_type,
    subexpressions,
)
from .typecheck import TypedProgram
from .values import Closure, Data, Value, VPair, data_size, sub_data

T = TypeVar("T")

Env = dict


# ---------------------------------------------------------------- deep recursion


def run_deep(fn: Callable[..., T], *args, stack_mb: int = 512, **kwargs) -> T:
    """Run ``fn`` on a thread with a large stack and a high recursion limit."""
    box: dict = {}

    def target():
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 1_000_000))
        try:
            box["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised on the caller's thread
            box["error"] = exc
        finally:
            sys.setrecursionlimit(old)

    if threading.current_thread().name == "consfree-deep":
        return fn(*args, **kwargs)
    old_size = threading.stack_size()
    threading.stack_size(stack_mb * 1024 * 1024)
    try:
        t = threading.Thread(target=target, name="consfree-deep")
        t.start()
        t.join()
    finally:
        threading.stack_size(old_size)
    if "error" in box:
        raise box["error"]
    return box["value"]


# ---------------------------------------------------------------- matching


def match_pattern(p: Pattern, v: Value, env: Env | None = None) -> Env | None:
    """The unique environment instantiating ``p`` to ``v``, or ``None``."""
    env = {} if env is None else env
    if isinstance(p, PVar):
        env[p.name] = v
        return env
    if isinstance(p, PPair):
        if not isinstance(v, VPair):
            return None
        if match_pattern(p.left, v.left, env) is None:
            return None
        return match_pattern(p.right, v.right, env)
    if not isinstance(v, Data) or v.con != p.name or len(v.args) != len(p.args):
        return None
    for q, w in zip(p.args, v.args):
        if match_pattern(q, w, env) is None:
            return None
    return env


def match_clause(c: Clause, args) -> Env | None:
    env: Env = {}
    for p, v in zip(c.patterns, args):
        if match_pattern(p, v, env) is None:
            return None
    return env


def first_match(clauses: list[Clause], args) -> tuple[Clause, Env] | None:
    for c in clauses:
        env = match_clause(c, args)
        if env is not None:
            return c, env
    return None


# ---------------------------------------------------------------- B


def ground_data_exprs(e: Expr) -> set[Data]:
    """Data values of the ground constructor sub-expressions of ``e``."""
    out = set()
    for t in subexpressions(e):
        d = _ground(t)
        if isinstance(d, Data):
            out.add(d)
    return out


def _ground(e: Expr):
    if isinstance(e, Constructor):
        args = [_ground(a) for a in e.args]
        if any(a is None for a in args):
            return None
        return Data(e.name, args)
    return None


def compute_B(p: Program, inputs: Iterable[Value]) -> frozenset[Data]:
    """Sub-data of the inputs together with the data constants of the bodies."""
    out: set[Data] = set()
    for d in inputs:
        out |= sub_data(d)
    for c in p.clauses:
        for d in ground_data_exprs(c.body):
            out |= sub_data(d)
    return frozenset(out)


# ---------------------------------------------------------------- evaluation


@dataclass(frozen=True)
class EvalOutcome:
    values: frozenset
    exhausted: bool
    trace: frozenset = field(default=frozenset(), compare=False)


class _Evaluator:
    def __init__(self, tp: TypedProgram, record: bool = False):
        self.program = tp.program
        self.arity = tp.arities
        self.clauses: dict[str, list[Clause]] = {}
        for c in tp.program.clauses:
            self.clauses.setdefault(c.root, []).append(c)
        self.truncated = False
        self.record = record
        self.seen: set = set()

    def _note(self, vals):
        if self.record:
            self.seen |= vals
        return vals

    def expr(self, e: Expr, env: Env, d: int) -> set:
        if d <= 0:
            self.truncated = True
            return set()
        if isinstance(e, Var):
            return self._note({env[e.name]})
        if isinstance(e, FunSymbol):
            return self.call(e.name, (), d - 1)
        if isinstance(e, Constructor):
            results = [()]
            for a in e.args:
                vals = self.expr(a, env, d - 1)
                results = [r + (v,) for r in results for v in vals]
            return self._note({Data(e.name, r) for r in results})
        if isinstance(e, PairExpr):
            left = self.expr(e.left, env, d - 1)
            right = self.expr(e.right, env, d - 1) if left else set()
            return self._note({VPair(a, b) for a in left for b in right})
        if isinstance(e, Choose):
            out = set()
            for a in e.alts:
                out |= self.expr(a, env, d - 1)
            return out
        if isinstance(e, If):
            out = set()
            for b in self.expr(e.cond, env, d - 1):
                if d - 1 <= 0:
                    self.truncated = True
                    continue
                out |= self.expr(e.then if b.con == "true" else e.else_, env, d - 2)
            return out
        assert isinstance(e, Apply)
        heads = self.expr(e.head, env, d - 1)
        if not heads:
            return set()
        args = self.expr(e.arg, env, d - 1)
        out = set()
        for h in heads:
            for a in args:
                out |= self.call(h.fun, h.args + (a,), d - 1)
        return out

    def call(self, f: str, args: tuple, d: int) -> set:
        if d <= 0:
            self.truncated = True
            return set()
        if len(args) < self.arity[f]:
            return self._note({Closure(f, args)})
        m = first_match(self.clauses[f], args)
        if m is None:
            return set()
        c, env = m
        return self._note(self.expr(c.body, env, d - 1))

    def apply_value(self, v, args: tuple, d: int) -> set:
        """Apply a value to further arguments (as repeated [Appl] steps)."""
        current = {v}
        for a in args:
            nxt = set()
            for h in current:
                nxt |= self.call(h.fun, h.args + (a,), d)
            current = nxt
        return current


def _input_env(tp: TypedProgram, inputs: list) -> tuple[Expr, Env]:
    n_inputs = len(tp.input_types)
    if len(inputs) != n_inputs:
        raise ValueError(f"{tp.main} expects {n_inputs} inputs, got {len(inputs)}")
    names = [f"x{i + 1}" for i in range(n_inputs)]
    expr = apply_all(FunSymbol(tp.main), [Var(x) for x in names])
    return expr, dict(zip(names, inputs))


def data_has_type(v, t, program: Program) -> bool:
    if isinstance(t, Sort):
        if not isinstance(v, Data) or v.con not in program.constructors:
            return False
        arg_types, sort = program.constructors[v.con]
        return (
            sort == t.name
            and len(arg_types) == len(v.args)
            and all(data_has_type(a, at, program) for a, at in zip(v.args, arg_types))
        )
    if isinstance(t, Pair):
        return isinstance(v, VPair) and data_has_type(v.left, t.left, program) and data_has_type(v.right, t.right, program)
    return False


def check_inputs(tp: TypedProgram, inputs: list) -> None:
    for i, (v, t) in enumerate(zip(inputs, tp.input_types)):
        if not data_has_type(v, t, tp.program):
            raise ValueError(f"input {i + 1} is not a data value of type {pretty_type(t)}")


def eval_all(tp: TypedProgram, inputs: list, fuel: int, record: bool = False) -> EvalOutcome:
    """All results derivable by derivation trees of depth at most ``fuel``."""
    check_inputs(tp, inputs)
    expr, env = _input_env(tp, inputs)
    ev = _Evaluator(tp, record)
    vals = run_deep(ev.expr, expr, env, fuel)
    return EvalOutcome(frozenset(vals), not ev.truncated, frozenset(ev.seen))


def eval_call(tp: TypedProgram, f: str, args: list, fuel: int) -> EvalOutcome:
    """Results of ``f v1 ... vn`` for arbitrary values (closures included)."""
    ev = _Evaluator(tp)
    k = min(len(args), tp.arities[f])

    def go():
        first = ev.call(f, tuple(args[:k]), fuel)
        out = set()
        for v in first:
            out |= ev.apply_value(v, tuple(args[k:]), fuel)
        return out

    vals = run_deep(go)
    return EvalOutcome(frozenset(vals), not ev.truncated)


def eval_expr(tp: TypedProgram, e: Expr, env: Env, fuel: int) -> EvalOutcome:
    ev = _Evaluator(tp)
    vals = run_deep(ev.expr, e, env, fuel)
    return EvalOutcome(frozenset(vals), not ev.truncated)


def check_safety(p: Program, inputs: list, trace: Iterable) -> bool:
    """Whether every constructor value touched during a run lies in B."""
    B = compute_B(p, inputs)
    touched: set = set()
    for v in trace:
        touched |= sub_data(v)
    return touched <= B


def outputs_in_B(tp: TypedProgram, inputs: list, values: Iterable) -> bool:
    B = compute_B(tp.program, inputs)
    return all(sub_data(v) <= B for v in values)


# ---------------------------------------------------------------- sampling


class _Sampler:
    def __init__(self, tp: TypedProgram, rng: random.Random, steps: int):
        self.ev = _Evaluator(tp)
        self.rng = rng
        self.steps = steps

    def _tick(self):
        self.steps -= 1
        if self.steps < 0:
            raise _OutOfSteps

    def expr(self, e: Expr, env: Env):
        self._tick()
        if isinstance(e, Var):
            return env[e.name]
        if isinstance(e, FunSymbol):
            return self.call(e.name, ())
        if isinstance(e, Constructor):
            return Data(e.name, [self.expr(a, env) for a in e.args])
        if isinstance(e, PairExpr):
            return VPair(self.expr(e.left, env), self.expr(e.right, env))
        if isinstance(e, Choose):
            return self.expr(self.rng.choice(e.alts), env)
        if isinstance(e, If):
            b = self.expr(e.cond, env)
            return self.expr(e.then if b.con == "true" else e.else_, env)
        h = self.expr(e.head, env)
        a = self.expr(e.arg, env)
        return self.call(h.fun, h.args + (a,))

    def call(self, f: str, args: tuple):
        self._tick()
        if len(args) < self.ev.arity[f]:
            return Closure(f, args)
        m = first_match(self.ev.clauses[f], args)
        if m is None:
            raise _Stuck
        c, env = m
        return self.expr(c.body, env)


class _OutOfSteps(Exception):
    pass


class _Stuck(Exception):
    pass


def sample(tp: TypedProgram, inputs: list, seed: int, max_steps: int = 1_000_000):
    """Follow one uniformly random path through ``choose``.

    Returns the value, or ``None`` when the path gets stuck or runs out of
    steps.  A convenience only: it says nothing about the full result set.
    """
    check_inputs(tp, inputs)
    expr, env = _input_env(tp, inputs)
    s = _Sampler(tp, random.Random(seed), max_steps)
    try:
        return run_deep(s.expr, expr, env)
    except (_OutOfSteps, _Stuck):
        return None


# ---------------------------------------------------------------- input enumeration


def data_of_type(p: Program, t, max_size: int) -> list:
    """All data values of type ``t`` with at most ``max_size`` constructor nodes."""
    from functools import lru_cache

    from .values import canonical

    @lru_cache(maxsize=None)
    def of(t, budget: int) -> tuple:
        if budget <= 0:
            return ()
        if isinstance(t, Pair):
            out = []
            for a in of(t.left, budget - 1):
                rest = budget - data_size(a)
                out += [VPair(a, b) for b in of(t.right, rest)]
            return tuple(out)
        if not isinstance(t, Sort):
            return ()
        out = []
        for con, (arg_types, sort) in p.constructors.items():
            if sort != t.name:
                continue
            combos = [((), budget - 1)]
            for at in arg_types:
                nxt = []
                for args, left in combos:
                    for a in of(at, left):
                        nxt.append((args + (a,), left - data_size(a)))
                combos = nxt
            out += [Data(con, args) for args, left in combos if left >= 0]
        return tuple(out)

    return canonical(of(t, max_size))


def input_tuples(tp: TypedProgram, max_total: int) -> list[tuple]:
    """Input tuples for ``main`` whose summed size is at most ``max_total``."""
    out: list[tuple] = [()]
    for t in tp.input_types:
        pool = data_of_type(tp.program, t, max_total)
        out = [acc + (v,) for acc in out for v in pool]
    return [acc for acc in out if sum(data_size(v) for v in acc) <= max_total]
