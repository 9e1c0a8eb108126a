"""Deciding program results by saturating a finite set of statements.

After normalization, every value that can matter is represented by an
extensional value over the data universe ``B``.  A *call statement*
``f e1 ... en ~> o`` claims that ``f`` applied to (values represented by)
the ``ei`` may produce (a value represented by) ``o``; a *body statement*
``η |- t ~> o`` makes the same claim for a sub-expression ``t`` of a
clause body under an extensional environment ``η``.  Confirmations only
ever grow, so repeated application of the confirmation rules reaches a
fixpoint.

Two schedulers compute that fixpoint:

``naive``
    materializes every statement up front and re-scans all unconfirmed
    ones until nothing changes.  Exponential in practice; meant for tiny
    programs and as a reference.

``worklist``
    explores only statements reachable from the start call.  For each
    full call ``f e1 ... ek`` it stores the maximal confirmed outputs;
    confirmed sets are downward closed in the output and monotone in the
    arguments, so maximal elements describe them completely.  An entry is
    re-evaluated whenever an entry it read from grows.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .evaluate import compute_B, data_has_type, run_deep
from .extensional import (
    DEFAULT_CEILING,
    DET,
    MODES,
    NONDET,
    TooLarge,
    Universe,
    covered,
    ext_geq,
    ext_match,
    maximal,
    metric_value,
)
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
    PConstructor,
    PPair,
    PVar,
    Type,
    Var,
    drop_args,
    pretty_expr,
    pretty_type,
    pretty_value,
    spine,
    split_type,
    subexpressions,
)
from .transform import DepthAtMost, OrderAtMost, normalize, normalize_unitary
from .typecheck import TypedProgram, analyze, infer_type
from .values import Data, Relation, VPair, canonical

METRICS = ("order", "depth", "unitary")
SCHEDULERS = ("worklist", "naive")


class TabulationError(Exception):
    """The program or options are outside what tabulation supports."""


# ---------------------------------------------------------------- preparation


@dataclass
class Prepared:
    original: TypedProgram
    program: TypedProgram  # normalized, with a start wrapper as first clause
    inputs: tuple
    mode: str
    metric: str  # metric used to restrict statements: "order" or "depth"
    bound: int
    universe: Universe
    clause_types: list[dict[Expr, Type]] = field(default_factory=list)

    @property
    def start(self) -> str:
        return self.program.main

    def sig(self, f: str) -> Type:
        return self.program.program.signatures[f]

    def arity(self, f: str) -> int:
        return self.program.arities[f]

    def allowed(self, t: Type) -> bool:
        return metric_value(t, self.metric) <= self.bound

    def type_of(self, i: int, e: Expr) -> Type:
        types = self.clause_types[i]
        if e not in types:
            types[e] = infer_type(e, self.program.clause_envs[i], self.program.program, i)
        return types[e]

    def first_match(self, f: str, args: tuple) -> tuple[int, Clause, dict] | None:
        for i in self.clause_index[f]:
            c = self.program.program.clauses[i]
            env = ext_match(c, args)
            if env is not None:
                return i, c, env
        return None

    def __post_init__(self):
        self.clause_index: dict[str, list[int]] = {}
        for i, c in enumerate(self.program.program.clauses):
            self.clause_index.setdefault(c.root, []).append(i)
        self.clause_types = [{} for _ in self.program.program.clauses]


def default_bound(tp: TypedProgram, metric: str) -> int:
    rep = analyze(tp)
    return rep.data_arrow_depth if metric == "depth" else rep.data_order


def prepare(
    tp: TypedProgram,
    inputs: list,
    mode: str,
    metric: str = "order",
    bound: int | None = None,
    ceiling: int = DEFAULT_CEILING,
) -> Prepared:
    if mode not in MODES:
        raise TabulationError(f"unknown mode {mode!r}")
    if metric not in METRICS:
        raise TabulationError(f"unknown metric {metric!r}")
    rep = analyze(tp)
    if not rep.cons_free:
        raise TabulationError("program is not cons-free")
    if mode == DET and not rep.deterministic:
        raise TabulationError("deterministic tabulation needs a program without choose")
    if metric == "unitary" and not rep.unitary:
        raise TabulationError("program does not have unitary variables")
    if len(inputs) != len(tp.input_types):
        raise TabulationError(f"{tp.main} expects {len(tp.input_types)} inputs, got {len(inputs)}")
    for v, t in zip(inputs, tp.input_types):
        if not data_has_type(v, t, tp.program):
            raise TabulationError(f"input {pretty_value(v)} does not have type {pretty_type(t)}")
    k = default_bound(tp, metric) if bound is None else bound
    if metric == "order":
        norm, stmt_metric = normalize(tp, OrderAtMost(k)), "order"
    elif metric == "depth":
        norm, stmt_metric = normalize(tp, DepthAtMost(k)), "depth"
    else:
        norm, stmt_metric = normalize_unitary(tp, k), "depth"
    universe = Universe(norm.program, compute_B(tp.program, inputs), mode, ceiling)
    return Prepared(tp, norm, tuple(inputs), mode, stmt_metric, k, universe)


def instantiate(p: Pattern, env: dict):
    if isinstance(p, PVar):
        return env[p.name]
    if isinstance(p, PPair):
        return VPair(instantiate(p.left, env), instantiate(p.right, env))
    assert isinstance(p, PConstructor)
    return Data(p.name, tuple(instantiate(a, env) for a in p.args))


def ground_instance(e: Expr, env: dict):
    """``tη`` for a term built from variables and constructors only."""
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Constructor):
        args = [ground_instance(a, env) for a in e.args]
        if any(a is None for a in args):
            return None
        return Data(e.name, tuple(args))
    return None


# ---------------------------------------------------------------- worklist


class Worklist:
    """Demand-driven fixpoint over maximal confirmed outputs of full calls."""

    def __init__(self, prep: Prepared):
        self.prep = prep
        self.universe = prep.universe
        self.table: dict[tuple[str, tuple], frozenset] = {}
        self.deps: dict[tuple[str, tuple], set] = {}
        self.queue: deque = deque()
        self.queued: set = set()
        self.current: tuple | None = None
        self.evaluations = 0

    # -- table

    def _enqueue(self, key) -> None:
        if key not in self.queued:
            self.queued.add(key)
            self.queue.append(key)

    def lookup(self, f: str, args: tuple) -> frozenset:
        key = (f, args)
        if key not in self.table:
            self.table[key] = frozenset()
            self.deps[key] = set()
            self._enqueue(key)
        if self.current is not None:
            self.deps[key].add(self.current)
        return self.table[key]

    def solve(self) -> None:
        while self.queue:
            key = self.queue.popleft()
            self.queued.discard(key)
            self.current = key
            try:
                new = self._compute(key)
            finally:
                self.current = None
            self.evaluations += 1
            old = self.table[key]
            if all(covered(o, old) for o in new):
                continue
            self.table[key] = maximal(list(old) + list(new))
            for d in self.deps[key]:
                self._enqueue(d)

    def _compute(self, key) -> frozenset:
        f, args = key
        m = self.prep.first_match(f, args)
        if m is None:
            return frozenset()
        i, c, env = m
        return self.eval(i, c.body, env)

    # -- calls

    def call_max(self, f: str, args: tuple) -> frozenset:
        """Maximal confirmed outputs of ``f args`` (any argument count up to the arity)."""
        k = self.prep.arity(f)
        n = len(args)
        if n == k:
            return self.lookup(f, args)
        rest = drop_args(self.prep.sig(f), n)
        if not self.prep.allowed(rest):
            return frozenset()
        keys = self.universe.values(rest.arg)
        per_key = [(key, self.call_max(f, args + (key,))) for key in keys]
        if self.universe.mode == NONDET:
            return frozenset([Relation(rest, [(key, u) for key, us in per_key for u in us])])
        live = [(key, list(us)) for key, us in per_key if us]
        out = []
        for choice in itertools.product(*[us for _, us in live]):
            out.append(Relation(rest, list(zip([key for key, _ in live], choice))))
        return frozenset(out)

    # -- bodies

    def eval(self, i: int, e: Expr, env: dict) -> frozenset:
        """Maximal confirmed outputs of the body statement ``env |- e``."""
        if isinstance(e, Var):
            return frozenset([env[e.name]])
        if isinstance(e, Constructor):
            parts = [self.eval(i, a, env) for a in e.args]
            out = set()
            for combo in itertools.product(*parts):
                d = Data(e.name, combo)
                if d in self.universe.data:
                    out.add(d)
            return frozenset(out)
        if isinstance(e, If):
            out = []
            for b in self.eval(i, e.cond, env):
                out += self.eval(i, e.then if b.con == "true" else e.else_, env)
            return maximal(out)
        if isinstance(e, Choose):
            out = []
            for a in e.alts:
                out += self.eval(i, a, env)
            return maximal(out)
        if isinstance(e, PairExpr):
            left = self.eval(i, e.left, env)
            right = self.eval(i, e.right, env) if left else frozenset()
            return frozenset(VPair(a, b) for a in left for b in right)
        head, args = spine(e)
        arg_results = [self.eval(i, a, env) for a in args]
        if any(not r for r in arg_results):
            return frozenset()
        if isinstance(head, Var):
            return maximal(apply_relations([env[head.name]], arg_results))
        if not isinstance(head, FunSymbol):
            raise TabulationError(f"unexpected application head {pretty_expr(head)}")
        k = self.prep.arity(head.name)
        out = []
        if len(args) <= k:
            for combo in itertools.product(*arg_results):
                out += self.call_max(head.name, combo)
        else:
            for combo in itertools.product(*arg_results[:k]):
                out += apply_relations(self.call_max(head.name, combo), arg_results[k:])
        return maximal(out)

    # -- queries

    def settle(self, compute):
        while True:
            self.solve()
            result = compute()
            if not self.queue:
                return result

    def query_call(self, f: str, args: tuple, o) -> bool:
        return covered(o, self.settle(lambda: self.call_max(f, args)))

    def query_body(self, i: int, e: Expr, env: dict, o) -> bool:
        return covered(o, self.settle(lambda: self.eval(i, e, env)))

    def results(self) -> frozenset:
        start_args = self.prep.inputs
        out = self.settle(lambda: self.lookup(self.prep.start, start_args))
        return frozenset(out)


def apply_relations(heads: Iterable, arg_results: list) -> list:
    """Outputs reachable from ``heads`` by looking up, for each argument,
    any key below one of that argument's maximal results."""
    current = list(heads)
    for results in arg_results:
        nxt = []
        for r in current:
            for key, vals in r.by_key().items():
                if covered(key, results):
                    nxt += vals
        current = nxt
    return current


# ---------------------------------------------------------------- naive


@dataclass(frozen=True)
class CallStmt:
    fun: str
    args: tuple
    out: object


@dataclass(frozen=True)
class BodyStmt:
    clause: int
    env: tuple  # sorted (variable, value) pairs
    expr: Expr
    out: object


class Naive:
    """Materialize every statement and re-scan until nothing changes."""

    def __init__(self, prep: Prepared, max_statements: int = 200_000):
        self.prep = prep
        self.universe = prep.universe
        self.max_statements = max_statements
        self.calls: list[CallStmt] = []
        self.bodies: list[BodyStmt] = []
        self.confirmed: set = set()
        self.call_out: dict[tuple, set] = {}
        self.body_out: dict[tuple, set] = {}
        self.envs: list[list[dict]] = []
        self.passes = 0
        self._build()

    # -- preparation

    def _budget(self, n: int) -> None:
        if len(self.calls) + len(self.bodies) + n > self.max_statements:
            raise TooLarge(f"more than {self.max_statements} statements")

    def _build(self) -> None:
        prep, u = self.prep, self.universe
        program = prep.program.program
        for f, sig in program.fun_sigs:
            arg_types, _ = split_type(sig)
            for n in range(prep.arity(f) + 1):
                rest = drop_args(sig, n)
                if not prep.allowed(rest):
                    continue
                domains = [u.values(t) for t in arg_types[:n]]
                outs = u.values(rest)
                size = len(outs)
                for d in domains:
                    size *= len(d)
                self._budget(size)
                for args in itertools.product(*domains):
                    for o in outs:
                        self.calls.append(CallStmt(f, args, o))
        for i, c in enumerate(program.clauses):
            envs = self._ext_envs(i, c)
            self.envs.append(envs)
            subs = sorted(subexpressions(c.body), key=pretty_expr)
            for env in envs:
                key_env = tuple(sorted(env.items()))
                for t in subs:
                    outs = u.values(prep.type_of(i, t))
                    self._budget(len(outs))
                    for o in outs:
                        self.bodies.append(BodyStmt(i, key_env, t, o))

    def _ext_envs(self, i: int, c: Clause) -> list[dict]:
        prep, u = self.prep, self.universe
        gamma = prep.program.clause_envs[i]
        names = sorted(gamma)
        arg_types, _ = split_type(prep.sig(c.root))
        out = []
        for vals in itertools.product(*[u.values(gamma[x]) for x in names]):
            env = dict(zip(names, vals))
            if all(u.contains(instantiate(p, env), t) for p, t in zip(c.patterns, arg_types)):
                out.append(env)
        return out

    # -- confirmation

    def _confirm(self, s) -> None:
        self.confirmed.add(s)
        if isinstance(s, CallStmt):
            self.call_out.setdefault((s.fun, s.args), set()).add(s.out)
        else:
            self.body_out.setdefault((s.clause, s.env, s.expr), set()).add(s.out)

    def _body_outs(self, i: int, env: tuple, e: Expr) -> set:
        return self.body_out.get((i, env, e), set())

    def _call_outs(self, f: str, args: tuple) -> set:
        return self.call_out.get((f, args), set())

    def run(self) -> None:
        for s in self.bodies:
            env = dict(s.env)
            if isinstance(s.expr, Var) and ext_geq(env[s.expr.name], s.out):
                self._confirm(s)
            elif isinstance(s.expr, Constructor) and ground_instance(s.expr, env) == s.out:
                self._confirm(s)
        changed = True
        while changed:
            changed = False
            self.passes += 1
            for s in self.calls:
                if s not in self.confirmed and self._check_call(s):
                    self._confirm(s)
                    changed = True
            for s in self.bodies:
                if s not in self.confirmed and self._check_body(s):
                    self._confirm(s)
                    changed = True

    def _check_call(self, s: CallStmt) -> bool:
        k = self.prep.arity(s.fun)
        if len(s.args) < k:
            for e, u in s.out.pairs:
                if not any(ext_geq(w, u) for w in self._call_outs(s.fun, s.args + (e,))):
                    return False
            return True
        m = self.prep.first_match(s.fun, s.args)
        if m is None:
            return False
        i, c, env = m
        return s.out in self._body_outs(i, tuple(sorted(env.items())), c.body)

    def _check_body(self, s: BodyStmt) -> bool:
        e, i, env, o = s.expr, s.clause, s.env, s.out
        if isinstance(e, If):
            if Data("true") in self._body_outs(i, env, e.cond) and o in self._body_outs(i, env, e.then):
                return True
            return Data("false") in self._body_outs(i, env, e.cond) and o in self._body_outs(i, env, e.else_)
        if isinstance(e, Choose):
            return any(o in self._body_outs(i, env, a) for a in e.alts)
        if isinstance(e, PairExpr):
            return (
                isinstance(o, VPair)
                and o.left in self._body_outs(i, env, e.left)
                and o.right in self._body_outs(i, env, e.right)
            )
        if not isinstance(e, (Apply, FunSymbol)):
            return False
        head, args = spine(e)
        choices = [self._body_outs(i, env, a) for a in args]
        if isinstance(head, Var):
            if not args:
                return False
            for es in itertools.product(*choices):
                for r in _ext_apply_all(dict(env)[head.name], es):
                    if ext_geq(r, o):
                        return True
            return False
        f = head.name
        k = self.prep.arity(f)
        for es in itertools.product(*choices):
            if len(es) <= k:
                if o in self._call_outs(f, es):
                    return True
            else:
                for u in self._call_outs(f, es[:k]):
                    if any(ext_geq(r, o) for r in _ext_apply_all(u, es[k:])):
                        return True
        return False

    # -- reading results

    def is_confirmed(self, s) -> bool:
        return s in self.confirmed

    def results(self) -> frozenset:
        start_args = self.prep.inputs
        return frozenset(
            o for o in self._call_outs(self.prep.start, start_args) if data_in(o, self.universe)
        )


def _ext_apply_all(e, args) -> set:
    current = {e}
    for a in args:
        current = {v for r in current for v in r.lookup(a)}
    return current


def data_in(v, universe: Universe) -> bool:
    if isinstance(v, VPair):
        return data_in(v.left, universe) and data_in(v.right, universe)
    return isinstance(v, Data) and v in universe.data


def scheduler_disagreements(prep: Prepared, max_statements: int = 200_000) -> list:
    """Statements on which the naive and worklist schedulers disagree."""

    def go():
        naive = Naive(prep, max_statements)
        naive.run()
        wl = Worklist(prep)
        bad = []
        for s in naive.calls:
            if naive.is_confirmed(s) != wl.query_call(s.fun, s.args, s.out):
                bad.append(s)
        for s in naive.bodies:
            if naive.is_confirmed(s) != wl.query_body(s.clause, s.expr, dict(s.env), s.out):
                bad.append(s)
        return bad

    return run_deep(go)


# ---------------------------------------------------------------- entry points


@dataclass(frozen=True)
class TabulationResult:
    values: frozenset
    prepared: Prepared
    scheduler: str
    statistics: dict

    def lines(self) -> list[str]:
        return [pretty_value(v) for v in canonical(self.values)]


def tabulate_full(
    tp: TypedProgram,
    inputs: list,
    mode: str,
    metric: str = "order",
    bound: int | None = None,
    scheduler: str = "worklist",
    ceiling: int = DEFAULT_CEILING,
    max_statements: int = 200_000,
) -> TabulationResult:
    if scheduler not in SCHEDULERS:
        raise TabulationError(f"unknown scheduler {scheduler!r}")
    prep = prepare(tp, inputs, mode, metric, bound, ceiling)
    if scheduler == "naive":
        solver = Naive(prep, max_statements)
        run_deep(solver.run)
        stats = {"statements": len(solver.calls) + len(solver.bodies), "confirmed": len(solver.confirmed),
                 "passes": solver.passes}
        return TabulationResult(solver.results(), prep, scheduler, stats)
    wl = Worklist(prep)
    values = run_deep(wl.results)
    stats = {"entries": len(wl.table), "evaluations": wl.evaluations}
    result = TabulationResult(values, prep, scheduler, stats)
    object.__setattr__(result, "_worklist", wl)
    return result


def tabulate(tp: TypedProgram, inputs: list, mode: str, metric: str = "order", bound: int | None = None,
             scheduler: str = "worklist", **kw) -> frozenset:
    """The set of results of the program on ``inputs``."""
    return tabulate_full(tp, inputs, mode, metric, bound, scheduler, **kw).values


def dump_table(result: TabulationResult) -> str:
    """Confirmed statements, one per line, in canonical order."""
    lines = []
    wl = getattr(result, "_worklist", None)
    if wl is not None:
        for (f, args), outs in wl.table.items():
            for o in outs:
                lines.append(_stmt_text(f, args, o))
    return "\n".join(sorted(lines)) + ("\n" if lines else "")


def _stmt_text(f: str, args: tuple, o) -> str:
    parts = [f] + [_atom(a) for a in args]
    return " ".join(parts) + " ~> " + pretty_value(o)


def _atom(v) -> str:
    s = pretty_value(v)
    if isinstance(v, Data) and v.args:
        return f"({s})"
    return s
