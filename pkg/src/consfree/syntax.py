"""Abstract syntax, parser and pretty-printer for cons-free programs.

A program file is a sequence of declarations.  Each declaration starts in
column one; indented lines continue the previous declaration::

    data nat = z | s nat          -- sorts and their constructors
    succ : list => list           -- signature of a defined symbol
    succ [] = true::[]            -- clauses, tried top to bottom
    succ (false::xs) = true::xs
    succ (true::xs) = false::(succ xs)

``bool`` (``true``/``false``) and ``list`` (``nil``/``cons`` over ``bool``,
written ``[]`` and ``::``) are always available.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Union

from .values import Closure, Data, Relation, Value, VPair


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class Sort:
    name: str


@dataclass(frozen=True)
class Pair:
    left: "Type"
    right: "Type"


@dataclass(frozen=True)
class Arrow:
    arg: "Type"
    res: "Type"


Type = Union[Sort, Pair, Arrow]

BOOL = Sort("bool")
LIST = Sort("list")


def arrows(args: Iterable[Type], result: Type) -> Type:
    """Build ``a1 => ... => an => result``."""
    out = result
    for a in reversed(list(args)):
        out = Arrow(a, out)
    return out


def split_type(t: Type) -> tuple[list[Type], Type]:
    """Split a type into argument types and its non-arrow tail."""
    args = []
    while isinstance(t, Arrow):
        args.append(t.arg)
        t = t.res
    return args, t


def drop_args(t: Type, n: int) -> Type:
    for _ in range(n):
        if not isinstance(t, Arrow):
            raise ValueError(f"type {pretty_type(t)} takes fewer than {n} arguments")
        t = t.res
    return t


# ---------------------------------------------------------------- expressions


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Constructor:
    name: str
    args: tuple["Expr", ...] = ()


@dataclass(frozen=True)
class FunSymbol:
    name: str


@dataclass(frozen=True)
class If:
    cond: "Expr"
    then: "Expr"
    else_: "Expr"


@dataclass(frozen=True)
class Choose:
    alts: tuple["Expr", ...]


@dataclass(frozen=True)
class PairExpr:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Apply:
    head: "Expr"
    arg: "Expr"


Expr = Union[Var, Constructor, FunSymbol, If, Choose, PairExpr, Apply]


def apply_all(head: Expr, args: Iterable[Expr]) -> Expr:
    for a in args:
        head = Apply(head, a)
    return head


def spine(e: Expr) -> tuple[Expr, list[Expr]]:
    """Split ``h a1 ... an`` into the head and its arguments."""
    args = []
    while isinstance(e, Apply):
        args.append(e.arg)
        e = e.head
    args.reverse()
    return e, args


# ---------------------------------------------------------------- patterns


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class PPair:
    left: "Pattern"
    right: "Pattern"


@dataclass(frozen=True)
class PConstructor:
    name: str
    args: tuple["Pattern", ...] = ()


Pattern = Union[PVar, PPair, PConstructor]


def pattern_vars(p: Pattern) -> list[str]:
    if isinstance(p, PVar):
        return [p.name]
    if isinstance(p, PPair):
        return pattern_vars(p.left) + pattern_vars(p.right)
    out: list[str] = []
    for a in p.args:
        out += pattern_vars(a)
    return out


def pattern_to_expr(p: Pattern) -> Expr:
    if isinstance(p, PVar):
        return Var(p.name)
    if isinstance(p, PPair):
        return PairExpr(pattern_to_expr(p.left), pattern_to_expr(p.right))
    return Constructor(p.name, tuple(pattern_to_expr(a) for a in p.args))


def expr_vars(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    return set().union(*(expr_vars(c) for c in children(e))) if children(e) else set()


def children(e: Expr) -> tuple[Expr, ...]:
    """Immediate child expressions, head included for applications."""
    if isinstance(e, Constructor):
        return e.args
    if isinstance(e, If):
        return (e.cond, e.then, e.else_)
    if isinstance(e, Choose):
        return e.alts
    if isinstance(e, PairExpr):
        return (e.left, e.right)
    if isinstance(e, Apply):
        return (e.head, e.arg)
    return ()


def walk(e: Expr) -> Iterator[Expr]:
    """Every node of the expression tree, heads included, pre-order."""
    yield e
    for c in children(e):
        yield from walk(c)


# ---------------------------------------------------------------- programs


@dataclass(frozen=True)
class Clause:
    root: str
    patterns: tuple[Pattern, ...]
    body: Expr

    @property
    def arity(self) -> int:
        return len(self.patterns)

    def lhs_vars(self) -> list[str]:
        out: list[str] = []
        for p in self.patterns:
            out += pattern_vars(p)
        return out


@dataclass(frozen=True)
class DataDecl:
    sort: str
    constructors: tuple[tuple[str, tuple[Type, ...]], ...]


BUILTIN_DECLS = (
    DataDecl("bool", (("true", ()), ("false", ()))),
    DataDecl("list", (("nil", ()), ("cons", (BOOL, LIST)))),
)


@dataclass(frozen=True)
class Program:
    data_decls: tuple[DataDecl, ...]
    fun_sigs: tuple[tuple[str, Type], ...]
    clauses: tuple[Clause, ...]

    @cached_property
    def signatures(self) -> dict[str, Type]:
        return dict(self.fun_sigs)

    @cached_property
    def constructors(self) -> dict[str, tuple[tuple[Type, ...], str]]:
        """Constructor name -> (argument types, result sort), builtins included."""
        out = {}
        for d in BUILTIN_DECLS + self.data_decls:
            for name, args in d.constructors:
                out[name] = (args, d.sort)
        return out

    @cached_property
    def sorts(self) -> list[str]:
        return [d.sort for d in BUILTIN_DECLS + self.data_decls]

    @property
    def main(self) -> str:
        return self.clauses[0].root

    def clauses_of(self, f: str) -> list[Clause]:
        return [c for c in self.clauses if c.root == f]

    def defined(self) -> list[str]:
        return [f for f, _ in self.fun_sigs]

    def replace(self, *, fun_sigs=None, clauses=None) -> "Program":
        return Program(
            self.data_decls,
            tuple(self.fun_sigs if fun_sigs is None else fun_sigs),
            tuple(self.clauses if clauses is None else clauses),
        )


# ---------------------------------------------------------------- sub-expressions


def strict_subexpressions(e: Expr) -> set[Expr]:
    """All t with e ▷ t.  The head of an application only contributes its
    own strict sub-expressions, never itself."""
    if isinstance(e, Apply):
        return strict_subexpressions(e.head) | subexpressions(e.arg)
    out: set[Expr] = set()
    for c in children(e):
        out |= subexpressions(c)
    return out


def subexpressions(e: Expr) -> set[Expr]:
    """All t with e ⊵ t."""
    return {e} | strict_subexpressions(e)


def subexpression_list(e: Expr) -> list[Expr]:
    """Sub-expressions in leftmost-outermost order, duplicates kept once."""
    seen: dict[Expr, None] = {}

    def go(x: Expr, as_head: bool) -> None:
        if not as_head:
            seen.setdefault(x, None)
        if isinstance(x, Apply):
            go(x.head, True)
            go(x.arg, False)
        else:
            for c in children(x):
                go(c, False)

    go(e, False)
    return list(seen)


# ---------------------------------------------------------------- lexer


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        where = f"{line}:{col}: " if line else ""
        super().__init__(where + message)


KEYWORDS = {"data", "if", "then", "else", "choose"}

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>--[^\n]*)|(?P<nl>\n)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<op>::|=>|\[\]|[=:|*(),\[\]])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident', 'kw', 'op', 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind == "ident":
            word = m.group()
            out.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
        elif kind == "op":
            out.append(Token("op", m.group(), line, col))
        pos = m.end()
    return out


def _split_declarations(tokens: list[Token]) -> list[list[Token]]:
    decls: list[list[Token]] = []
    for t in tokens:
        if t.col == 1 or not decls:
            if t.col != 1:
                raise ParseError("declaration must start in column 1", t.line, t.col)
            decls.append([])
        decls[-1].append(t)
    return decls


class _Stream:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        last = tokens[-1] if tokens else Token("eof", "", 0, 0)
        self.eof = Token("eof", "<end of declaration>", last.line, last.col + len(last.text))

    def peek(self, k: int = 0) -> Token:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else self.eof

    def next(self) -> Token:
        t = self.peek()
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind in ("op", "kw") and t.text == text

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.kind not in ("op", "kw") or t.text != text:
            raise ParseError(f"expected {text!r} but found {t.text!r}", t.line, t.col)
        return t

    def ident(self) -> Token:
        t = self.next()
        if t.kind != "ident":
            raise ParseError(f"expected an identifier but found {t.text!r}", t.line, t.col)
        return t

    def done(self) -> None:
        t = self.peek()
        if t.kind != "eof":
            raise ParseError(f"unexpected {t.text!r}", t.line, t.col)


# ---------------------------------------------------------------- parser


def _parse_type(s: _Stream) -> Type:
    left = _parse_prod(s)
    if s.at("=>"):
        s.next()
        return Arrow(left, _parse_type(s))
    return left


def _parse_prod(s: _Stream) -> Type:
    left = _parse_atype(s)
    if s.at("*"):
        s.next()
        return Pair(left, _parse_prod(s))
    return left


def _parse_atype(s: _Stream) -> Type:
    if s.at("("):
        s.next()
        t = _parse_type(s)
        s.expect(")")
        return t
    return Sort(s.ident().text)


class _Scope:
    """Identifier categories of one program."""

    def __init__(self, constructors: dict[str, int], functions: set[str]):
        self.constructors = constructors
        self.functions = functions


def _parse_pattern(s: _Stream, sc: _Scope) -> Pattern:
    left = _parse_pattern_app(s, sc)
    if s.at("::"):
        s.next()
        return PConstructor("cons", (left, _parse_pattern(s, sc)))
    return left


def _parse_pattern_app(s: _Stream, sc: _Scope) -> Pattern:
    t = s.peek()
    if t.kind == "ident" and t.text in sc.constructors:
        s.next()
        args = []
        while _starts_atomic_pattern(s):
            args.append(_parse_atomic_pattern(s, sc))
        return PConstructor(t.text, tuple(args))
    return _parse_atomic_pattern(s, sc)


def _starts_atomic_pattern(s: _Stream) -> bool:
    t = s.peek()
    return t.kind == "ident" or s.at("(") or s.at("[]")


def _parse_atomic_pattern(s: _Stream, sc: _Scope) -> Pattern:
    t = s.next()
    if t.kind == "ident":
        if t.text in sc.functions:
            raise ParseError(f"defined symbol {t.text!r} used in a pattern", t.line, t.col)
        if t.text in sc.constructors:
            return PConstructor(t.text)
        return PVar(t.text)
    if t.kind == "op" and t.text == "[]":
        return PConstructor("nil")
    if t.kind == "op" and t.text == "(":
        items = [_parse_pattern(s, sc)]
        while s.at(","):
            s.next()
            items.append(_parse_pattern(s, sc))
        s.expect(")")
        out = items[-1]
        for p in reversed(items[:-1]):
            out = PPair(p, out)
        return out
    raise ParseError(f"expected a pattern but found {t.text!r}", t.line, t.col)


def _parse_expr(s: _Stream, sc: _Scope) -> Expr:
    if s.at("if"):
        s.next()
        c = _parse_expr(s, sc)
        s.expect("then")
        a = _parse_expr(s, sc)
        s.expect("else")
        b = _parse_expr(s, sc)
        return If(c, a, b)
    left = _parse_app(s, sc)
    if s.at("::"):
        s.next()
        return Constructor("cons", (left, _parse_expr_cons(s, sc)))
    return left


def _parse_expr_cons(s: _Stream, sc: _Scope) -> Expr:
    # the tail of `::` may itself be an if-expression, as in Haskell
    return _parse_expr(s, sc)


def _starts_atom(s: _Stream) -> bool:
    t = s.peek()
    return t.kind == "ident" or s.at("(") or s.at("[]") or s.at("choose")


def _parse_app(s: _Stream, sc: _Scope) -> Expr:
    t = s.peek()
    if t.kind == "ident" and t.text in sc.constructors:
        s.next()
        args = []
        while _starts_atom(s):
            args.append(_parse_atom(s, sc))
        return Constructor(t.text, tuple(args))
    head = _parse_atom(s, sc)
    while _starts_atom(s):
        head = Apply(head, _parse_atom(s, sc))
    return head


def _parse_atom(s: _Stream, sc: _Scope) -> Expr:
    t = s.next()
    if t.kind == "ident":
        if t.text in sc.constructors:
            return Constructor(t.text)
        if t.text in sc.functions:
            return FunSymbol(t.text)
        return Var(t.text)
    if t.kind == "op" and t.text == "[]":
        return Constructor("nil")
    if t.kind == "kw" and t.text == "choose":
        s.expect("(")
        if s.at(")"):
            bad = s.peek()
            raise ParseError("choose needs at least one alternative", bad.line, bad.col)
        alts = [_parse_expr(s, sc)]
        while s.at(","):
            s.next()
            alts.append(_parse_expr(s, sc))
        s.expect(")")
        return Choose(tuple(alts))
    if t.kind == "op" and t.text == "(":
        items = [_parse_expr(s, sc)]
        while s.at(","):
            s.next()
            items.append(_parse_expr(s, sc))
        s.expect(")")
        out = items[-1]
        for e in reversed(items[:-1]):
            out = PairExpr(e, out)
        return out
    raise ParseError(f"expected an expression but found {t.text!r}", t.line, t.col)


def parse_program(text: str) -> Program:
    """Parse program text; raises :class:`ParseError` with a location."""
    decls = _split_declarations(tokenize(text))
    data_decls: list[DataDecl] = []
    sigs: list[tuple[str, Type]] = []
    clause_toks: list[list[Token]] = []
    owner: dict[str, str] = {}

    def claim(name: Token, what: str) -> None:
        if name.text in owner:
            raise ParseError(
                f"duplicate declaration of {name.text!r} (already a {owner[name.text]})",
                name.line,
                name.col,
            )
        owner[name.text] = what

    for d in BUILTIN_DECLS:
        owner[d.sort] = "sort"
        for c, _ in d.constructors:
            owner[c] = "constructor"

    for toks in decls:
        s = _Stream(toks)
        if s.at("data"):
            s.next()
            sort = s.ident()
            claim(sort, "sort")
            s.expect("=")
            cons = []
            while True:
                c = s.ident()
                claim(c, "constructor")
                args = []
                while s.peek().kind == "ident" or s.at("("):
                    args.append(_parse_atype(s))
                cons.append((c.text, tuple(args)))
                if not s.at("|"):
                    break
                s.next()
            s.done()
            data_decls.append(DataDecl(sort.text, tuple(cons)))
        elif s.peek(1).kind == "op" and s.peek(1).text == ":":
            name = s.ident()
            claim(name, "defined symbol")
            s.next()
            t = _parse_type(s)
            s.done()
            sigs.append((name.text, t))
        else:
            clause_toks.append(toks)

    sorts = {o for o, w in owner.items() if w == "sort"}
    for d in data_decls:
        for _, args in d.constructors:
            for a in args:
                _check_sorts(a, sorts)
    for name, t in sigs:
        _check_sorts(t, sorts)

    constructors = {
        c: len(args) for d in BUILTIN_DECLS + tuple(data_decls) for c, args in d.constructors
    }
    sc = _Scope(constructors, {n for n, _ in sigs})
    clauses = []
    for toks in clause_toks:
        s = _Stream(toks)
        root = s.ident()
        if root.text not in sc.functions:
            raise ParseError(f"clause for {root.text!r}, which has no signature", root.line, root.col)
        pats = []
        while not s.at("="):
            if s.peek().kind == "eof":
                raise ParseError("expected '=' in clause", s.eof.line, s.eof.col)
            pats.append(_parse_atomic_pattern(s, sc))
        s.expect("=")
        body = _parse_expr(s, sc)
        s.done()
        clauses.append(Clause(root.text, tuple(pats), body))
    if not clauses:
        raise ParseError("program has no clauses")
    return Program(tuple(data_decls), tuple(sigs), tuple(clauses))


def _check_sorts(t: Type, sorts: set[str]) -> None:
    if isinstance(t, Sort):
        if t.name not in sorts:
            raise ParseError(f"unknown sort {t.name!r}")
    elif isinstance(t, Pair):
        _check_sorts(t.left, sorts)
        _check_sorts(t.right, sorts)
    else:
        _check_sorts(t.arg, sorts)
        _check_sorts(t.res, sorts)


def parse_type(text: str) -> Type:
    s = _Stream(tokenize(text))
    t = _parse_type(s)
    s.done()
    return t


def parse_expr(text: str, program: Program) -> Expr:
    """Parse a single expression in the identifier scope of ``program``."""
    cons = {c: len(a) for c, (a, _) in program.constructors.items()}
    s = _Stream(tokenize(text))
    e = _parse_expr(s, _Scope(cons, set(program.signatures)))
    s.done()
    return e


def parse_data(text: str, program: Program) -> Value:
    """Parse a ground data term (pairs allowed) into a value."""
    e = parse_expr(text, program)
    return expr_to_data(e, program)


def expr_to_data(e: Expr, program: Program) -> Value:
    if isinstance(e, PairExpr):
        return VPair(expr_to_data(e.left, program), expr_to_data(e.right, program))
    if isinstance(e, Constructor):
        want = len(program.constructors[e.name][0])
        if len(e.args) != want:
            raise ParseError(f"constructor {e.name!r} expects {want} arguments, got {len(e.args)}")
        return Data(e.name, tuple(expr_to_data(a, program) for a in e.args))
    if isinstance(e, FunSymbol) or (isinstance(e, Apply) and isinstance(spine(e)[0], FunSymbol)):
        raise ParseError("defined symbol in data position")
    raise ParseError(f"not a ground data term: {pretty_expr(e)}")


# ---------------------------------------------------------------- printing


def pretty_type(t: Type) -> str:
    if isinstance(t, Sort):
        return t.name
    if isinstance(t, Pair):
        left = pretty_type(t.left)
        if isinstance(t.left, (Pair, Arrow)):
            left = f"({left})"
        right = pretty_type(t.right)
        if isinstance(t.right, Arrow):
            right = f"({right})"
        return f"{left} * {right}"
    left = pretty_type(t.arg)
    if isinstance(t.arg, Arrow):
        left = f"({left})"
    return f"{left} => {pretty_type(t.res)}"


# precedence levels: 0 anything, 1 no if, 2 application, 3 atom
def _paren(s: str, need: bool) -> str:
    return f"({s})" if need else s


def _tuple_items(left, right, is_pair) -> list:
    items = [left]
    while is_pair(right):
        items.append(right.left)
        right = right.right
    items.append(right)
    return items


def pretty_expr(e: Expr, level: int = 0) -> str:
    if isinstance(e, (Var, FunSymbol)):
        return e.name
    if isinstance(e, Constructor):
        if e.name == "nil" and not e.args:
            return "[]"
        if e.name == "cons" and len(e.args) == 2:
            s = f"{pretty_expr(e.args[0], 2)}::{pretty_expr(e.args[1], 1)}"
            return _paren(s, level > 1)
        if not e.args:
            return e.name
        s = " ".join([e.name] + [pretty_expr(a, 3) for a in e.args])
        return _paren(s, level > 2)
    if isinstance(e, If):
        s = f"if {pretty_expr(e.cond)} then {pretty_expr(e.then)} else {pretty_expr(e.else_)}"
        return _paren(s, level > 0)
    if isinstance(e, Choose):
        return "choose(" + ", ".join(pretty_expr(a) for a in e.alts) + ")"
    if isinstance(e, PairExpr):
        items = _tuple_items(e.left, e.right, lambda x: isinstance(x, PairExpr))
        return "(" + ", ".join(pretty_expr(i) for i in items) + ")"
    head, args = spine(e)
    head_s = pretty_expr(head, 3)
    if isinstance(head, Constructor):
        # a bare constructor name would swallow the arguments
        head_s = f"({pretty_expr(head)})"
    s = " ".join([head_s] + [pretty_expr(a, 3) for a in args])
    return _paren(s, level > 2)


def pretty_pattern(p: Pattern, level: int = 3) -> str:
    if isinstance(p, PVar):
        return p.name
    if isinstance(p, PPair):
        items = _tuple_items(p.left, p.right, lambda x: isinstance(x, PPair))
        return "(" + ", ".join(pretty_pattern(i, 0) for i in items) + ")"
    if p.name == "nil" and not p.args:
        return "[]"
    if p.name == "cons" and len(p.args) == 2:
        s = f"{pretty_pattern(p.args[0], 2)}::{pretty_pattern(p.args[1], 1)}"
        return _paren(s, level > 1)
    if not p.args:
        return p.name
    s = " ".join([p.name] + [pretty_pattern(a, 3) for a in p.args])
    return _paren(s, level > 2)


def pretty_clause(c: Clause) -> str:
    lhs = " ".join([c.root] + [pretty_pattern(p) for p in c.patterns])
    return f"{lhs} = {pretty_expr(c.body)}"


def pretty_program(p: Program) -> str:
    lines = []
    for d in p.data_decls:
        alts = []
        for name, args in d.constructors:
            parts = [name] + [
                pretty_type(a) if isinstance(a, Sort) else f"({pretty_type(a)})" for a in args
            ]
            alts.append(" ".join(parts))
        lines.append(f"data {d.sort} = " + " | ".join(alts))
    for name, t in p.fun_sigs:
        lines.append(f"{name} : {pretty_type(t)}")
    for c in p.clauses:
        lines.append(pretty_clause(c))
    return "\n".join(lines) + "\n"


def pretty_value(v, level: int = 0) -> str:
    if isinstance(v, Data):
        if v.con == "nil" and not v.args:
            return "[]"
        if v.con == "cons" and len(v.args) == 2:
            return _paren(f"{pretty_value(v.args[0], 2)}::{pretty_value(v.args[1], 1)}", level > 1)
        if not v.args:
            return v.con
        return _paren(" ".join([v.con] + [pretty_value(a, 3) for a in v.args]), level > 2)
    if isinstance(v, VPair):
        items = _tuple_items(v.left, v.right, lambda x: isinstance(x, VPair))
        return "(" + ", ".join(pretty_value(i) for i in items) + ")"
    if isinstance(v, Closure):
        if not v.args:
            return v.fun
        return _paren(" ".join([v.fun] + [pretty_value(a, 3) for a in v.args]), level > 2)
    if isinstance(v, Relation):
        from .values import sort_key

        pairs = sorted(v.pairs, key=lambda kv: (sort_key(kv[0]), sort_key(kv[1])))
        return "{" + ", ".join(f"{pretty_value(a)} -> {pretty_value(b)}" for a, b in pairs) + "}"
    raise TypeError(f"cannot print {v!r}")


def pretty_print(x) -> str:
    """Render a program, clause, expression, pattern, type or value."""
    if isinstance(x, Program):
        return pretty_program(x)
    if isinstance(x, Clause):
        return pretty_clause(x)
    if isinstance(x, (Sort, Pair, Arrow)):
        return pretty_type(x)
    if isinstance(x, (PVar, PPair, PConstructor)):
        return pretty_pattern(x, 0)
    if isinstance(x, (Data, VPair, Closure, Relation)):
        return pretty_value(x)
    return pretty_expr(x)
