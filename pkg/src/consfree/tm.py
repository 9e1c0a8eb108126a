"""Deterministic single-tape Turing machines and their compilation into
cons-free programs driven by a counting module.

File format::

    alphabet: 0 1 _
    states: start accept reject scan
    start _ -> _ R scan
    scan 0 -> 0 R scan
    ...

``_`` is the blank.  Every state other than ``accept`` and ``reject``
needs exactly one transition per symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .counting import CountingModule, extend_succ_equal, gen_count_exp, gen_count_poly
from .syntax import Program, parse_program, pretty_type

BLANK = "_"
HALTING = ("accept", "reject")
_NAME = re.compile(r"[A-Za-z0-9]+|_")


class TmError(Exception):
    """Malformed or non-deterministic machine description."""


@dataclass(frozen=True)
class TmSpec:
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    transitions: dict  # (state, symbol) -> (write, direction, next state)

    def __hash__(self):
        return hash((self.alphabet, self.states, tuple(sorted(self.transitions.items()))))


def parse_tm(text: str) -> TmSpec:
    alphabet: list[str] | None = None
    states: list[str] | None = None
    transitions: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split("--", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            alphabet = line.split(":", 1)[1].split()
            continue
        if line.startswith("states:"):
            states = line.split(":", 1)[1].split()
            continue
        m = re.fullmatch(r"(\S+)\s+(\S+)\s*->\s*(\S+)\s+([LR])\s+(\S+)", line)
        if not m:
            raise TmError(f"line {lineno}: cannot read {raw.strip()!r}")
        state, sym, write, direc, nxt = m.groups()
        if (state, sym) in transitions:
            raise TmError(f"line {lineno}: second transition for ({state}, {sym})")
        transitions[(state, sym)] = (write, direc, nxt)
    if alphabet is None or states is None:
        raise TmError("missing 'alphabet:' or 'states:' line")
    tm = TmSpec(tuple(alphabet), tuple(states), transitions)
    validate_tm(tm)
    return tm


def validate_tm(tm: TmSpec) -> None:
    """Raise unless the machine is well-formed, total and deterministic."""
    alphabet, states, transitions = list(tm.alphabet), list(tm.states), tm.transitions
    for required in ("0", "1", BLANK):
        if required not in alphabet:
            raise TmError(f"alphabet must contain {required!r}")
    for required in ("start",) + HALTING:
        if required not in states:
            raise TmError(f"states must contain {required!r}")
    for name in alphabet + states:
        if not _NAME.fullmatch(name):
            raise TmError(f"{name!r} is not a valid symbol or state name")
    if len(set(alphabet)) != len(alphabet) or len(set(states)) != len(states):
        raise TmError("duplicate symbol or state")
    for (state, sym), action in transitions.items():
        if not (isinstance(action, tuple) and len(action) == 3 and action[1] in ("L", "R")):
            raise TmError(f"transition ({state}, {sym}) must be (write, L|R, next state)")
        write, _, nxt = action
        if state not in states or nxt not in states:
            raise TmError(f"unknown state in transition ({state}, {sym})")
        if sym not in alphabet or write not in alphabet:
            raise TmError(f"unknown symbol in transition ({state}, {sym})")
        if state in HALTING:
            raise TmError(f"halting state {state} has a transition")
    for state in states:
        if state in HALTING:
            continue
        for sym in alphabet:
            if (state, sym) not in transitions:
                raise TmError(f"no transition for ({state}, {sym})")


@dataclass(frozen=True)
class TmRun:
    verdict: str  # "accept", "reject" or "timeout"
    steps: int


def run_tm(tm: TmSpec, bits, max_steps: int = 100_000) -> TmRun:
    """Run on input ``bits``; the head starts on the blank cell before the input.

    Moving left from cell 0 keeps the head on cell 0."""
    tape = [BLANK] + ["1" if b else "0" for b in bits]
    state, pos, steps = "start", 0, 0
    while state not in HALTING:
        if steps >= max_steps:
            return TmRun("timeout", steps)
        while pos >= len(tape):
            tape.append(BLANK)
        write, direc, state = tm.transitions[(state, tape[pos])]
        tape[pos] = write
        pos = pos + 1 if direc == "R" else max(pos - 1, 0)
        steps += 1
    return TmRun(state, steps)


# ---------------------------------------------------------------- compilation


def symbol_constructor(sym: str) -> str:
    return "sym_blank" if sym == BLANK else f"sym_{sym}"


def state_constructor(state: str) -> str:
    return f"st_{state}"


def counting_module_for(a: int, b: int, k: int) -> CountingModule:
    """``C<a,b>`` wrapped ``k`` times in the exponential construction, with succ and equal."""
    m = gen_count_poly(a, b)
    for _ in range(k):
        m = gen_count_exp(m)
    return extend_succ_equal(m)


def compile_tm_source(tm: TmSpec, a: int, b: int, k: int = 0) -> str:
    """Program text deciding the machine's language for inputs it decides
    within ``exp2^k(a*(n+1)^b) - 1`` steps."""
    m = counting_module_for(a, b, k)
    nt = pretty_type(m.number_type)
    nt = f"({nt})" if ("*" in nt or "=>" in nt) else nt
    seed, pred, zero, equal, succ = m.seed, m.pred, m.zero, m.equal, m.succ
    symbols = " | ".join(symbol_constructor(s) for s in tm.alphabet)
    states = " | ".join(state_constructor(s) for s in tm.states)
    lines = [
        "-- Simulation of a deterministic Turing machine; run cs decides acceptance.",
        f"data symbol = {symbols}",
        "data direc = left | right",
        f"data tmstate = {states}",
        "data trans = action symbol direc tmstate | end tmstate",
        "run : list => bool",
        "test : tmstate => bool",
        "transition : tmstate => symbol => trans",
        f"state : list => {nt} => tmstate",
        f"transat : list => {nt} => trans",
        "get1 : trans => symbol",
        "get2 : trans => direc",
        "get3 : trans => tmstate",
        f"tapesymb : list => {nt} => symbol",
        f"tape : list => {nt} => {nt} => symbol",
        f"tapehelp : list => {nt} => {nt} => {nt} => symbol",
        f"pos : list => {nt} => {nt}",
        f"adjust : list => {nt} => direc => {nt}",
        f"origin : list => {nt}",
        f"originh : list => {nt} => {nt}",
        f"inputtape : list => {nt} => symbol",
        f"nth : list => list => {nt} => symbol",
        "bit : bool => symbol",
        f"run cs = test (state cs ({seed} cs))",
        "test st_accept = true",
        "test st_reject = false",
    ]
    for (state, sym), (write, direc, nxt) in sorted(tm.transitions.items()):
        d = "left" if direc == "L" else "right"
        lines.append(
            f"transition {state_constructor(state)} {symbol_constructor(sym)}"
            f" = action {symbol_constructor(write)} {d} {state_constructor(nxt)}"
        )
    for state in HALTING:
        lines.append(f"transition {state_constructor(state)} x = end {state_constructor(state)}")
    lines += [
        f"state cs n = if {zero} cs n then st_start else get3 (transat cs ({pred} cs n))",
        "transat cs n = transition (state cs n) (tapesymb cs n)",
        "get1 (action x y z) = x",
        "get1 (end x) = sym_blank",
        "get2 (action x y z) = y",
        "get2 (end x) = right",
        "get3 (action x y z) = z",
        "get3 (end x) = x",
        "tapesymb cs n = tape cs n (pos cs n)",
        f"tape cs n p = if {zero} cs n then inputtape cs p else tapehelp cs n p (pos cs ({pred} cs n))",
        f"tapehelp cs n p i = if {equal} cs p i then get1 (transat cs ({pred} cs n))"
        f" else tape cs ({pred} cs n) p",
        f"pos cs n = if {zero} cs n then origin cs"
        f" else adjust cs (pos cs ({pred} cs n)) (get2 (transat cs ({pred} cs n)))",
        f"adjust cs p left = {pred} cs p",
        f"adjust cs p right = {succ} cs p",
        "origin cs = originh cs (" + seed + " cs)",
        f"originh cs n = if {zero} cs n then n else originh cs ({pred} cs n)",
        f"inputtape cs p = if {zero} cs p then sym_blank else nth cs cs ({pred} cs p)",
        "nth cs [] p = sym_blank",
        f"nth cs (x::xs) p = if {zero} cs p then bit x else nth cs xs ({pred} cs p)",
        "bit true = sym_1",
        "bit false = sym_0",
    ]
    return "\n".join(lines + m.body_lines()) + "\n"


def compile_tm(tm: TmSpec, a: int, b: int, k: int = 0) -> Program:
    validate_tm(tm)
    return parse_program(compile_tm_source(tm, a, b, k))


__all__ = [
    "BLANK",
    "TmError",
    "TmRun",
    "TmSpec",
    "compile_tm",
    "compile_tm_source",
    "counting_module_for",
    "parse_tm",
    "run_tm",
    "validate_tm",
]
