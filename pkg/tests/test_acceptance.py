"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import time

import pytest

from consfree.counting import (
    chain_program,
    gen_count_exp,
    gen_count_nondet,
    gen_count_poly,
    interpret_poly,
    pred_chain,
)
from consfree.evaluate import eval_all, eval_call, input_tuples
from consfree.extensional import Universe, count_ext, enumerate_ext, within_cardinality_bound
from consfree.library import TM_BOUNDS, corpus_names, load, load_tm
from consfree.syntax import Arrow, Pair, Program, Sort, parse_data, parse_program, pretty_value
from consfree.tabulate import tabulate
from consfree.tm import compile_tm, run_tm
from consfree.transform import (
    DepthAtMost,
    OrderAtMost,
    normal_form_violations,
    normalize,
    normalize_unitary,
)
from consfree.typecheck import TypeCheckError, analyze, check_program
from consfree.values import FALSE, TRUE, Data, VPair, from_bits

MAX_INPUT_SIZE = 4
LOOP_FUELS = [2**i for i in range(12)]  # 1 .. 2048
BITSET_PROGRAMS = ("bitlist", "counter_r", "example9")

SUCC_SOURCE = """\
succ : list => list
succ [] = true::[]
succ (false::xs) = true::xs
succ (true::xs) = false::(succ xs)
"""

CHOOSE_SOURCE = """\
f1 : bool => bool => bool
f1 x y = choose(x, y)
"""

# The first function is the entry point and must take data, so a driver
# starting from the all-false function comes first.
FUNCTIONAL_COUNTER_SOURCE = """\
main : list => list => bool
zeroes : list => bool
fsucc : (list => bool) => list => list => bool
set : (list => bool) => list => bool => list => bool
tl : list => list
eqlen : list => list => bool
main xs ys = fsucc zeroes xs ys
zeroes xs = false
fsucc F [] = if F [] then set F [] false else set F [] true
fsucc F xs = if F xs then fsucc (set F xs false) (tl xs) else set F xs true
set F xs val ys = if eqlen xs ys then val else F ys
tl (x::xs) = xs
eqlen (x::xs) (y::ys) = eqlen xs ys
eqlen [] [] = true
eqlen xs ys = false
"""

ARITY_CLASH_SOURCE = SUCC_SOURCE.replace(
    "succ : list => list\n",
    "succ : list => list\nid : bool => bool\nor : bool => bool => bool\n",
) + "id x = x\nor true x = true\nor false = id\n"


class Report:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.failures: list[str] = []
        self.notes: list[str] = []
        self.start = time.perf_counter()

    def check(self, ok: bool, message: str) -> None:
        if not ok:
            self.failures.append(message)

    def note(self, message: str) -> None:
        self.notes.append(message)

    def within(self, seconds: float) -> None:
        elapsed = time.perf_counter() - self.start
        self.note(f"{elapsed:.2f}s of {seconds:g}s allowed")
        self.check(elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds:g}s")

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        detail = "; ".join(self.notes + self.failures[:5])
        return f"criterion {self.number} {status}: {self.title} ({detail})"


def cons_free_corpus():
    out = []
    for name in corpus_names():
        tp = load(name)
        report = analyze(tp)
        if report.cons_free:
            out.append((name.removesuffix(".cf"), tp, report))
    return out


# ---------------------------------------------------------------- criteria


def criterion_1() -> Report:
    r = Report(1, "golden examples")
    succ = check_program(parse_program(SUCC_SOURCE))
    out = eval_all(succ, [parse_data("true::false::true::[]", succ.program)], 1024)
    r.check(out.exhausted and [pretty_value(v) for v in out.values] == ["false::true::true::[]"],
            f"succ gave {sorted(map(pretty_value, out.values))}")

    choose = check_program(parse_program(CHOOSE_SOURCE))
    out = eval_all(choose, [TRUE, FALSE], 1024)
    r.check(out.exhausted and out.values == {TRUE, FALSE}, "choose did not give both booleans")

    m = gen_count_poly(3, 2)
    cs = parse_data("true::false::true::[]", m.program().program)
    v24 = VPair(from_bits([False]), VPair(from_bits([False, True]), from_bits([])))
    v23 = VPair(from_bits([False]), VPair(from_bits([True]), cs))
    step = eval_call(m.program(), m.pred, [cs, v24], 1024)
    r.check(interpret_poly(v24, 3) == 24 and interpret_poly(v23, 3) == 23, "interpretation of 24/23 wrong")
    r.check(step.exhausted and step.values == {v23}, f"pred gave {sorted(map(pretty_value, step.values))}")

    fsucc = analyze(check_program(parse_program(FUNCTIONAL_COUNTER_SOURCE)))
    r.check(fsucc.data_order == 1, f"functional counter has data order {fsucc.data_order}")

    r.check(not analyze(succ).cons_free, "succ reported cons-free")

    try:
        check_program(parse_program(ARITY_CLASH_SOURCE))
        r.check(False, "arity clash accepted")
    except TypeCheckError as exc:
        r.check(exc.rule == "inconsistent-arity", f"arity clash rejected for {exc.rule}")
    r.within(1.0)
    return r


def criterion_2() -> Report:
    r = Report(2, "tabulation agrees with evaluation on the corpus")
    programs = cons_free_corpus()
    nondet = [n for n, _, rep in programs if not rep.deterministic]
    order1 = [n for n, _, rep in programs if rep.data_order == 1]
    r.check(len(programs) >= 20, f"only {len(programs)} cons-free programs")
    r.check(len(nondet) >= 8, f"only {len(nondet)} non-deterministic programs")
    r.check(len(order1) >= 5, f"only {len(order1)} programs of data order 1")
    bitset = [n for n in BITSET_PROGRAMS if n in dict((p[0], p) for p in programs)
              and any(f == "bitset" or f.startswith("bitset_") for f in load(n).program.signatures)]
    r.check(len(bitset) >= 3, f"only {len(bitset)} looping-bitset programs")
    inputs = looping = 0
    for name, tp, rep in programs:
        mode = "det" if rep.deterministic else "nondet"
        for args in input_tuples(tp, MAX_INPUT_SIZE):
            inputs += 1
            args = list(args)
            table = tabulate(tp, args, mode)
            ev = eval_all(tp, args, LOOP_FUELS[-1])
            shown = f"{name} {' '.join(map(pretty_value, args))}"
            if ev.exhausted:
                r.check(table == ev.values, f"{shown}: tabulate {len(table)} vs eval {len(ev.values)}")
                continue
            looping += 1
            for fuel in LOOP_FUELS:
                partial = eval_all(tp, args, fuel).values
                r.check(partial <= table, f"{shown}: fuel {fuel} result missing from table")
    r.note(f"{len(programs)} programs, {len(nondet)} nondet, {len(order1)} order 1, "
           f"{len(bitset)} bitset, {inputs} inputs, {looping} non-exhausted")
    r.within(300.0)
    return r


def _unary(k: int) -> Data:
    d = Data("z")
    for _ in range(k):
        d = Data("s", (d,))
    return d


def criterion_3() -> Report:
    r = Report(3, "counting modules")
    for a, b in itertools.product((1, 2), repeat=2):
        m = gen_count_poly(a, b)
        for n in range(4):
            chain = pred_chain(m, from_bits([True] * n))
            expected = a * (n + 1) ** b
            r.check(len(chain) == expected == len(set(chain)), f"C<{a},{b}> n={n}: {len(chain)} values")
            r.check([interpret_poly(v, n) for v in chain] == list(range(expected - 1, -1, -1)),
                    f"C<{a},{b}> n={n}: not counting down")

    exp = gen_count_exp(gen_count_poly(1, 1))
    for n in range(2):
        chain = pred_chain(exp, from_bits([False] * n))
        r.check(len(chain) == 2 ** (n + 1) == len(set(chain)), f"C_e n={n}: {len(chain)} values")

    tp = chain_program(gen_count_nondet(gen_count_poly(1, 1)))
    for n in range(2):
        cs = from_bits([True] * n)
        length = 2 ** ((n + 1) - 1)
        for k in range(length):
            got = tabulate(tp, [cs, _unary(k)], "nondet")
            want = {TRUE} if k == length - 1 else {FALSE}
            r.check(got == want, f"C_er n={n} k={k}: zero gave {sorted(map(pretty_value, got))}")
    r.within(120.0)
    return r


def criterion_4() -> Report:
    r = Report(4, "compiled Turing machines")
    checked = 0
    for name in ("parity", "lastbit"):
        tm = load_tm(name)
        a, b = TM_BOUNDS[name]
        tp = check_program(compile_tm(tm, a, b, 0))
        rep = analyze(tp)
        r.check(rep.cons_free and rep.deterministic and rep.data_order == 0 and rep.unitary,
                f"{name}: {rep.to_text().strip()}")
        for length in range(1, 6):
            for bits in itertools.product((False, True), repeat=length):
                run = run_tm(tm, bits)
                want = {TRUE if run.verdict == "accept" else FALSE}
                got = tabulate(tp, [from_bits(bits)], "det")
                checked += 1
                r.check(run.verdict != "timeout" and got == want, f"{name} {bits}: {run.verdict} vs {got}")
    r.check(checked == 124, f"{checked} machine runs")
    r.note(f"{checked // 2} inputs per machine")
    r.within(180.0)
    return r


def types_up_to(length: int, sort: Sort) -> list:
    """All types over one sort with at most ``length`` sort occurrences."""
    by_length = {1: [sort]}
    for n in range(2, length + 1):
        by_length[n] = [
            make(x, y)
            for split in range(1, n)
            for x in by_length[split]
            for y in by_length[n - split]
            for make in (Pair, Arrow)
        ]
    return [t for n in range(1, length + 1) for t in by_length[n]]


def criterion_5() -> Report:
    r = Report(5, "cardinality bounds")
    program = Program((), (), ())  # built-in sorts only
    sort = Sort("bool")
    data = [TRUE, FALSE]
    types = types_up_to(3, sort)
    enumerated = closed = 0
    for mode, metric in (("det", "order"), ("nondet", "depth")):
        universe = Universe(program, data, mode)
        for t in types:
            formula = count_ext(universe.sort_sizes(), t, mode)
            if formula <= universe.ceiling:
                count = len(enumerate_ext(data, t, mode, program))
                r.check(count == formula, f"{t}: enumerated {count}, formula {formula}")
                enumerated += 1
            else:
                count = formula
                closed += 1
            r.check(within_cardinality_bound(count, t, 3, metric), f"{mode}/{metric} {t}: {count} too large")
    r.note(f"{len(types)} types, {enumerated} counts enumerated, {closed} by closed form")
    r.within(60.0)
    return r


def criterion_6() -> Report:
    r = Report(6, "normalization preserves results")
    variants_checked = 0
    for name, tp, rep in cons_free_corpus():
        variants = {
            "order": (normalize(tp, OrderAtMost(rep.data_order)), OrderAtMost(rep.data_order)),
            "depth": (normalize(tp, DepthAtMost(rep.data_arrow_depth)), DepthAtMost(rep.data_arrow_depth)),
        }
        if rep.unitary:
            variants["unitary"] = (normalize_unitary(tp, rep.data_arrow_depth), DepthAtMost(rep.data_arrow_depth))
        for mode, (normal, props) in variants.items():
            variants_checked += 1
            problems = normal_form_violations(normal, props)
            r.check(not problems, f"{name}/{mode}: {problems[:2]}")
            for args in input_tuples(tp, MAX_INPUT_SIZE):
                args = list(args)
                before = eval_all(tp, args, 1024)
                after = eval_all(normal, args, 1024)
                if before.exhausted and after.exhausted:
                    ok = before.values == after.values
                else:
                    # Looping runs: each side's partial results must show up on the
                    # other side once it gets twice the fuel.
                    ok = (before.values <= eval_all(normal, args, 2048).values
                          and after.values <= eval_all(tp, args, 2048).values)
                r.check(ok, f"{name}/{mode} differs on {' '.join(map(pretty_value, args))}")
    r.note(f"{variants_checked} normalized programs")
    r.within(180.0)
    return r


def criterion_7() -> Report:
    r = Report(7, "deterministic programs have at most one result")
    count = 0
    for name, tp, rep in cons_free_corpus():
        if not rep.deterministic:
            continue
        for args in input_tuples(tp, MAX_INPUT_SIZE):
            count += 1
            got = tabulate(tp, list(args), "det")
            r.check(len(got) <= 1, f"{name}: {len(got)} results")
    r.note(f"{count} inputs")
    return r


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 8)])
def test_criterion(criterion, capsys):
    report = criterion()
    with capsys.disabled():
        print("\n" + report.line())
    assert report.ok, report.line()


if __name__ == "__main__":
    for criterion in CRITERIA:
        print(criterion().line(), flush=True)
