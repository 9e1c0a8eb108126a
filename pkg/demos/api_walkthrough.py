"""Same ideas as tour.sh, driven from Python."""

from consfree import (
    analyze,
    cardinality_bound,
    check_program,
    compile_tm,
    eval_all,
    from_bits,
    gen_count_poly,
    parse_program,
    parse_type,
    run_tm,
    tabulate,
)
from consfree.counting import interpret_poly, pred_chain
from consfree.library import load, load_tm
from consfree.syntax import pretty_value
from consfree.values import FALSE, canonical

SOURCE = """\
-- true on equal lengths; either answer when the first list is longer
main : list => list => bool
main xs ys = same xs ys
same : list => list => bool
same [] [] = true
same (x::xs) [] = choose(false, true)
same [] (y::ys) = false
same (x::xs) (y::ys) = same xs ys
"""


def shown(values) -> list[str]:
    return [pretty_value(v) for v in canonical(values)]


def section(title: str) -> None:
    print(f"\n== {title}")


section("type check and analyze")
tp = check_program(parse_program(SOURCE))
print(analyze(tp).to_text(), end="")

section("evaluation vs tabulation")
args = [from_bits([True, False]), from_bits([False])]
print("eval_all:", shown(eval_all(tp, args, 256).values))
print("tabulate:", shown(tabulate(tp, args, "nondet")))

section("looping branches")
retry = load("retry.cf")
out = eval_all(retry, [FALSE], 64)
print("evaluation exhausted:", out.exhausted, "values:", shown(out.values))
print("tabulation:", shown(tabulate(retry, [FALSE], "nondet")))

section("a counting module for inputs of length 2")
m = gen_count_poly(2, 2)
chain = pred_chain(m, from_bits([True, True]))
print("counts down from", interpret_poly(chain[0], 2), "in", len(chain), "values")

section("value-space bounds")
for text in ["bool", "bool => bool", "(bool => bool) => bool"]:
    print(f"{text:>24}: at most {cardinality_bound(parse_type(text), 2, 'order')} values over 2 data")

section("a machine and its compiled program")
tm = load_tm("parity")
word = [True, False, True, True]
print("simulator:", run_tm(tm, word).verdict)
compiled = check_program(compile_tm(tm, 2, 1, 0))
print("program:  ", shown(tabulate(compiled, [from_bits(word)], "det")))
