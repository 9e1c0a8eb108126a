"""Access to the bundled example programs and machines.

Most corpus files are hand-written.  A few are produced by the counting
module and Turing machine generators; ``generated_sources`` rebuilds
them so tests can check the files are current.
"""

from __future__ import annotations

from pathlib import Path

from .counting import chain_source, gen_count_exp, gen_count_nondet, gen_count_poly
from .syntax import parse_program
from .tm import compile_tm_source, parse_tm
from .typecheck import TypedProgram, check_program

CORPUS_DIR = Path(__file__).parent / "corpus"


def corpus_path(name: str) -> Path:
    return CORPUS_DIR / name


def corpus_names(suffix: str = ".cf") -> list[str]:
    return sorted(p.name for p in CORPUS_DIR.glob(f"*{suffix}"))


def load(name: str) -> TypedProgram:
    if not name.endswith(".cf"):
        name += ".cf"
    return check_program(parse_program(corpus_path(name).read_text()))


def load_tm(name: str):
    if not name.endswith(".tm"):
        name += ".tm"
    return parse_tm(corpus_path(name).read_text())


# Inputs (a, b) per bundled machine: both halt within a*(n+1)-1 steps for n >= 1.
TM_BOUNDS = {"parity": (2, 1), "lastbit": (3, 1)}

EXAMPLE9_SOURCE_HEAD = """\
-- Reads one bit of the number 6 (bit string 110) in the non-deterministic
-- counting module over C<1,1> for inputs of length 3.  The index is the
-- inner number ([], i), which denotes the length of i; index 0 is the
-- default value and reads as either bit.
main : list => bool
main i = bitset_r_p1_1 (false::false::true::[]) (st1_r_p1_1 ([], true::[]) \
(st1_r_p1_1 ([], false::true::[]) (st0_r_p1_1 ([], false::false::true::[]) \
(base_r_p1_1 ([], []))))) ([], i)
"""


def generated_sources() -> dict[str, str]:
    poly = gen_count_poly(1, 1)
    nondet = gen_count_nondet(poly)
    header_e = "-- Is pred applied k times to seed zero?  Exponential module over C<1,1>.\n"
    header_r = "-- Is pred applied k times to seed zero?  Non-deterministic module over C<1,1>.\n"
    a, b = TM_BOUNDS["parity"]
    return {
        "counter_e.cf": header_e + chain_source(gen_count_exp(poly)),
        "counter_r.cf": header_r + chain_source(nondet),
        "example9.cf": EXAMPLE9_SOURCE_HEAD + "\n".join(nondet.body_lines()) + "\n",
        "tm_parity.cf": compile_tm_source(load_tm("parity"), a, b, 0),
    }


def regenerate() -> list[str]:
    """Rewrite the generated corpus files; returns the names written."""
    written = []
    for name, text in generated_sources().items():
        path = corpus_path(name)
        if not path.exists() or path.read_text() != text:
            path.write_text(text)
            written.append(name)
    return written
