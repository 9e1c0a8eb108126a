"""Toolkit for cons-free functional programs with non-deterministic choice."""

from .counting import gen_count_exp, gen_count_nondet, gen_count_poly
from .evaluate import EvalOutcome, eval_all, sample
from .extensional import cardinality_bound, count_ext, enumerate_ext
from .syntax import (
    ParseError,
    Program,
    parse_data,
    parse_program,
    parse_type,
    pretty_print,
    subexpressions,
)
from .tabulate import TabulationError, tabulate, tabulate_full
from .tm import compile_tm, parse_tm, run_tm
from .transform import TransformError, normalize
from .typecheck import (
    AnalysisReport,
    TypeCheckError,
    TypedProgram,
    analyze,
    check_cons_free,
    check_program,
    type_metrics,
)
from .values import Data, VPair, from_bits, to_bits

__all__ = [
    "AnalysisReport",
    "Data",
    "EvalOutcome",
    "ParseError",
    "Program",
    "TabulationError",
    "TransformError",
    "TypeCheckError",
    "TypedProgram",
    "VPair",
    "analyze",
    "cardinality_bound",
    "check_cons_free",
    "check_program",
    "compile_tm",
    "count_ext",
    "enumerate_ext",
    "eval_all",
    "from_bits",
    "gen_count_exp",
    "gen_count_nondet",
    "gen_count_poly",
    "normalize",
    "parse_data",
    "parse_program",
    "parse_tm",
    "parse_type",
    "pretty_print",
    "run_tm",
    "sample",
    "subexpressions",
    "tabulate",
    "tabulate_full",
    "to_bits",
    "type_metrics",
]
