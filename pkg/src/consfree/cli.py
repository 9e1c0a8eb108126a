"""Command-line front end.

Exit status: 0 on success, 1 when a program is rejected (ill-typed, not
cons-free, unsupported by tabulation), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .counting import extend_succ_equal, gen_count_exp, gen_count_nondet, gen_count_poly
from .evaluate import check_inputs, eval_all, eval_call, input_tuples, sample
from .extensional import TooLarge
from .syntax import ParseError, parse_data, parse_program, pretty_program, pretty_value
from .tabulate import SCHEDULERS, TabulationError, dump_table, tabulate_full
from .tm import TmError, compile_tm_source, parse_tm
from .transform import (
    DepthAtMost,
    OrderAtMost,
    RecursivelyUnitary,
    TransformError,
    normal_form_violations,
    normalize,
    normalize_unitary,
)
from .typecheck import TypeCheckError, analyze, check_cons_free, check_program, type_metrics
from .values import canonical

DEFAULT_FUEL = 1024


class UsageError(Exception):
    pass


class Rejected(Exception):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    program = parse_program(text)
    try:
        return check_program(program)
    except TypeCheckError as exc:
        raise Rejected(f"type error: {exc}") from exc


def _inputs(tp, texts: list[str]) -> list:
    if len(texts) != len(tp.input_types):
        raise UsageError(f"{tp.main} expects {len(tp.input_types)} inputs, got {len(texts)}")
    try:
        values = [parse_data(t, tp.program) for t in texts]
        check_inputs(tp, values)
    except (ParseError, ValueError) as exc:
        raise UsageError(f"bad input: {exc}") from exc
    return values


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_check(args) -> int:
    tp = _load(args.file)
    ok, offenders = check_cons_free(tp)
    print("well-typed: yes")
    print(f"cons_free: {'yes' if ok else 'no'}")
    for i, expr, reason in offenders:
        print(f"# clause {i + 1}: {reason}: {expr}")
    return 0 if ok else 1


def cmd_analyze(args) -> int:
    tp = _load(args.file)
    sys.stdout.write(analyze(tp).to_text())
    if args.types:
        for f, t in tp.program.fun_sigs:
            order, depth, length = type_metrics(t)
            print(f"{f}: order {order}, depth {depth}, length {length}")
    return 0


def cmd_run(args) -> int:
    tp = _load(args.file)
    inputs = _inputs(tp, args.inputs)
    if args.sample is not None:
        v = sample(tp, inputs, args.sample, args.max_steps)
        print("#stuck" if v is None else pretty_value(v))
        return 0
    out = eval_all(tp, inputs, args.fuel)
    for v in canonical(out.values):
        print(pretty_value(v))
    print(f"#exhausted: {'yes' if out.exhausted else 'no'}")
    return 0


def cmd_tabulate(args) -> int:
    tp = _load(args.file)
    inputs = _inputs(tp, args.inputs)
    mode = args.mode or ("det" if analyze(tp).deterministic else "nondet")
    try:
        result = tabulate_full(tp, inputs, mode, args.metric, args.K, args.scheduler,
                               max_statements=args.max_statements)
    except (TabulationError, TransformError, TooLarge) as exc:
        raise Rejected(str(exc)) from exc
    for line in result.lines():
        print(line)
    if args.dump:
        _write(dump_table(result), args.dump if args.dump != "-" else None)
    return 0


def _properness(mode: str, k: int):
    return {"order": OrderAtMost, "depth": DepthAtMost, "unitary": RecursivelyUnitary}[mode](k)


def cmd_transform(args) -> int:
    tp = _load(args.file)
    rep = analyze(tp)
    k = args.K if args.K is not None else (rep.data_arrow_depth if args.mode == "depth" else rep.data_order)
    try:
        out = normalize_unitary(tp, k) if args.mode == "unitary" else normalize(tp, _properness(args.mode, k))
    except TransformError as exc:
        raise Rejected(str(exc)) from exc
    walker_props = DepthAtMost(k) if args.mode == "unitary" else _properness(args.mode, k)
    problems = normal_form_violations(out, walker_props)
    if problems:
        for p in problems:
            print(f"# violation: {p}", file=sys.stderr)
        return 1
    _write(pretty_program(out.program), args.out)
    if args.check_equiv is not None:
        return _check_equivalence(tp, out, args.check_equiv, args.fuel)
    return 0


def _check_equivalence(before, after, max_size: int, fuel: int) -> int:
    bad = 0
    total = 0
    for inputs in input_tuples(before, max_size):
        total += 1
        x = eval_all(before, list(inputs), fuel)
        y = eval_call(after, after.main, list(inputs), fuel)
        if x.exhausted and y.exhausted and x.values != y.values:
            bad += 1
            shown = " ".join(pretty_value(v) for v in inputs)
            print(f"# differs on {shown}", file=sys.stderr)
    print(f"# checked {total} inputs, {bad} differences", file=sys.stderr)
    return 1 if bad else 0


def cmd_compile_tm(args) -> int:
    try:
        tm = parse_tm(Path(args.tmfile).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.tmfile}: {exc.strerror}") from exc
    except TmError as exc:
        raise UsageError(str(exc)) from exc
    _write(compile_tm_source(tm, args.a, args.b, args.K), args.out)
    return 0


def cmd_gen_counter(args) -> int:
    m = gen_count_poly(args.a, args.b)
    for _ in range(args.levels if args.kind == "exp" else 0):
        m = gen_count_exp(m)
    if args.kind == "nondet":
        m = gen_count_nondet(m)
    if args.with_equal:
        m = extend_succ_equal(m)
    header = f"-- counting module {m.tag}: numbers 0 .. {m.bound_description} - 1\n"
    _write(header + m.source(), args.out)
    return 0


# ---------------------------------------------------------------- parser


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must not be negative")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="consfree", description="Cons-free program toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="parse, type-check and test cons-freeness")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("analyze", help="report cons-freeness, determinism and type metrics")
    s.add_argument("file")
    s.add_argument("--types", action="store_true", help="also list metrics per function type")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("run", help="evaluate with bounded derivation depth")
    s.add_argument("file")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL)
    s.add_argument("--sample", type=int, metavar="SEED", help="follow one random path instead")
    s.add_argument("--max-steps", type=_positive, default=1_000_000)
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("tabulate", help="decide the result set by table saturation")
    s.add_argument("file")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--mode", choices=("det", "nondet"))
    s.add_argument("--metric", choices=("order", "depth", "unitary"), default="order")
    s.add_argument("-K", type=_natural)
    s.add_argument("--scheduler", choices=SCHEDULERS, default="worklist")
    s.add_argument("--max-statements", type=_positive, default=200_000)
    s.add_argument("--dump", metavar="FILE", help="write confirmed call statements ('-' for stdout)")
    s.set_defaults(func=cmd_tabulate)

    s = sub.add_parser("transform", help="print the normalized program")
    s.add_argument("file")
    s.add_argument("--mode", choices=("order", "depth", "unitary"), default="order")
    s.add_argument("-K", type=_natural)
    s.add_argument("--check-equiv", type=_natural, metavar="SIZE",
                   help="compare evaluation before and after on inputs up to this size")
    s.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL)
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("compile-tm", help="compile a Turing machine into a program")
    s.add_argument("tmfile")
    s.add_argument("--a", type=_positive, default=1)
    s.add_argument("--b", type=_positive, default=1)
    s.add_argument("-K", type=_natural, default=0)
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_compile_tm)

    s = sub.add_parser("gen-counter", help="print a counting module")
    s.add_argument("kind", choices=("poly", "exp", "nondet"))
    s.add_argument("--a", type=_positive, default=1)
    s.add_argument("--b", type=_positive, default=1)
    s.add_argument("--levels", type=_positive, default=1, help="exponential layers for kind exp")
    s.add_argument("--with-equal", action="store_true")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_gen_counter)
    return p


def run_cli(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except Rejected as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
