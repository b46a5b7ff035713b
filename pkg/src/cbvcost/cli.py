"""Command-line front end.

Subcommands: normalize, run-tm, compile-tm, machine-r, encode, bench.
Exit codes: 0 success, 1 malformed input or failed suite assertion,
2 fuel exhausted, 3 cross-check mismatch.  All randomness is drawn from
--seed, so outputs (including CSV files) are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys

from . import bench
from .encodings import Alphabet, NotAStringEncoding, UnknownSymbolError, church_numeral, encode_string
from .machine_r import MachineRError, mr_normalize
from .pca import COMBINATOR_NAMES, apply_in_xi, build_combinator, pair
from .reduction import STRATEGIES, normalize, write_trace_csv
from .terms import ParseError, TermError, free_names, parse_term, print_term
from .theta import MalformedThetaError, encode_theta, theta_to_ascii
from .turing import FuelExhausted, OracleMismatchError, TMDefinitionError, TMParseError, parse_tm, run_compiled, simulate_tm

OK, BAD_INPUT, OUT_OF_FUEL, MISMATCH = 0, 1, 2, 3

_THETA_RE = re.compile(r"^[L@*01λ▶]+$")


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_normalize(args) -> int:
    try:
        term = parse_term(args.term)
    except ParseError as e:
        return _fail(str(e), BAD_INPUT)
    outcome = normalize(term, args.strategy, args.fuel, args.seed)
    if not outcome.normalized:
        print(f"no normal form within {args.fuel} steps")
        print(f"steps: {outcome.steps}")
        print(f"cost: {outcome.trace.total_cost}")
        return OUT_OF_FUEL
    print(f"normal form: {print_term(outcome.term)}")
    print(f"steps: {outcome.steps}")
    print(f"cost: {outcome.trace.total_cost}")
    print(f"time: {outcome.time()}")
    if args.out:
        with open(args.out, "w", newline="") as fp:
            write_trace_csv(outcome.trace, fp)
        print(f"trace written to {args.out}")
    return OK


def _load_machine(path: str):
    with open(path, encoding="utf-8") as fp:
        return parse_tm(fp.read())


def cmd_run_tm(args) -> int:
    try:
        machine = _load_machine(args.machine)
        run = simulate_tm(machine, args.input, args.fuel)
    except (OSError, TMParseError, TMDefinitionError) as e:
        return _fail(str(e), BAD_INPUT)
    if not run.halted:
        print(f"machine did not halt within {args.fuel} steps")
        return OUT_OF_FUEL
    print(f"output: {run.output}")
    print(f"steps: {run.steps}")
    return OK


def cmd_compile_tm(args) -> int:
    try:
        machine = _load_machine(args.machine)
    except (OSError, TMParseError, TMDefinitionError) as e:
        return _fail(str(e), BAD_INPUT)
    try:
        run = run_compiled(machine, args.input, args.fuel)
    except (TMDefinitionError, UnknownSymbolError) as e:
        return _fail(str(e), BAD_INPUT)
    except FuelExhausted as e:
        return _fail(str(e), OUT_OF_FUEL)
    except OracleMismatchError as e:
        return _fail(str(e), MISMATCH)
    print(f"output: {run.output}")
    print(f"lambda cost: {run.lambda_cost}")
    print(f"machine steps: {run.tm_steps}")
    print(f"cost per step: {run.lambda_cost / (run.tm_steps + len(args.input) + 1):.4f}")
    return OK


def cmd_machine_r(args) -> int:
    if args.corpus:
        report = bench.suite_machine_r_bounds(args.seed, args.corpus)
        ops = [int(r[4]) for r in report.rows]
        cs = [float(r[6]) for r in report.rows]
        print(f"terms: {len(report.rows)}")
        print(f"max ops: {max(ops)}")
        print(f"max per-iteration constant: {max(cs):.4f}")
        for failure in report.failures:
            print(f"violation: {failure}", file=sys.stderr)
        return OK if not report.failures else MISMATCH
    text = args.input
    cross_check = None
    try:
        if _THETA_RE.match(text):
            theta = text
        else:
            term = parse_term(text)
            if len(free_names(term)) > 1:
                print("warning: several distinct free variables; the encoding "
                      "erases their identity", file=sys.stderr)
            theta = encode_theta(term)
            cross_check = term
    except ParseError as e:
        return _fail(str(e), BAD_INPUT)
    try:
        result = mr_normalize(theta, args.fuel)
    except (MalformedThetaError, MachineRError) as e:
        return _fail(str(e), BAD_INPUT)
    if not result.normalized:
        print(f"no normal form within {args.fuel} iterations")
        return OUT_OF_FUEL
    print(f"output: {theta_to_ascii(result.theta)}")
    print(f"iterations: {len(result.iterations)}")
    print(f"tape operations: {result.op_count}")
    if args.out:
        with open(args.out, "w", newline="") as fp:
            writer = csv.writer(fp)
            writer.writerow(["iteration", "tl_before", "tl_after", "ops"])
            for i, it in enumerate(result.iterations, 1):
                writer.writerow([i, it.tl_before, it.tl_after, it.ops])
        print(f"iteration log written to {args.out}")
    if cross_check is not None:
        engine = normalize(cross_check, "leftmost", max(args.fuel * 4, 1000))
        if not engine.normalized or encode_theta(engine.term) != result.theta \
                or engine.steps != len(result.iterations):
            return _fail("tape machine and reduction engine disagree", MISMATCH)
        print("engine cross-check: ok")
    return OK


def cmd_encode(args) -> int:
    try:
        if args.church is not None:
            term = church_numeral(args.church)
        elif args.scott is not None:
            alphabet = Alphabet(args.alphabet.split(","))
            term = encode_string(alphabet, args.scott)
        else:
            term = parse_term(args.theta)
            print(theta_to_ascii(encode_theta(term)))
            return OK
    except (ValueError, ParseError, UnknownSymbolError) as e:
        return _fail(str(e), BAD_INPUT)
    print(print_term(term))
    return OK


def cmd_bench(args) -> int:
    try:
        report = bench.run_suite(args.suite, args.seed)
    except RuntimeError as e:
        return _fail(str(e), BAD_INPUT)
    out = args.out or f"bench_{args.suite.lower()}.csv"
    with open(out, "w", newline="") as fp:
        writer = csv.writer(fp)
        writer.writerow(report.header)
        writer.writerows(report.rows)
    print(f"{len(report.rows)} rows written to {out}")
    if report.failures:
        for failure in report.failures:
            print(f"violation: {failure}", file=sys.stderr)
        return BAD_INPUT
    print("all suite assertions hold")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbvcost",
        description="Call-by-value lambda calculus workbench with the "
                    "size-difference cost model")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--fuel", type=int, default=100_000, metavar="N")
        p.add_argument("--seed", type=int, default=42, metavar="N")
        p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("normalize", help="reduce a term and report steps, cost and time")
    p.add_argument("term")
    p.add_argument("--strategy", choices=STRATEGIES, default="leftmost")
    common(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("run-tm", help="run a machine natively (the oracle)")
    p.add_argument("machine", help="machine description file")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_run_tm)

    p = sub.add_parser("compile-tm", help="compile a machine to a term, run and cross-check")
    p.add_argument("machine")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_compile_tm)

    p = sub.add_parser("machine-r", help="normalize on the nine-tape string machine")
    p.add_argument("input", nargs="?", default="",
                   help="surface-syntax term or raw string notation (L for λ, * for ▶)")
    p.add_argument("--corpus", type=int, default=0, metavar="N",
                   help="run N seeded random terms and report bound constants")
    common(p)
    p.set_defaults(func=cmd_machine_r)

    p = sub.add_parser("encode", help="encoding helpers")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--church", type=int, metavar="N")
    group.add_argument("--scott", metavar="TEXT")
    group.add_argument("--theta", metavar="TERM", help="print the string notation of a term")
    p.add_argument("--alphabet", default="0,1", metavar="A,B,...")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("bench", help="run an experiment suite and write its CSV report")
    p.add_argument("suite", choices=bench.SUITES)
    common(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TermError, NotAStringEncoding) as e:
        return _fail(str(e), BAD_INPUT)


if __name__ == "__main__":
    sys.exit(main())
