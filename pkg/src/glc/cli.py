"""Command-line interface.

Exit codes: 0 affirmative result or success, 1 negative result, 2 usage or
parse error, 3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import decider, measure, semantics, selftest, variant
from .errors import GlcError, ParseError, ResourceError, VariantError
from .formula import Not
from .generator import generate, generate_variant
from .reducer import LEFTMOST, Strategy, normalize
from .syntax import parse_infix, parse_prefix, to_json

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(obj) -> None:
    print(json.dumps(obj))


def _read(text: str, prefix: bool = False):
    return parse_prefix(text) if prefix else parse_infix(text)


def _inputs(expr: str):
    if expr != "-":
        yield expr
        return
    for line in sys.stdin:
        line = line.strip()
        if line:
            yield line


def _result_object(formula: str, mode: str, result: int, frames: int, t0: float, **extra) -> dict:
    obj = {"formula": formula, "mode": mode, "result": result, "frames_checked": frames,
           "elapsed_ms": round((time.perf_counter() - t0) * 1000)}
    obj.update(extra)
    return obj


def _error_object(text: str, exc: Exception) -> dict:
    obj = {"formula": text, "error": str(exc)}
    if isinstance(exc, ParseError):
        s = exc.span
        obj["span"] = {"start": s.start, "end": s.end, "line": s.line, "column": s.column}
    return obj


def _guard(text: str, fn) -> int:
    """Run fn on one input, printing its JSON or an error object."""
    try:
        obj, code = fn(text)
    except (ParseError, VariantError) as exc:
        _emit(_error_object(text, exc))
        return EXIT_USAGE
    except ResourceError as exc:
        _emit(_error_object(text, exc))
        return EXIT_RESOURCE
    _emit(obj)
    return code


def _batch(expr: str, fn) -> int:
    return max((_guard(t, fn) for t in _inputs(expr)), default=EXIT_YES)


def _code(result: int) -> int:
    return EXIT_YES if result else EXIT_NO


# -- commands --------------------------------------------------------------

def cmd_parse(args) -> int:
    def one(text):
        f = _read(text, args.prefix)
        return {"formula": str(f), "ast": to_json(f)}, EXIT_YES
    return _batch(args.expr, one)


def cmd_normalize(args) -> int:
    strategy = Strategy.random(args.seed) if args.strategy == "random" else LEFTMOST

    def one(text):
        f = _read(text, args.prefix)
        t0 = time.perf_counter()
        if args.trace:
            nf, steps = normalize(f, strategy, trace=True)
        else:
            nf, steps = normalize(f, strategy), None
        obj = {"formula": str(f), "normal_form": str(nf),
               "elapsed_ms": round((time.perf_counter() - t0) * 1000)}
        if steps is not None:
            obj["trace"] = [s.to_json() for s in steps]
        return obj, EXIT_YES
    return _batch(args.expr, one)


def _decide(f, mode: str, kind: str, report: str | None, witness: bool):
    """(result, frames_checked, extra fields) for validity or satisfiability."""
    if mode == "oracle":
        full = semantics.brute_valid_full(f) if kind == "valid" else semantics.brute_sat_full(f)
        extra = {}
        if witness and full.witness is not None:
            extra["witness"] = full.witness.to_json()
        return full.result, full.frames_checked, extra
    target = f if kind == "valid" else normalize(Not(f))
    if mode == "paper-strict":
        res, stats = decider.valid_paper_strict_stats(target)
        if report:
            decider.append_divergences(report, [decider.divergence_record(target)])
        extra = {"empty_skips": stats.empty_skips}
    else:
        res, stats = decider.valid_sound_stats(target)
        extra = {}
    extra["depth"] = stats.depth
    result = res if kind == "valid" else 1 - res
    return result, stats.frames_checked, extra


def _decision_command(kind: str):
    def run(args) -> int:
        def one(text):
            f = _read(text, args.prefix)
            t0 = time.perf_counter()
            result, frames, extra = _decide(f, args.mode, kind, args.report, args.witness)
            return _result_object(str(f), args.mode, result, frames, t0, **extra), _code(result)
        return _batch(args.expr, one)
    return run


def cmd_equiv(args) -> int:
    def one(_):
        a, b = _read(args.expr1, args.prefix), _read(args.expr2, args.prefix)
        f = parse_infix(f"(({a}) -> ({b})) & (({b}) -> ({a}))")
        t0 = time.perf_counter()
        result, frames, extra = _decide(f, args.mode, "valid", args.report, args.witness)
        return _result_object(str(f), args.mode, result, frames, t0, **extra), _code(result)
    return _guard(f"{args.expr1} <-> {args.expr2}", one)


def cmd_oracle(args) -> int:
    def one(text):
        f = _read(text, args.prefix)
        t0 = time.perf_counter()
        result, frames, extra = _decide(f, "oracle", args.kind, None, True)
        return _result_object(str(f), "oracle", result, frames, t0, **extra), _code(result)
    return _batch(args.expr, one)


def cmd_variant(args) -> int:
    def one(text):
        f = _read(text, args.prefix)
        t0 = time.perf_counter()
        if args.action == "normalize":
            if args.trace:
                nf, steps = variant.variant_normalize(f, LEFTMOST, trace=True)
            else:
                nf, steps = variant.variant_normalize(f), None
            obj = {"formula": str(f), "normal_form": str(nf),
                   "elapsed_ms": round((time.perf_counter() - t0) * 1000)}
            if steps is not None:
                obj["trace"] = [s.to_json() for s in steps]
            if args.query_points:
                obj["query_points"] = [{"context": variant.render_context(c), "literal": p}
                                       for c, p in variant.query_points_of_normal(nf)]
            return obj, EXIT_YES
        full = (variant.variant_brute_valid_full(f) if args.action == "valid"
                else variant.variant_brute_sat_full(f))
        extra = {}
        if full.witness is not None:
            extra["witness"] = variant.frame_to_json(full.witness)
        obj = _result_object(str(f), "variant-oracle", full.result, full.frames_checked, t0, **extra)
        return obj, _code(full.result)
    return _batch(args.expr, one)


def cmd_measure(args) -> int:
    records = measure.run_suite(args.calculus, args.seeds, base_seed=args.base_seed)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(measure.report_lines(records))
    failures = [r for r in records if not r["pass"]]
    _emit({"calculus": args.calculus, "seeds": args.seeds, "checks": len(records),
           "failures": len(failures), "failing_pairs": sorted({r["pair_id"] for r in failures}),
           "first_failure": failures[0] if failures else None})
    return EXIT_NO if failures else EXIT_YES


def cmd_gen(args) -> int:
    for k in range(args.count):
        seed = args.seed + k
        if args.variant:
            f = generate_variant(seed, args.size, args.pool)
        else:
            f = generate(seed, args.size, args.pool, allow_topbot=not args.no_topbot)
        print(f)
    return EXIT_YES


def cmd_selftest(args) -> int:
    results = selftest.run_golden()
    failed = 0
    for name, ok, actual, expected in results:
        if ok:
            print(f"ok    {name}")
        else:
            failed += 1
            print(f"FAIL  {name}: got {actual!r}, expected {expected!r}")
    print(f"{len(results) - failed}/{len(results)} golden vectors passed")
    if args.timing:
        rows = selftest.scaling_table(args.max_bits)
        print()
        print(selftest.format_table(rows))
        if not all(r["matches"] for r in rows):
            failed += 1
    return EXIT_NO if failed else EXIT_YES


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="glc", description="Solver toolkit for a graded object/attribute logic.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def formula_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--prefix", action="store_true", help="read prefix syntax")
        return sp

    sp = formula_cmd("parse", "print the syntax tree as JSON")
    sp.add_argument("expr", help="formula, or - to read one per line from stdin")
    sp.set_defaults(func=cmd_parse)

    sp = formula_cmd("normalize", "print the normal form")
    sp.add_argument("--trace", action="store_true")
    sp.add_argument("--strategy", choices=["leftmost", "random"], default="leftmost")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_normalize)

    for kind in ("valid", "sat"):
        sp = formula_cmd(kind, f"decide {'validity' if kind == 'valid' else 'satisfiability'}")
        sp.add_argument("--mode", choices=["sound", "paper-strict", "oracle"], default="sound")
        sp.add_argument("--report", metavar="PATH", help="append divergence records (paper-strict)")
        sp.add_argument("--witness", action="store_true", help="include a frame (oracle)")
        sp.add_argument("expr")
        sp.set_defaults(func=_decision_command(kind))

    sp = formula_cmd("equiv", "validity of mutual implication")
    sp.add_argument("--mode", choices=["sound", "paper-strict", "oracle"], default="sound")
    sp.add_argument("--report", metavar="PATH")
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("expr1")
    sp.add_argument("expr2")
    sp.set_defaults(func=cmd_equiv)

    sp = formula_cmd("oracle", "brute-force validity or satisfiability with a witness")
    sp.add_argument("kind", choices=["valid", "sat"])
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_oracle)

    sp = formula_cmd("variant", "variant calculus pipeline")
    sp.add_argument("action", choices=["normalize", "valid", "sat"])
    sp.add_argument("--trace", action="store_true")
    sp.add_argument("--query-points", action="store_true")
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_variant)

    sp = sub.add_parser("measure", help="size-measure suite")
    sp.add_argument("action", choices=["suite"])
    sp.add_argument("--calculus", choices=["base", "variant"], default="base")
    sp.add_argument("--seeds", type=int, default=100)
    sp.add_argument("--base-seed", type=int, default=0)
    sp.add_argument("--report", metavar="PATH", help="write JSON lines per check")
    sp.set_defaults(func=cmd_measure)

    sp = sub.add_parser("gen", help="emit seeded random formulas")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--size", type=int, default=12)
    sp.add_argument("--pool", type=int, default=3)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--no-topbot", action="store_true")
    sp.add_argument("--variant", action="store_true", help="variant-safe fragment")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("selftest", help="run the golden vectors")
    sp.add_argument("--timing", action="store_true", help="print the frame-count scaling table")
    sp.add_argument("--max-bits", type=int, default=12)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _emit(_error_object(getattr(args, "expr", ""), exc))
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"glc: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except GlcError as exc:
        print(f"glc: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
