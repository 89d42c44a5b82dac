"""Command-line surface: ingestion, enumeration, verification, sweeps.

Exit codes separate the failure classes: 2 for unparseable input (with
line/column when known), 3 for a violated operation hypothesis (named), 4
for a violated internal invariant (with a reproduction dump on stderr).
Outputs are canonical: JSON is key-sorted with fixed indentation, CSV rows
follow the documented column order, and identical inputs with identical
seeds produce identical bytes (sweep timings excepted unless --no-timing).
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import time
from fractions import Fraction

from .bipoly import PlaneCurve, parse_poly, sigma_fiber_count
from .constructions import construct_theorem6, construct_theorem8, sample_configuration
from .determined import (
    PointConfiguration,
    enumerate_determined,
    max_curve_richness,
    ordinary_curves,
    regularity_report,
)
from .errors import HypothesisViolation, InputFormatError, InvariantViolation
from .ndfamilies import grow_nd_chain, nd_verify
from .oracle import OracleReport, compare_determined, oracle_nd
from .parallel import resolve_workers
from .projection import build_pipeline, curves_from_basis
from .veronese import lift


def load_config(path: str, d_override=None) -> PointConfiguration:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputFormatError(
            f"invalid JSON in {path}: {exc.msg}", line=exc.lineno, column=exc.colno
        ) from exc
    if not isinstance(data, dict) or "points" not in data:
        raise InputFormatError(f"{path}: expected an object with a 'points' array")
    d = d_override if d_override is not None else data.get("d")
    if d is None:
        raise InputFormatError(f"{path}: missing degree 'd'")
    points = []
    for k, entry in enumerate(data["points"]):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise InputFormatError(f"{path}: point {k} is not a coordinate pair")
        coords = []
        for c in entry:
            if isinstance(c, float):
                raise InputFormatError(
                    f"{path}: point {k} has a float coordinate; use exact strings"
                )
            try:
                coords.append(Fraction(str(c)))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputFormatError(
                    f"{path}: point {k}: bad rational {c!r} ({exc})"
                ) from exc
        points.append(tuple(coords))
    if len(set(points)) != len(points):
        raise InputFormatError(f"{path}: duplicate points rejected")
    try:
        return PointConfiguration.from_points(points, int(d))
    except HypothesisViolation as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def dump_json(obj, stream):
    json.dump(obj, stream, sort_keys=True, indent=2)
    stream.write("\n")


def _parse_indices(text: str):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise InputFormatError(f"bad index list {text!r}") from exc


def _cmd_lift(args, out):
    config = load_config(args.input, args.d)
    payload = {
        "d": config.d,
        "points": [[str(x), str(y)] for x, y in config.points],
        "lifted": [[str(c) for c in lift(p, config.d)] for p in config.points],
    }
    dump_json(payload, out)


def _cmd_determined(args, out):
    config = load_config(args.input, args.d)
    result = enumerate_determined(config, workers=args.workers)
    dump_json(result.to_json_obj(), out)


def _cmd_ordinary(args, out):
    config = load_config(args.input, args.d)
    result = ordinary_curves(config, args.n, workers=args.workers)
    dump_json(result.to_json_obj(), out)


def _cmd_richness(args, out):
    config = load_config(args.input, args.d)
    e = args.e if args.e is not None else config.d
    size, witness = max_curve_richness(config, e)
    payload = {"e": e, "max_richness": size, "witness": sorted(witness)}
    if args.threshold is not None:
        report = regularity_report(config, e, Fraction(args.threshold))
        payload["regularity"] = report.to_json_obj()
    else:
        report = regularity_report(config, e)
        payload["regularity"] = report.to_json_obj()
    dump_json(payload, out)


def _cmd_nd_verify(args, out):
    config = load_config(args.input, args.d)
    indices = _parse_indices(args.basis)
    verdict = nd_verify(config, indices, config.d)
    dump_json({"ok": verdict.ok, "failures": list(verdict.failures)}, out)


def _cmd_nd_grow(args, out):
    config = load_config(args.input, args.d)
    carrier = PlaneCurve.from_poly(parse_poly(args.carrier)) if args.carrier else None
    b0 = _parse_indices(args.b0) if args.b0 else []
    order = _parse_indices(args.order) if args.order else None
    result = grow_nd_chain(config, b0, carrier, config.d, order=order, seed=args.seed)
    dump_json(result.to_json_obj(), out)


def _cmd_project(args, out):
    config = load_config(args.input, args.d)
    indices = _parse_indices(args.basis)
    state = build_pipeline(config, indices, config.d)
    curves, state = curves_from_basis(config, indices, config.d, state=state)
    dump_json({"trace": state.to_json_obj(), "curves": curves.to_json_obj()}, out)


def _cmd_construct(args, out):
    if args.kind == "theorem6":
        built = construct_theorem6(args.d, args.m, seed=args.seed)
    elif args.kind == "theorem8":
        carrier = PlaneCurve.from_poly(parse_poly(args.carrier)) if args.carrier else None
        built = construct_theorem8(args.d, args.n, args.m, seed=args.seed, carrier=carrier)
    elif args.kind in ("random_general", "grid"):
        params = {"d": args.d}
        if args.count is not None:
            params["count"] = args.count
        if args.genericity is not None:
            params["genericity"] = args.genericity
        if args.side is not None:
            params["side"] = args.side
        built = sample_configuration(args.kind, seed=args.seed, **params)
    else:
        raise InputFormatError(f"unknown construction kind {args.kind!r}")
    dump_json(built.to_json_obj(), out)


def _cmd_sigma_count(args, out):
    degrees = _parse_indices(args.degrees)
    dump_json(
        {"component_degrees": degrees, "d": args.d,
         "count": sigma_fiber_count(degrees, args.d), "bound": args.d ** args.d},
        out,
    )


def _cmd_sweep(args, out):
    lo, _, hi = args.sizes.partition(":")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise InputFormatError(f"bad size range {args.sizes!r}") from exc
    out.write(
        "# note: the asymptotic lower bound c*|A|^d on ordinary-curve counts "
        "is not verifiable at this scale; counts below are exact per instance\n"
    )
    out.write("A_size,d,n,determined_count,ordinary_count,max_richness,runtime_ms\n")
    for size in range(lo, hi + 1):
        built = sample_configuration(
            "random_general", seed=args.seed + size, count=size, d=args.d,
            genericity=min(args.d, 2),
        )
        start = time.perf_counter()
        determined = enumerate_determined(built.config, workers=args.workers)
        ordinary = [r for r in determined.records if len(r.incidence) <= args.n]
        richness, _ = max_curve_richness(built.config, args.d)
        elapsed_ms = 0 if args.no_timing else int((time.perf_counter() - start) * 1000)
        out.write(
            f"{size},{args.d},{args.n},{len(determined)},{len(ordinary)},"
            f"{richness},{elapsed_ms}\n"
        )


def _cmd_oracle_check(args, out):
    config = load_config(args.input, args.d)
    reports = []
    main_set = enumerate_determined(config, workers=args.workers)
    reports.append(compare_determined(config, main_set, instance=args.input))
    if args.nd_size is not None:
        from itertools import combinations

        for idx in combinations(range(len(config)), args.nd_size):
            main_v = nd_verify(config, list(idx), config.d).ok
            oracle_v = oracle_nd(config, list(idx), config.d)
            reports.append(
                OracleReport(
                    f"{args.input}:B={','.join(map(str, idx))}",
                    "nd_membership",
                    oracle_v,
                    main_v,
                )
            )
    dump_json([r.to_json_obj() for r in reports], out)
    bad = [r for r in reports if not r.agree]
    if bad:
        raise InvariantViolation(
            "oracle disagreement",
            {"instances": [r.instance for r in bad], "quantities": [r.quantity for r in bad]},
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordcurves",
        description="Exact enumeration of determined and ordinary plane curves",
    )
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: ORDCURVES_WORKERS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="point-set JSON file")
        p.add_argument("--d", type=int, default=None, help="override degree d")
        p.add_argument("--output", default="-", help="output path (default stdout)")

    p = sub.add_parser("lift", help="Veronese lift of the input points")
    common(p)
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("determined", help="curves determined by the input set")
    common(p)
    p.set_defaults(func=_cmd_determined)

    p = sub.add_parser("ordinary", help="determined curves with small incidence")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_ordinary)

    p = sub.add_parser("richness", help="largest curve section and regularity")
    common(p)
    p.add_argument("--e", type=int, default=None)
    p.add_argument("--threshold", default=None, help="rational threshold p/q")
    p.set_defaults(func=_cmd_richness)

    p = sub.add_parser("nd-verify", help="check the basis conditions for B")
    common(p)
    p.add_argument("--basis", required=True, help="comma-separated point indices")
    p.set_defaults(func=_cmd_nd_verify)

    p = sub.add_parser("nd-grow", help="grow a basis by forbidden-region avoidance")
    common(p)
    p.add_argument("--b0", default="", help="seed point indices")
    p.add_argument("--carrier", default=None, help="carrier curve polynomial")
    p.add_argument("--order", default=None, help="explicit candidate order")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_nd_grow)

    p = sub.add_parser("project", help="hyperprojection pipeline from a basis")
    common(p)
    p.add_argument("--basis", required=True, help="comma-separated point indices")
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("construct", help="generate a configuration")
    common(p, needs_input=False)
    p.add_argument("--kind", required=True,
                   choices=["theorem6", "theorem8", "random_general", "grid"])
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--genericity", type=int, default=None)
    p.add_argument("--side", type=int, default=None)
    p.add_argument("--carrier", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("sigma-count", help="polynomial classes sharing a zero set")
    common(p, needs_input=False)
    p.add_argument("--degrees", required=True, help="component degrees, comma-separated")
    p.set_defaults(func=_cmd_sigma_count)

    p = sub.add_parser("sweep", help="CSV growth report over instance sizes")
    common(p, needs_input=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sizes", required=True, help="size range lo:hi")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timing", action="store_true",
                   help="zero the runtime column for byte-stable output")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("oracle-check", help="cross-validate against brute force")
    common(p)
    p.add_argument("--nd-size", type=int, default=None,
                   help="also compare basis verdicts on all subsets of this size")
    p.set_defaults(func=_cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.workers = resolve_workers(args.workers)
    if args.command in ("construct", "sweep", "sigma-count") and args.d is None:
        print(f"{args.command} requires --d", file=sys.stderr)
        return 2
    buffer = io.StringIO()
    try:
        args.func(args, buffer)
    except InputFormatError as exc:
        loc = ""
        if exc.line is not None:
            loc = f" (line {exc.line}, column {exc.column})"
        print(f"input error{loc}: {exc}", file=sys.stderr)
        return 2
    except HypothesisViolation as exc:
        print(f"hypothesis violated: {exc.name}" + (f" -- {exc.detail}" if exc.detail else ""),
              file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc.name}", file=sys.stderr)
        print(json.dumps({"repro": exc.repro}, sort_keys=True), file=sys.stderr)
        return 4
    text = buffer.getvalue()
    if getattr(args, "output", "-") in ("-", None):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
