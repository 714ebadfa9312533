"""Command line front end: CSV/JSON emission for every capability.

Exit codes: 0 success, 1 bound violation (verify), 2 bad arguments or
config, 3 accumulator overflow, 4 infeasible derivation.  Output files are
byte-deterministic; run metadata (timestamps, timings) goes to a separate
<out>.manifest.json so reruns diff clean.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from omegasum import __version__
from omegasum.pipeline import (
    ConfigError,
    InfeasibleError,
    PipelineConfig,
    parse_config,
    run_pipeline,
    run_table1,
)
from omegasum.summatory import SeriesKind, evaluate, scan_extrema, verify_linear_bound
from omegasum.w3 import estimate_s3

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_OVERFLOW = 3
EXIT_INFEASIBLE = 4


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("OMEGA_THREADS", "1")))
    except ValueError:
        return 1


def _kind_from_args(args) -> SeriesKind:
    tag = args.kind
    if tag in ("W", "T"):
        if args.a is None:
            raise SystemExit2(f"series {tag} requires --a")
        return SeriesKind(tag, args.a)
    if args.a is not None and tag not in ("W", "T"):
        raise SystemExit2(f"series {tag} takes no --a")
    return SeriesKind(tag)


class SystemExit2(Exception):
    """Usage error carried to the top-level handler."""


def _default_exponent(kind: SeriesKind) -> float:
    tag, a = kind.effective()
    if tag in ("W", "T"):
        return math.log2(a) if a > 1 else 1.0
    if tag == "U":
        return 0.81
    if tag == "M":
        return 1.0
    return 1.0  # weighted series are already size O(1); x^1 keeps rows finite


def _write_manifest(out_path: str, command: str, params: dict,
                    elapsed: float, outputs: list[str]) -> None:
    manifest = {
        "command": command,
        "parameters": params,
        "tool_version": __version__,
        "elapsed_seconds": elapsed,
        "outputs": outputs,
    }
    with open(out_path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def cmd_summatory(args) -> int:
    kind = _kind_from_args(args)
    exponent = args.exponent if args.exponent is not None else _default_exponent(kind)
    t0 = time.monotonic()
    rows = []
    for cp in evaluate(kind, args.xmax, args.stride, threads=_threads()):
        normalized = float(cp.value) / cp.x**exponent
        row = f"{cp.x},{_fmt(float(cp.value))},{_fmt(normalized)}"
        if args.with_log_x:
            row += f",{_fmt(math.log(cp.x))}"
        rows.append(row)
    header = "x,value,normalized" + (",u" if args.with_log_x else "")
    text = header + "\n" + "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
        _write_manifest(args.out, "summatory",
                        {"kind": kind.label(), "xmax": args.xmax,
                         "stride": args.stride, "exponent": exponent},
                        time.monotonic() - t0, [args.out])
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    kind = _kind_from_args(args)
    res = verify_linear_bound(kind, args.c, args.e, args.lo, args.hi,
                              threads=_threads())
    if res.ok:
        print(f"pass: |{kind.label()}(x)| < {args.c:g} * x^{args.e:g} "
              f"on [{args.lo}, {args.hi}]")
        return EXIT_OK
    print(f"fail: x = {res.first_x}, value = {res.first_value}, "
          f"bound = {args.c * res.first_x**args.e:.6g}")
    return EXIT_VIOLATION


def cmd_extrema(args) -> int:
    kind = _kind_from_args(args)
    rec = scan_extrema(kind, args.lo, args.hi, args.exponent, threads=_threads())
    payload = {
        "kind": kind.label(), "lo": rec.lo, "hi": rec.hi,
        "normalizer": rec.normalizer,
        "arg_max": rec.arg_max, "max": rec.max,
        "arg_min": rec.arg_min, "min": rec.min,
        "max_abs": rec.max_abs,
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_pipeline(args) -> int:
    cfg = PipelineConfig()
    if args.config:
        with open(args.config) as fh:
            cfg = parse_config(fh.read())
    t0 = time.monotonic()
    report = run_pipeline(cfg)
    text = report.to_json() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        _write_manifest(args.out, "pipeline", {"config": args.config or "default"},
                        time.monotonic() - t0, [args.out])
    else:
        sys.stdout.write(text)
    if not report.all_met:
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_table1(args) -> int:
    report = run_table1()
    rows = []
    for r in report.rows:
        rows.append({
            "row": r.index + 1,
            "alpha": str(r.alpha), "A": r.A, "beta": r.beta, "B": r.B,
            "k": str(r.result.k), "c_M": r.result.c_M,
            "log_x_M": r.result.x_M_log, "lambda1": r.result.lambda1,
            "conditions": r.result.conditions,
            "target_c_M": r.target_c_M, "target_log_x_M": r.target_log_x_M,
            "met": r.met,
        })
    text = json.dumps({"rows": rows, "all_met": report.all_met},
                      sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.all_met else EXIT_INFEASIBLE


def cmd_s3(args) -> int:
    est = estimate_s3(args.lo, args.hi, args.eps, threads=_threads())
    text = est.to_json() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="omegasum",
        description="Summatory functions of (-a)^Omega(n) and the explicit "
                    "constant pipeline behind their linear bounds.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_kind(sp):
        sp.add_argument("--kind", required=True,
                        choices=["W", "U", "u", "M", "m", "m2", "L", "G", "T"])
        sp.add_argument("--a", type=float, default=None,
                        help="parameter a for the W and T series")

    sp = sub.add_parser("summatory", help="stream checkpoints to CSV")
    add_kind(sp)
    sp.add_argument("--xmax", type=int, required=True)
    sp.add_argument("--stride", type=int, default=10**4)
    sp.add_argument("--exponent", type=float, default=None,
                    help="normalizer exponent (default: log2 a for W/T, 0.81 for U)")
    sp.add_argument("--with-log-x", action="store_true",
                    help="append a u = log x column")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_summatory)

    sp = sub.add_parser("verify", help="check |series(x)| < c x^e on a range")
    add_kind(sp)
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--e", type=float, required=True)
    sp.add_argument("--lo", type=int, required=True)
    sp.add_argument("--hi", type=int, required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("extrema", help="scan extrema of series(x)/x^e")
    add_kind(sp)
    sp.add_argument("--lo", type=int, required=True)
    sp.add_argument("--hi", type=int, required=True)
    sp.add_argument("--exponent", type=float, required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_extrema)

    sp = sub.add_parser("pipeline", help="run the constant pipeline, emit JSON")
    sp.add_argument("--config", default=None, help="key = value config file")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_pipeline)

    sp = sub.add_parser("table1", help="re-derive the iteration table, emit JSON")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("s3", help="estimate the a=3 normalized supremum")
    sp.add_argument("--lo", type=int, required=True)
    sp.add_argument("--hi", type=int, required=True)
    sp.add_argument("--eps", type=float, default=0.1)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_s3)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OverflowError as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
