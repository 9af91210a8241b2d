"""Command-line interface: ``linf-bounds {bound,verify,sample,sweep}``.

Records are written as JSON lines or as CSV with a header row. Exit codes:
0 success, 1 a verification row failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Iterable, Sequence

import numpy as np

from ._numerics import DomainError
from .bounded import BoundedInstance, e_inf_bounds
from .distributions import (
    BernoulliWorst,
    HeavyTailG,
    ProductH,
    RngStream,
    TwoPoint,
)
from .qmoment import MomentInstance, u_star_result
from .simulation import MAX_EXACT_N, exact_bernoulli_expected_max
from .verify import FIELDS as VERIFY_FIELDS
from .verify import SUITES, run_suite

SEED_ENV = "LINF_BOUNDS_SEED"
BOUND_FIELDS = ("n", "p", "sigma", "B", "q", "upper", "lower", "regime", "A", "correction",
                "modulo_constant")
SWEEP_FIELDS = ("n", "p", "sigma", "B", "q", "upper", "lower", "truth", "truth_se")
SWEEPABLE = ("n", "p", "sigma", "B", "q")
MAX_SWEPT = 2


class UsageError(Exception):
    """Bad command-line input; reported on one line with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# value parsing and formatting

def parse_q(text: str) -> float:
    q = math.inf if text.strip().lower() == "inf" else _float(text, "q")
    if not q >= 2:
        raise UsageError("q must be ≥ 2")
    return q


def _float(text: str, name: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise UsageError(f"{name} must be a number, got {text!r}") from None
    if math.isnan(v):
        raise UsageError(f"{name} must not be NaN")
    return v


def _int(text: str, name: str) -> int:
    v = _float(text, name)
    if v != int(v):
        raise UsageError(f"{name} must be an integer, got {text!r}")
    return int(v)


def parse_grid(text: str, name: str) -> list:
    """``value`` or ``start:stop:count[:log]``."""
    parts = text.split(":")
    if len(parts) == 1:
        return [_scalar(parts[0], name)]
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
        raise UsageError(f"malformed grid for {name}: {text!r} (expected start:stop:count[:log])")
    count = _int(parts[2], f"{name} grid count")
    if count < 1:
        raise UsageError(f"empty grid for {name}: {text!r}")
    if name == "q" and "inf" in (parts[0].lower(), parts[1].lower()):
        raise UsageError("q grids must have finite endpoints")
    start, stop = _float(parts[0], name), _float(parts[1], name)
    if len(parts) == 4:
        if not (start > 0 and stop > 0):
            raise UsageError(f"log grid for {name} needs positive endpoints")
        vals = np.geomspace(start, stop, count)
    else:
        vals = np.linspace(start, stop, count)
    if name in ("n", "p"):
        return [int(round(v)) for v in vals]
    if name == "q":
        return [parse_q(repr(float(v))) for v in vals]
    return [float(v) for v in vals]


def _scalar(text: str, name: str):
    if name in ("n", "p"):
        return _int(text, name)
    if name == "q":
        return parse_q(text)
    return _float(text, name)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    return v


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "inf" if v == math.inf else "%.17g" % v
    return str(v)


def render(records: Iterable[dict], fields: Sequence[str], fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "json":
        for rec in records:
            buf.write(json.dumps({k: _json_value(rec[k]) for k in fields}, ensure_ascii=False))
            buf.write("\n")
    else:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for rec in records:
            w.writerow([_csv_value(rec[k]) for k in fields])
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def bound_record(n: int, p: int, sigma: float, B: float, q: float) -> dict:
    rec = {"n": n, "p": p, "sigma": sigma, "B": B, "q": q}
    if math.isinf(q):
        res = e_inf_bounds(BoundedInstance(n, p, sigma, B))
        rec.update(upper=res.upper, lower=res.lower, regime=res.regime.value, A=res.A,
                   correction=res.correction, modulo_constant=False)
    else:
        res = u_star_result(MomentInstance(n, p, sigma, B, q))
        rec.update(upper=res.value, lower=None, regime=f"Case{res.case}", A=None,
                   correction=None, modulo_constant=res.modulo_constant)
    return rec


def cmd_bound(args) -> int:
    rec = bound_record(args.n, args.p, args.sigma, args.B, args.q)
    _emit(render([rec], BOUND_FIELDS, args.format), args.output)
    return 0


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    rows = run_suite(args.suite, reps=args.reps, seed=args.seed, workers=args.workers)
    _emit(render([r.as_dict() for r in rows], VERIFY_FIELDS, args.format), args.output)
    return 0 if all(r.ok for r in rows) else 1


def _sample_spec(args):
    if args.dist == "two-point":
        return TwoPoint(args.tau, args.K)
    if args.dist == "bernoulli-worst":
        return BernoulliWorst(args.sigma, args.B, args.p)
    if args.dist == "heavy-tail-g":
        return HeavyTailG(args.q)
    return ProductH(args.q, args.tau, args.K, args.p, truncation=args.truncation)


def cmd_sample(args) -> int:
    spec = _sample_spec(args)
    draws = spec.sample(RngStream(args.seed), args.count)
    fields = tuple(f"x{j}" for j in range(spec.dim))
    records = [dict(zip(fields, map(float, row))) for row in draws]
    _emit(render(records, fields, args.format), args.output)
    return 0


def cmd_sweep(args) -> int:
    grids = {name: parse_grid(getattr(args, name), name) for name in SWEEPABLE}
    swept = [k for k in SWEEPABLE if ":" in getattr(args, k)]
    if len(swept) > MAX_SWEPT:
        raise UsageError(f"at most {MAX_SWEPT} parameters may be swept, got {', '.join(swept)}")
    records = []
    for n in grids["n"]:
        for p in grids["p"]:
            for sigma in grids["sigma"]:
                for B in grids["B"]:
                    for q in grids["q"]:
                        rec = bound_record(n, p, sigma, B, q)
                        truth = se = None
                        if math.isinf(q) and n <= MAX_EXACT_N:
                            truth, se = exact_bernoulli_expected_max(BoundedInstance(n, p, sigma, B)), 0.0
                        records.append({**rec, "truth": truth, "truth_se": se})
    _emit(render(records, SWEEP_FIELDS, args.format), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser

def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    return _int(raw, SEED_ENV)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="linf-bounds",
                     description="Bounds on the expected maximum of averaged random vectors.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, seed=True):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None, help="write to this file instead of stdout")
        if seed:
            p.add_argument("--seed", type=lambda s: _int(s, "seed"), default=None,
                           help=f"random seed (default: ${SEED_ENV} or 0)")

    b = sub.add_parser("bound", help="evaluate the upper/lower bounds for one instance")
    b.add_argument("--n", type=lambda s: _int(s, "n"), required=True)
    b.add_argument("--p", type=lambda s: _int(s, "p"), required=True)
    b.add_argument("--sigma", type=lambda s: _float(s, "sigma"), required=True)
    b.add_argument("--B", type=lambda s: _float(s, "B"), required=True)
    b.add_argument("--q", type=parse_q, default=math.inf, help="moment order, or 'inf'")
    common(b, seed=False)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, help=", ".join(SUITES))
    v.add_argument("--reps", type=lambda s: _int(s, "reps"), default=None)
    v.add_argument("--workers", type=lambda s: _int(s, "workers"), default=1)
    common(v)

    s = sub.add_parser("sample", help="draw from one of the extremal distributions")
    s.add_argument("--dist", required=True,
                   choices=("two-point", "bernoulli-worst", "heavy-tail-g", "product-h"))
    s.add_argument("--count", type=lambda t: _int(t, "count"), default=10)
    s.add_argument("--p", type=lambda t: _int(t, "p"), default=1)
    s.add_argument("--sigma", type=lambda t: _float(t, "sigma"), default=1.0)
    s.add_argument("--B", type=lambda t: _float(t, "B"), default=1.0)
    s.add_argument("--tau", type=lambda t: _float(t, "tau"), default=1.0)
    s.add_argument("--K", type=lambda t: _float(t, "K"), default=1.0)
    s.add_argument("--q", type=parse_q, default=3.0)
    s.add_argument("--truncation", type=lambda t: _float(t, "truncation"), default=None)
    common(s)

    w = sub.add_parser("sweep", help="tabulate bounds over a grid (start:stop:count[:log])")
    w.add_argument("--n", required=True)
    w.add_argument("--p", required=True)
    w.add_argument("--sigma", required=True)
    w.add_argument("--B", required=True)
    w.add_argument("--q", default="inf")
    common(w, seed=False)
    w.set_defaults(format="csv")
    return parser


COMMANDS = {"bound": cmd_bound, "verify": cmd_verify, "sample": cmd_sample, "sweep": cmd_sweep}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        for name in ("reps", "workers", "count"):
            val = getattr(args, name, None)
            if val is not None and val < 1:
                raise UsageError(f"{name} must be ≥ 1")
        return COMMANDS[args.command](args)
    except (UsageError, DomainError) as exc:
        print(f"linf-bounds: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
