"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 a required colength was not finite up
to the jet bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from .afinite import Distinction, Verdict, distinguish, invariant_N, verdict
from .colength import DEFAULT_MAX_JET
from .counting import (
    CountingError,
    CountReport,
    DivisibilityError,
    Method,
    NotFinite,
    count_both,
    count_by_colength,
    count_by_formula,
    enumerate_stable_partitions,
    is_weighted_homogeneous,
)
from .germparse import GermError, GermSpec, parse_germ_file, parse_rational
from .partition import Partition, stabilizer_order

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_FINITE = 3

ENV_MAX_JET = "GERMCOUNT_MAX_JET"

REPORT_KEYS = ("germ", "partition", "dimension", "method", "colength", "stabilizer",
               "count", "invariant_N", "stabilized_at_jet", "status")


class InputError(Exception):
    pass


def _record(g: GermSpec, P: Partition, method: str, *, colength=None, count=None,
            invariant=None, stabilized_at=None, finite: bool = True) -> dict:
    rec = {
        "germ": g.name,
        "partition": list(P.parts),
        "dimension": P.dimension(g.n, g.p),
        "method": method,
        "colength": colength,
        "stabilizer": stabilizer_order(P),
        "count": count,
        "invariant_N": invariant,
        "stabilized_at_jet": stabilized_at,
        "status": "ok" if finite else "not_finite_up_to_bound",
    }
    assert tuple(rec) == REPORT_KEYS
    return rec


def _count_record(rep: CountReport, g: GermSpec) -> dict:
    if rep.method is Method.FORMULA:
        return _record(g, rep.partition, "formula", colength=rep.formula_colength, count=rep.count)
    return _record(g, rep.partition, rep.method.value, colength=rep.colength, count=rep.count,
                   stabilized_at=rep.stabilized_at)


def _fmt_value(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list):
        return "(" + ",".join(map(str, v)) + ")"
    return str(v)


def _text_record(rec: dict) -> str:
    return " ".join(f"{k}={_fmt_value(rec[k])}" for k in REPORT_KEYS)


def _emit(obj, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
        return
    if isinstance(obj, dict) and "germ" in obj and "status" in obj:
        out.write(_text_record(obj) + "\n")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict) and "status" not in item:
                out.write(" ".join(f"{k}={_fmt_value(v)}" for k, v in item.items()) + "\n")
            else:
                _emit(item, fmt, out)
    elif isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, list) and val and isinstance(val[0], dict):
                out.write(f"{key}:\n")
                for item in val:
                    line = _text_record(item) if "status" in item else " ".join(
                        f"{k}={_fmt_value(v)}" for k, v in item.items())
                    out.write("  " + line + "\n")
            else:
                out.write(f"{key}: {val}\n")


def _bindings(pairs: Sequence[str]) -> dict[str, Fraction]:
    out = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name.strip():
            raise InputError(f"--set expects name=rational, got {pair!r}")
        try:
            out[name.strip()] = parse_rational(value)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return out


def _load(path: str, bindings: dict[str, Fraction]) -> GermSpec:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_germ_file(data, bindings)
    except GermError as exc:
        raise InputError(f"{path}: {exc}") from None


def _partition(args, g: GermSpec | None = None) -> Partition:
    if args.partition is None:
        raise InputError(f"{args.command} requires --partition")
    try:
        P = Partition.parse(args.partition)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if g is not None and P.k < 2:
        raise InputError("partitions must have k >= 2")
    return P


def _max_jet(args) -> int:
    if args.max_jet is not None:
        value = args.max_jet
    elif os.environ.get(ENV_MAX_JET):
        try:
            value = int(os.environ[ENV_MAX_JET])
        except ValueError:
            raise InputError(f"{ENV_MAX_JET} must be an integer") from None
    else:
        value = DEFAULT_MAX_JET
    if value < 2:
        raise InputError("the jet bound must be at least 2")
    return value


def cmd_types(args, out: TextIO) -> int:
    try:
        descs = enumerate_stable_partitions(args.n, args.p)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.zero_dimensional:
        descs = [d for d in descs if d.zero_dimensional]
    _emit([{"partition": list(d.partition.parts), "dimension": d.dimension,
            "zero_dimensional": d.zero_dimensional,
            "stabilizer": stabilizer_order(d.partition)} for d in descs],
          args.output, out)
    return EXIT_OK


def _count(g: GermSpec, P: Partition, method: str | None, max_jet: int, err: TextIO) -> tuple[dict, int]:
    if P.dimension(g.n, g.p) != 0:
        raise InputError(f"partition {P} is not zero-dimensional for (n,p)=({g.n},{g.p})")
    if method is None:
        method = "both" if is_weighted_homogeneous(g) else "colength"
    try:
        if method == "formula":
            rep = count_by_formula(g, P)
        elif method == "both":
            rep = count_both(g, P, max_jet)
            if rep.method is Method.BOTH and not rep.agreement:
                err.write(f"warning: {g.name} {P}: colength route gives {rep.colength}, "
                          f"closed form gives {rep.formula_colength}\n")
        else:
            rep = count_by_colength(g, P, max_jet)
    except NotFinite:
        return _record(g, P, method, finite=False), EXIT_NOT_FINITE
    except DivisibilityError:
        raise
    except CountingError as exc:
        raise InputError(str(exc)) from None
    return _count_record(rep, g), EXIT_OK


def cmd_count(args, out: TextIO, err: TextIO, method: str | None = None) -> int:
    g = _load(args.germ, _bindings(args.set))
    P = _partition(args, g)
    rec, code = _count(g, P, method or args.method, _max_jet(args), err)
    _emit(rec, args.output, out)
    return code


def cmd_invariant(args, out: TextIO, err: TextIO) -> int:
    g = _load(args.germ, _bindings(args.set))
    P = _partition(args, g)
    try:
        rep = invariant_N(g, P, _max_jet(args))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    r = rep.n_value
    rec = _record(g, P, "invariant", invariant=r.value, stabilized_at=r.stabilized_at,
                  finite=r.finite)
    _emit(rec, args.output, out)
    return EXIT_OK if r.finite else EXIT_NOT_FINITE


def verdict_report(g: GermSpec, v: Verdict) -> dict:
    records = []
    for inv in v.invariants:
        r = inv.n_value
        records.append(_record(g, inv.partition, "invariant", invariant=r.value,
                               stabilized_at=r.stabilized_at, finite=r.finite))
    for c in v.counts:
        if c.report is None:
            records.append(_record(g, c.partition, "colength", finite=False))
        else:
            records.append(_count_record(c.report, g))
    return {"germ": g.name, "afinite": v.label, "max_jet": v.bound, "reports": records}


def cmd_afinite(args, out: TextIO, err: TextIO) -> int:
    g = _load(args.germ, _bindings(args.set))
    try:
        v = verdict(g, _max_jet(args))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(verdict_report(g, v), args.output, out)
    return EXIT_OK if v.afinite else EXIT_NOT_FINITE


def distinction_report(d: Distinction) -> dict:
    return {
        "germs": [d.first, d.second],
        "max_jet": d.bound,
        "distinguished": d.distinguished,
        "rows": [{"partition": list(r.partition.parts), "quantity": r.quantity,
                  "first": r.first, "second": r.second, "status": r.status} for r in d.rows],
    }


def cmd_distinguish(args, out: TextIO, err: TextIO) -> int:
    b = _bindings(args.set)
    g1, g2 = _load(args.germs[0], b), _load(args.germs[1], b)
    try:
        d = distinguish(g1, g2, _max_jet(args))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep = distinction_report(d)
    if args.output == "json":
        _emit(rep, "json", out)
    else:
        out.write(f"germs: {d.first} {d.second}\nmax_jet: {d.bound}\n"
                  f"distinguished: {str(d.distinguished).lower()}\n")
        for r in rep["rows"]:
            out.write(f"  {_fmt_value(r['partition'])} {r['quantity']}: {_fmt_value(r['first'])} "
                      f"{_fmt_value(r['second'])} {r['status']}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="germcount",
        description="Count zero-dimensional stable types of corank-1 map germs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, germs: int = 1) -> None:
        if germs == 1:
            p.add_argument("germ", help="germ definition file (JSON)")
        else:
            p.add_argument("germs", nargs=2, metavar="GERM", help="two germ definition files")
        p.add_argument("--max-jet", type=int, default=None,
                       help=f"jet bound (default {DEFAULT_MAX_JET}, or ${ENV_MAX_JET})")
        p.add_argument("--set", action="append", default=[], metavar="NAME=RATIONAL",
                       help="bind a parameter before parsing; repeatable")
        p.add_argument("--output", choices=("json", "text"), default="json")

    p = sub.add_parser("types", help="list stable types for (n, p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--zero-dimensional", action="store_true", help="only dimension-0 types")
    p.add_argument("--output", choices=("json", "text"), default="json")

    p = sub.add_parser("count", help="#Q(f,P) for a zero-dimensional partition")
    common(p)
    p.add_argument("--partition", help="comma-separated parts, e.g. 2,1")
    p.add_argument("--method", choices=[m.value for m in Method], default=None,
                   help="default: both when the germ is weighted homogeneous, else colength")

    p = sub.add_parser("whcount", help="#Q(f,P) by the weighted-homogeneous closed form")
    common(p)
    p.add_argument("--partition")

    p = sub.add_parser("invariant", help="the invariant N(f,P)")
    common(p)
    p.add_argument("--partition")

    p = sub.add_parser("afinite", help="finiteness verdict from all required invariants and counts")
    common(p)

    p = sub.add_parser("distinguish", help="compare all invariants of two germs")
    common(p, germs=2)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if args.command == "types":
            return cmd_types(args, out)
        if args.command == "count":
            return cmd_count(args, out, err)
        if args.command == "whcount":
            return cmd_count(args, out, err, method="formula")
        if args.command == "invariant":
            return cmd_invariant(args, out, err)
        if args.command == "afinite":
            return cmd_afinite(args, out, err)
        return cmd_distinguish(args, out, err)
    except InputError as exc:
        err.write(f"germcount: error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
