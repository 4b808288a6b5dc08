"""Command-line front end.

Exit status: 0 on success, 1 on a mathematical failure (divergence, lost
precision, cost guard), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .algebra import GF, Place, Poly, enumerate_places
from .andersonthakur import at_poly
from .carlitz import IndexComposition
from .cmspl import cmspl_v
from .errors import MathError
from .mzv import ROW_FIELDS, adelic_scan, finite_zeta, zeta_inf_cmspl, zeta_inf_series, zeta_v
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


def _field(q):
    try:
        return GF(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _poly(F, text):
    try:
        return Poly.parse(F, text)
    except ValueError as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc}") from exc


def _place(F, text):
    try:
        return Place(_poly(F, text))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _index(text):
    try:
        return IndexComposition.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad index {text!r}: {exc}") from exc


def _prec(n):
    if n < 1:
        raise UsageError("precision must be at least 1")
    return n


def _csv(rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(ROW_FIELDS) + ["error"], extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        flat = dict(row)
        flat["index"] = ",".join(map(str, row["index"]))
        flat["digits"] = ";".join(f"{d['c']}@{d['pow']}" for d in row["digits"])
        flat["criterion"] = str(row["criterion"]).lower()
        w.writerow(flat)
    return buf.getvalue().rstrip("\n")


def _value_doc(value, **extra):
    doc = dict(extra)
    doc.update(value.to_json())
    doc["valuation"] = None if value.is_zero() else value.valuation
    doc["text"] = str(value)
    return doc


def cmd_mzv_v(args, out):
    F = _field(args.q)
    res = zeta_v(_index(args.index), _place(F, args.v), _prec(args.prec))
    row = res.to_row()
    if args.format == "json":
        out(json.dumps(row))
    elif args.format == "csv":
        out(_csv([row]))
    else:
        out(f"zeta_A({res.index})_v at v={res.place}: {res.value}")
        out(f"valuation: {row['valuation'] if row['valuation'] is not None else 'unknown (zero to precision)'}")
        out(f"bound: {res.bound}  criterion q_v >= wt: {str(res.criterion).lower()}  integral: {res.integral}")


def cmd_mzv_inf(args, out):
    F = _field(args.q)
    index = _index(args.index)
    M = _prec(args.prec)
    value = zeta_inf_series(index, M, F) if args.method == "series" else zeta_inf_cmspl(index, M, F)
    if args.format == "json":
        out(json.dumps(_value_doc(value, q=F.q, index=list(index.parts), method=args.method)))
    elif args.format == "csv":
        out("q,index,method,value")
        out(f"{F.q},\"{index}\",{args.method},{value}")
    else:
        out(f"zeta_A({index}) at infinity [{args.method}]: {value}")


def cmd_cmspl(args, out):
    F = _field(args.q)
    index = _index(args.index)
    point = tuple(_poly(F, p) for p in args.point.split(","))
    if len(point) != index.depth:
        raise UsageError("index and point must have the same length")
    place = _place(F, args.v)
    value = cmspl_v(index, point, place, _prec(args.prec))
    if args.format == "json":
        out(json.dumps(_value_doc(value, q=F.q, place=str(place), index=list(index.parts),
                                  point=[str(u) for u in point])))
    elif args.format == "csv":
        out("q,place,index,point,value")
        out(f"{F.q},{place},\"{index}\",\"{','.join(map(str, point))}\",{value}")
    else:
        out(f"Li*_({index})({','.join(map(str, point))}) at v={place}: {value}")


def cmd_at_poly(args, out):
    F = _field(args.q)
    if args.n < 0:
        raise UsageError("n must be nonnegative")
    H = at_poly(F, args.n)
    if args.format == "json":
        out(json.dumps({"q": F.q, "n": args.n, "H": str(H)}))
    else:
        out(str(H))


def cmd_scan(args, out):
    F = _field(args.q)
    if args.max_deg < 1:
        raise UsageError("max-deg must be at least 1")
    rows = adelic_scan(_index(args.index), F, args.max_deg, _prec(args.prec), jobs=max(1, args.jobs))
    if args.format == "json":
        out(json.dumps(rows))
    elif args.format == "csv":
        out(_csv(rows))
    else:
        out(f"{'place':<16} {'valuation':>9} {'bound':>8} {'criterion':>9} {'integral':>8}  value")
        for row in rows:
            val = "-" if row["valuation"] is None else row["valuation"]
            text = row.get("error") or _digits_text(row)
            out(f"{row['place']:<16} {val!s:>9} {row['bound']:>8} {str(row['criterion']).lower():>9} "
                f"{row['integral']:>8}  {text}")


def _digits_text(row):
    parts = [f"{d['c']}@{d['pow']}" for d in row["digits"]]
    return " + ".join(parts + [f"O({row['abs_precision']})"])


def cmd_finite(args, out):
    F = _field(args.q)
    place = _place(F, args.v)
    value = finite_zeta(_index(args.index), place)
    if args.format == "json":
        out(json.dumps({"q": F.q, "place": str(place), "index": list(_index(args.index).parts), "value": str(value)}))
    else:
        out(str(value))


def cmd_places(args, out):
    F = _field(args.q)
    if args.max_deg < 1:
        raise UsageError("max-deg must be at least 1")
    places = [str(p) for p in enumerate_places(F, args.max_deg)]
    if args.format == "json":
        out(json.dumps(places))
    else:
        for p in places:
            out(p)


def cmd_verify(args, out):
    results = run_suite(args.suite, seed=args.seed)
    passed = sum(r.passed for r in results)
    if args.format == "json":
        out(json.dumps({"suite": args.suite, "seed": args.seed, "passed": passed, "total": len(results),
                        "cases": [{"case": r.case, "passed": r.passed, "detail": r.detail} for r in results]}))
    else:
        for r in results:
            out(f"{'PASS' if r.passed else 'FAIL'}  {r.case}")
        out(f"{args.suite}: {passed}/{len(results)} passed (seed {args.seed})")
    return 0 if passed == len(results) else 1


def build_parser():
    p = argparse.ArgumentParser(prog="vmzv", description="v-adic and infinity-adic multiple zeta values over F_q[T]")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, **flags):
        sp = sub.add_parser(name)
        sp.add_argument("--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS)
        for flag, kw in flags.items():
            sp.add_argument(flag, **kw)
        sp.set_defaults(func=func)
        return sp

    q = {"type": int, "required": True}
    add("mzv-v", cmd_mzv_v, **{"--q": q, "--v": {"required": True}, "--index": {"required": True},
                               "--prec": {"type": int, "default": 10}})
    add("mzv-inf", cmd_mzv_inf, **{"--q": q, "--index": {"required": True}, "--prec": {"type": int, "default": 8},
                                   "--method": {"choices": ("series", "cmspl"), "default": "series"}})
    add("cmspl", cmd_cmspl, **{"--q": q, "--v": {"required": True}, "--index": {"required": True},
                               "--point": {"required": True}, "--prec": {"type": int, "default": 10}})
    add("at-poly", cmd_at_poly, **{"--q": q, "--n": {"type": int, "required": True}})
    add("scan", cmd_scan, **{"--q": q, "--index": {"required": True}, "--max-deg": {"type": int, "default": 1},
                             "--prec": {"type": int, "default": 10}, "--jobs": {"type": int, "default": 1}})
    add("finite", cmd_finite, **{"--q": q, "--v": {"required": True}, "--index": {"required": True}})
    add("places", cmd_places, **{"--q": q, "--max-deg": {"type": int, "required": True}})
    add("verify", cmd_verify, **{"--suite": {"choices": sorted(SUITES), "required": True},
                                 "--seed": {"type": int, "default": 0}})
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def out(line):
        print(line, file=stdout)

    try:
        code = args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except MathError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    return code or 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
