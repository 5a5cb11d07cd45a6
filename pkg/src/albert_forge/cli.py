"""Command-line front end: ``albert-forge <command> [options]``.

Every command writes one report (JSON by default) carrying ``"schema": 1``.
Exit status: 0 success, 1 a verification failed, 2 bad configuration,
3 a budget was exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from typing import Any, Sequence

from . import __version__
from .albert import AlbertVector, classify_color, dickson_certificate, det_poly
from .gf import FieldError, FieldSpec, field_make, field_of_order
from .group import generator_set, hermitian_forms
from .octonion import INDEX_NAMES, table_rows
from .orbits import formulas
from .orbits.bfs import BudgetExceeded, orbit_bfs
from .orbits.census import brute_force_color_census, structured_white_enumeration, white_by_trace
from .orbits.points import canonical_point
from .orbits.twisted import twoE6_point_type
from .suites import DEFAULT_QS, run_suite

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


# -- helpers ----------------------------------------------------------------------
def _field(args) -> FieldSpec:
    if args.p is not None:
        F = field_make(args.p, args.k or 1)
        if args.q is not None and args.q != F.q:
            raise ConfigError(f"--q {args.q} contradicts --p {args.p} --k {args.k or 1}")
        return F
    if args.k is not None:
        raise ConfigError("--k needs --p")
    if args.q is None:
        raise ConfigError("give --q or --p/--k")
    return field_of_order(args.q)


def _qs(args, default: Sequence[int]) -> list[int]:
    """--qs, else the single field from --q or --p/--k, else ``default``."""
    if args.qs:
        if args.q is not None or args.p is not None:
            raise ConfigError("give either --qs or a single field, not both")
        return list(args.qs)
    if args.q is not None or args.p is not None:
        return [_field(args).q]
    return list(default)


def parse_vector(text: str, spec: FieldSpec | None) -> AlbertVector:
    """A vector as JSON: a 27-entry list, or an object with keys a,b,c,A,B,C
    (optionally p and k, which then fix the field)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"vector is not valid JSON: {exc}") from None
    if isinstance(data, dict) and "p" in data:
        v = AlbertVector.from_json(data)
        if spec is not None and v.spec != spec:
            raise ConfigError("the vector's field disagrees with --q/--p/--k")
        return v
    if spec is None:
        raise ConfigError("the vector needs a field: give --q or include p/k in the JSON")
    if isinstance(data, list):
        if len(data) != 27:
            raise ConfigError("a vector list needs 27 entries")
        return AlbertVector(spec, [spec.from_int(int(x)) if isinstance(x, int) else spec.from_coeffs(x) for x in data])
    if isinstance(data, dict):
        unknown = set(data) - {"a", "b", "c", "A", "B", "C", "k"}
        if unknown:
            raise ConfigError(f"unknown vector keys {sorted(unknown)}")
        return AlbertVector.from_json(data, spec)
    raise ConfigError("a vector must be a JSON list or object")


_SCALAR_LIST = re.compile(r"\[\s+([^\[\]{}]*?)\s+\]")
_LIST_OF_LISTS = re.compile(r"\[\s+(\[[^\[\]{}]*\](?:,\s+\[[^\[\]{}]*\])*)\s+\]")


def _compact_lists(text: str) -> str:
    """Put lists of scalars, and lists of such lists, on one line."""
    text = _SCALAR_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return _LIST_OF_LISTS.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)


def _emit(args, report: dict | list[dict], rows: list[dict] | None = None) -> None:
    if args.format == "csv":
        if rows is None:
            raise ConfigError(f"{args.command} has no CSV form")
        buf = io.StringIO()
        fields: list[str] = []
        for r in rows:
            fields += [k for k in r if k not in fields]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        text = buf.getvalue()
    else:
        body = {"schema": SCHEMA, "command": args.command}
        body.update(report if isinstance(report, dict) else {"results": report})
        text = _compact_lists(json.dumps(body, indent=2, sort_keys=True)) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------------
def cmd_table(args) -> int:
    rows = table_rows()
    report = {"index_order": list(INDEX_NAMES), "rows": rows}
    csv_rows = [{"": INDEX_NAMES[i], **dict(zip(INDEX_NAMES, r))} for i, r in enumerate(rows)]
    _emit(args, report, csv_rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(DEFAULT_QS) + ["dickson"] if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        kw: dict[str, Any] = {}
        if args.samples is not None and name in ("octonion", "albert"):
            kw["n_random"] = args.samples
        if name == "dickson":
            rep = run_suite(name, primes=args.qs or (2, 3, 5, 101))
        else:
            rep = run_suite(name, qs=_qs(args, DEFAULT_QS[name]), seed=args.seed, **kw)
        reports.append(rep)
        print(f"suite {name}: {'PASS' if rep.ok else 'FAIL'} ({len(rep.checks)} checks)", file=sys.stderr)
        for c in rep.failures():
            print(f"  FAIL {c.name} q={c.q} {c.detail}", file=sys.stderr)
    ok = all(r.ok for r in reports)
    rows = [{"suite": r.suite, **c.to_json()} for r in reports for c in r.checks]
    _emit(args, {"ok": ok, "seed": args.seed, "suites": [r.to_json(args.timings) for r in reports]}, rows)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_census(args) -> int:
    if args.mode == "closed":
        qs = _qs(args, [2, 3, 4, 5, 7, 8, 9])
        res = [formulas.closed_form_counts(q) for q in qs]
        _emit(args, {"mode": "closed", "results": res}, res)
        return EXIT_OK
    q = _field(args).q if (args.q is not None or args.p is not None) else 2
    t0 = time.perf_counter()
    if args.mode == "brute":
        budget = args.budget or 2**27
        rep = brute_force_color_census(q, workers=args.workers, max_vectors=budget).to_json()
        expected = formulas.white_vectors(q)
    else:
        results = structured_white_enumeration(q, case=args.case)
        rep = {
            "q": q,
            "cases": {str(r.case): r.count for r in results},
            "white": sum(r.count for r in results),
        }
        if args.case is None:
            by_t = white_by_trace(results)
            rep["primitive_idempotents"] = by_t.get(1, 0)
            rep["trace_zero_white"] = by_t.get(0, 0)
        expected = formulas.structured_case_counts(q)[args.case - 1] if args.case else formulas.white_vectors(q)
    rep["mode"] = args.mode
    rep["closed_form"] = expected
    rep["agrees"] = rep["white"] == expected
    if args.timings:
        rep["elapsed_s"] = round(time.perf_counter() - t0, 3)
    _emit(args, rep, [rep])
    return EXIT_OK if rep["agrees"] else EXIT_FAIL


def cmd_orbit(args) -> int:
    F = _field(args)
    start = parse_vector(args.start, F)
    gens = generator_set(F, args.gens).ops
    rep = orbit_bfs(gens, canonical_point(start), limit=args.budget, descriptor=args.gens, keep_keys=False)
    out = rep.to_json(args.timings)
    out["q"] = F.q
    out["start"] = start.to_json()
    _emit(args, out, [out])
    return EXIT_BUDGET if rep.truncated else EXIT_OK


def cmd_dickson(args) -> int:
    ps = args.qs or ([args.p] if args.p else [2, 3, 5, 101])
    res = []
    for p in ps:
        F = field_make(p)
        cert = dickson_certificate(F)
        res.append({"p": p, "det_terms": len(det_poly(F)), "residual_terms": len(cert), "zero": cert.is_zero()})
    _emit(args, {"results": res, "ok": all(r["zero"] for r in res)}, res)
    return EXIT_OK if all(r["zero"] for r in res) else EXIT_FAIL


def cmd_orders(args) -> int:
    qs = _qs(args, [2, 3, 4, 5, 7, 8, 9])
    res = [formulas.order_identities(q) for q in qs]
    rows = [{"q": r["q"], "ok": r["ok"], "SO10_interpretation": r["SO10_interpretation"],
             "order_SE6": r["order_SE6"], "order_F4": r["order_F4"], "order_2SE6": r["order_2SE6"]} for r in res]
    ok = all(r["ok"] for r in res)
    _emit(args, {"results": res, "ok": ok}, rows)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    F = _field(args) if (args.q is not None or args.p is not None) else None
    v = parse_vector(args.vector, F)
    F = v.spec
    out: dict[str, Any] = {"q": F.q, "vector": v.to_json()}
    if v.is_zero():
        raise ConfigError("the zero vector has no color")
    color = classify_color(v)
    out["color"] = color.value
    if F.is_quadratic:
        out["H1"] = F.coeffs(hermitian_forms(v))
        if color.value == "White":
            out["twoE6_type"] = twoE6_point_type(v).value
            if F.p == 2:
                # the 17-space uses the zero set of Q_v on the polar kernel
                out["char2_radical_convention"] = "polar kernel cut by sqrt(Q_v)"
    _emit(args, out, [{"q": F.q, "color": out["color"], "twoE6_type": out.get("twoE6_type", "")}])
    return EXIT_OK


COMMANDS = {
    "table": cmd_table,
    "verify": cmd_verify,
    "census": cmd_census,
    "orbit": cmd_orbit,
    "dickson": cmd_dickson,
    "orders": cmd_orders,
    "classify": cmd_classify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field order q")
    common.add_argument("--p", type=int, help="field characteristic (with --k)")
    common.add_argument("--k", type=int, help="field degree over F_p")
    common.add_argument("--qs", type=int, nargs="+", help="several field orders (or primes for dickson)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: ALBERT_FORGE_THREADS or CPU count)")
    common.add_argument("--budget", type=int, default=None, help="cap on points (orbit) or vectors (census)")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--timings", action="store_true", help="include wall-clock times in the report")

    ap = argparse.ArgumentParser(prog="albert-forge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("table", parents=[common], help="octonion multiplication table")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=sorted(DEFAULT_QS) + ["dickson", "all"], default="all")
    v.add_argument("--samples", type=int, default=None, help="random instances per check")
    c = sub.add_parser("census", parents=[common], help="white-vector counts")
    c.add_argument("--mode", choices=("brute", "structured", "closed"), default="closed")
    c.add_argument("--case", type=int, choices=range(1, 7), default=None)
    o = sub.add_parser("orbit", parents=[common], help="BFS orbit of a point")
    o.add_argument("--start", required=True, help="start vector as JSON")
    o.add_argument("--gens", choices=("standard", "stabilizer", "f4", "twisted", "empty"), default="standard")
    sub.add_parser("dickson", parents=[common], help="determinant vs Dickson cubic certificate")
    sub.add_parser("orders", parents=[common], help="group-order identities")
    k = sub.add_parser("classify", parents=[common], help="color (and 2E6 type) of a vector")
    k.add_argument("vector", help="vector as JSON")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    if args.workers is not None and args.workers < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, FieldError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
