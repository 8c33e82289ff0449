"""Command-line interface: ``k3cones <command> [options]``.

Exit codes: 0 on success, 2 on usage errors, 3 on domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Iterator, Optional, TextIO

from . import render
from .chow import PHI_SIGMA2, CurveClassE, DivisorE, DivisorS2, bbf, dot_curve_e, restrict_to_e, triple_e
from .cones import LIST_KINDS, degree_lists, full_report
from .errors import DomainError, OddDegree
from .expr import ExpressionError, parse_divisor
from .pell import pell_n_search, sqrt_cf
from .stability import bott_check, destab_catalog, hein_min_multiple, ramification_verdict

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 2, 3

KIND_ALIASES = {"eff": "eff_theorem_b", "nef": "nef_known", "eff_all": "eff_all_known"}


class UsageError(Exception):
    pass


def degree_to_t(d: int) -> int:
    if d % 2:
        raise OddDegree(f"K3 degrees are even, got {d}")
    if d < 2:
        raise DomainError(f"degree must be at least 2, got {d}")
    return d // 2


def _report_json(t: int) -> str:
    return render.dumps(render.full_report_doc(t))


def _report_markdown(t: int) -> str:
    return render.degree_report_markdown(full_report(t))


def _ordered(func, ts: list[int], jobs: int) -> Iterator[str]:
    """Apply ``func`` to each ``t``, yielding results in input order."""
    if jobs <= 1:
        yield from map(func, ts)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(func, ts, chunksize=max(1, len(ts) // (8 * jobs)))


def _indent(text: str, prefix: str) -> str:
    return "\n".join(prefix + line for line in text.splitlines())


def stream_sweep_json(max_d: int, jobs: int, out: TextIO) -> None:
    """Write a sweep document incrementally; the bytes equal ``render.dumps`` of the whole document."""
    ts = list(range(1, max_d // 2 + 1))
    out.write('{\n  "document": "sweep",\n  "max_d": %d,\n  "reports": [' % max_d)
    sep = "\n"
    for text in _ordered(_report_json, ts, jobs):
        out.write(sep + _indent(text, "    "))
        sep = ",\n"
    out.write("\n  ]\n}\n" if ts else "]\n}\n")


def _parse_curve(text: str) -> CurveClassE:
    if text in ("phi", "phi_sigma2", "phi-sigma2"):
        return PHI_SIGMA2
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("--curve takes three comma-separated coefficients c_l2,c_lh,c_h2")
    try:
        return CurveClassE(*(Fraction(p.strip()) for p in parts))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad curve coefficients {text!r}") from exc


def intersect_document(t: int, exprs: list[str], curve: Optional[str]) -> dict:
    try:
        divs = [parse_divisor(e, t) for e in exprs]
    except ExpressionError as exc:
        raise UsageError(str(exc)) from exc
    names = [str(x) for x in divs]
    on_e = all(isinstance(x, DivisorE) for x in divs)
    on_s2 = all(isinstance(x, DivisorS2) for x in divs)
    if curve is not None:
        if not (on_e and len(divs) == 1):
            raise UsageError("--curve pairs with exactly one divisor on E")
        c = _parse_curve(curve)
        op, value = "curve", dot_curve_e(t, divs[0], c)
        names.append(f"curve({c.c_l2},{c.c_lh},{c.c_h2})")
    elif on_e and len(divs) == 1:
        op, value = "cube", triple_e(t, divs[0], divs[0], divs[0])
    elif on_e and len(divs) == 3:
        op, value = "triple", triple_e(t, *divs)
    elif on_s2 and len(divs) == 2:
        op, value = "bbf", bbf(t, *divs)
    elif on_s2 and len(divs) == 1:
        r = restrict_to_e(divs[0])
        slope = None if r.l == 0 else render.number(r.slope(), "restriction")
        return {"document": "intersection", "t": t, "operation": "restrict", "inputs": names,
                "result": {"divisor": str(r), "slope": slope}}
    else:
        raise UsageError("give one or three classes on E (L, H), or one or two on S^[2] (Ht, B)")
    return {"document": "intersection", "t": t, "operation": op, "inputs": names,
            "result": render.number(value, "intersection-form")}


def destab_document(t: int) -> dict:
    ram = ramification_verdict(t).value if t >= 2 else None
    return {
        "document": "destab",
        "t": t,
        "d": 2 * t,
        "hein_min_multiple": hein_min_multiple(t),
        "ramification": ram,
        "families": [render.family(f, t) for f in destab_catalog(t)],
    }


def list_document(kind: str, max_d: int) -> dict:
    return {"document": "degree-list", "kind": kind, "max_d": max_d,
            "degrees": degree_lists(max_d, kind), "provenance": "pell-criteria"}


def _markdown(doc: dict) -> str:
    kind = doc["document"]
    if kind == "degree-list":
        return " ".join(map(str, doc["degrees"])) + "\n"
    if kind == "pell":
        s = doc["solution"]
        return f"({s['x']}, {s['y']})\n" if s else f"no solution: {doc['certificate']}\n"
    if kind == "continued-fraction":
        return f"[{doc['a0']}; ({', '.join(map(str, doc['period']))})]\n"
    if kind == "intersection":
        r = doc["result"]
        if "divisor" in r:
            tail = f" (slope {r['slope']['symbolic']})" if r["slope"] else ""
            return f"{r['divisor']}{tail}\n"
        return f"{r['symbolic']}\n"
    if kind == "destab":
        lines = [f"d = {doc['d']}: every smooth curve in |O_S(m)| restricts stably for m ≥ "
                 f"{doc['hein_min_multiple']}"]
        if doc["ramification"]:
            lines.append(f"ramification curves: {doc['ramification']}")
        for f in doc["families"]:
            lines.append(f"|O_S({f['multiple']})|: {f['mechanism']} (dimension "
                         f"{'≥ ' if f['family_dim_at_least'] else ''}{f['family_dim']})")
        if not doc["families"]:
            lines.append("no destabilising family known")
        return "\n".join(lines) + "\n"
    if kind == "bott":
        r = doc["report"]
        return f"d = {r['d']}: Bott vanishing {r['verdict']} (χ = {r['chi']})\n"
    raise AssertionError(kind)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "markdown"), default="markdown")

    p = argparse.ArgumentParser(prog="k3cones", description=__doc__.splitlines()[0])
    p.add_argument("--schema", action="store_true", help="print the JSON schema of output documents")
    sub = p.add_subparsers(dest="command")

    a = sub.add_parser("analyze", parents=[common], help="full report for one degree or a sweep")
    g = a.add_mutually_exclusive_group(required=True)
    g.add_argument("--degree", type=int)
    g.add_argument("--max", type=int, dest="max_d", help="every even degree up to this cap")
    a.add_argument("--jobs", type=int, default=1)

    ls = sub.add_parser("list", parents=[common], help="degrees with a known slope")
    ls.add_argument("--kind", required=True, choices=sorted(set(LIST_KINDS) | set(KIND_ALIASES)))
    ls.add_argument("--max", type=int, dest="max_d", required=True)

    pe = sub.add_parser("pell", parents=[common], help="minimal solution of x^2 - D y^2 = N")
    pe.add_argument("--d", type=int, required=True, dest="D")
    pe.add_argument("--n", type=int, default=1, dest="N")

    cf = sub.add_parser("cf", parents=[common], help="continued fraction of sqrt(D)")
    cf.add_argument("--d", type=int, required=True, dest="D")

    it = sub.add_parser("intersect", parents=[common], help="intersection numbers on E or S^[2]")
    it.add_argument("--degree", type=int, required=True)
    it.add_argument("--curve", help="curve class c_l2,c_lh,c_h2 on E, or 'phi'")
    it.add_argument("exprs", nargs="+", metavar="EXPR")

    ds = sub.add_parser("destab", parents=[common], help="stability data for one degree")
    ds.add_argument("--degree", type=int, required=True)

    bt = sub.add_parser("bott", parents=[common], help="Bott vanishing verdict")
    bt.add_argument("--degree", type=int, required=True)

    sub.add_parser("table1", parents=[common], help="slopes for d = 2, 4, 6, 8")
    return p


def run(args: argparse.Namespace, out: TextIO) -> None:
    fmt = args.format
    if args.command == "analyze":
        if args.max_d is not None:
            if args.max_d < 2:
                raise DomainError("--max must be at least 2")
            if args.jobs < 1:
                raise UsageError("--jobs must be positive")
            if fmt == "json":
                stream_sweep_json(args.max_d, args.jobs, out)
            else:
                for text in _ordered(_report_markdown, list(range(1, args.max_d // 2 + 1)), args.jobs):
                    out.write(text + "\n")
            return
        t = degree_to_t(args.degree)
        out.write(_report_json(t) + "\n" if fmt == "json" else _report_markdown(t))
        return
    if args.command == "table1":
        out.write(render.dumps(render.render_table1()) + "\n" if fmt == "json" else render.table1_markdown())
        return

    if args.command == "list":
        doc = list_document(KIND_ALIASES.get(args.kind, args.kind), args.max_d)
    elif args.command == "pell":
        doc = render.pell_document(pell_n_search(args.D, args.N))
    elif args.command == "cf":
        doc = render.cf_document(args.D, sqrt_cf(args.D))
    elif args.command == "intersect":
        doc = intersect_document(degree_to_t(args.degree), args.exprs, args.curve)
    elif args.command == "destab":
        doc = destab_document(degree_to_t(args.degree))
    elif args.command == "bott":
        doc = {"document": "bott", "report": render.bott(bott_check(args.degree))}
    else:
        raise UsageError(f"unknown command {args.command!r}")
    out.write(render.dumps(doc) + "\n" if fmt == "json" else _markdown(doc))


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.schema:
        sys.stdout.write(json.dumps(render.load_schema(), indent=2) + "\n")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        run(args, sys.stdout)
    except UsageError as exc:
        print(f"k3cones: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"k3cones: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
