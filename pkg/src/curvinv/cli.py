"""Batch command-line front end.

Subcommands: ``invariants``, ``criterion``, ``classify``, ``probe``,
``catalog``.  Plain text by default, machine-readable reports with ``--json``
(schemas ship in ``curvinv/schemas/``).  Exit codes: 0 success or
DISTINGUISHED, 1 probe INCONCLUSIVE, 2 input error, 3 mathematical
precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog as _catalog
from .criterion import (
    VectorField,
    check_theorem_criterion,
    classify_geometry,
    search_null_congruence,
)
from .curvature import CurvatureBundle
from .errors import ParseError, PreconditionError
from .invariants import (
    detect_phantom_functions,
    discriminate_with_torsion,
    evaluate_invariants,
    standard_invariant_set,
    torsional_bundle,
)
from .metricfile import load_metric_file, serialize_entry

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def _emit(args, text_lines, payload):
    out = json.dumps(payload, indent=2) if args.json else "\n".join(text_lines)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _flag(v):
    if v is None:
        return "undecided"
    return "yes" if v else "no"


def cmd_invariants(args):
    mf = load_metric_file(args.file)
    torsion_info = None
    if mf.torsion is not None:
        bundle, syms = torsional_bundle(mf.metric, mf.torsion.ansatz,
                                        mf.torsion.symbol, args.order)
        torsion_info = {"ansatz": mf.torsion.ansatz, "symbol": mf.torsion.symbol,
                        "symbols": syms}
    else:
        bundle = CurvatureBundle(mf.metric, order=args.order)
    recipes = standard_invariant_set(args.order, mf.chart.n)
    report = evaluate_invariants(recipes, bundle)
    phantoms = None
    if mf.torsion is None:
        phantoms = sorted(detect_phantom_functions(mf.metric, report))
    lines = [f"invariants of {args.file} (order {args.order})"]
    if torsion_info:
        lines.append(f"torsion: {torsion_info['ansatz']} ansatz, test symbol(s) "
                     + ", ".join(torsion_info["symbols"]))
    for name, val in report.values.items():
        lines.append(f"  {name:18s} zero={_flag(report.zero_flags[name]):9s} {val}")
    if phantoms is not None:
        if phantoms:
            lines.append("phantom warning: function(s) "
                         + ", ".join(phantoms)
                         + f" appear in the metric but in no invariant up to order {args.order}")
        else:
            lines.append("no phantom functions up to this order")
    payload = {
        "tool": "invariants",
        "metric_file": args.file,
        "order": args.order,
        "torsion": ({"ansatz": torsion_info["ansatz"],
                     "symbol": torsion_info["symbol"]} if torsion_info else None),
        "report": report.to_json_dict(),
        "phantoms_up_to_order": phantoms,
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_criterion(args):
    mf = load_metric_file(args.file)
    searched = args.field is None
    if args.field is not None:
        comps = mf.parse_field_components(args.field)
        fields = [VectorField(mf.chart, comps)]
    else:
        fields = search_null_congruence(mf.metric)
    reports = []
    for N in fields:
        reports.append(check_theorem_criterion(
            mf.metric, N, order=args.order if args.with_annihilation else None))
    lines = [f"criterion on {args.file}"]
    if searched:
        lines.append(f"search found {len(reports)} candidate field(s) "
                     "(heuristic: empty is not a proof of non-existence)")
    for rep in reports:
        lines.append(f"  field {rep.field.describe()}")
        lines.append(f"    null={_flag(rep.null)} normal={_flag(rep.normal)} "
                     f"non-diverging={_flag(rep.nondiverging)} "
                     f"geodesic={_flag(rep.geodesic_strict)}")
        if rep.annihilation is not None:
            lines.append(f"    annihilates invariants (order {rep.order}): "
                         f"{_flag(rep.annihilation)}")
        lines.append(f"    verdict: {rep.verdict}")
    if not reports:
        lines.append("  no candidates; verdict: NEGATIVE")
    payload = {
        "tool": "criterion",
        "metric_file": args.file,
        "searched": searched,
        "fields": [rep.to_json_dict() for rep in reports],
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_classify(args):
    mf = load_metric_file(args.file)
    rep = classify_geometry(mf.metric, order=args.order)
    lines = [f"classification of {args.file} (order {args.order})",
             f"  verdict: {rep.verdict}"]
    if rep.candidates:
        lines.append("  candidate fields: "
                     + "; ".join(N.describe() for N in rep.candidates))
    if rep.phantoms:
        lines.append("  phantoms up to order "
                     f"{rep.order}: " + ", ".join(sorted(rep.phantoms)))
    lines.append(f"  note: {rep.note}")
    payload = dict(rep.to_json_dict())
    payload["tool"] = "classify"
    payload["metric_file"] = args.file
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_probe(args):
    mfa = load_metric_file(args.first)
    mfb = load_metric_file(args.second)
    res = discriminate_with_torsion(mfa.metric, mfb.metric,
                                    ansatz=args.ansatz, order=args.order)
    lines = [f"probe {args.first} vs {args.second} "
             f"({args.ansatz} ansatz, order {args.order})",
             f"  verdict: {res.verdict_label}",
             f"  reason: {res.reason}"]
    if res.witness:
        lines.append(f"  witness: {res.witness}")
    payload = dict(res.to_json_dict())
    payload["tool"] = "probe"
    payload["first_file"] = args.first
    payload["second_file"] = args.second
    _emit(args, lines, payload)
    return EXIT_OK if res.distinguished else EXIT_INCONCLUSIVE


def cmd_catalog(args):
    if args.action == "list":
        for name in _catalog.names():
            print(name)
        return EXIT_OK
    params = {}
    for p in args.param or []:
        if "=" not in p:
            raise ParseError(f"--param expects key=value, got {p!r}")
        k, _, v = p.partition("=")
        params[k] = int(v) if v.isdigit() else v
    entry = _catalog.get(args.name, **params)
    text = serialize_entry(entry)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="curvinv",
        description="Exact curvature-scalar analysis of coordinate-chart metrics")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, order_default=2):
        p.add_argument("--order", type=int, default=order_default,
                       help="derivative-order truncation of the invariant set")
        p.add_argument("--json", action="store_true",
                       help="machine-readable report")
        p.add_argument("--out", help="write the report to a file")

    p = sub.add_parser("invariants", help="evaluate the curated invariant set")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("criterion",
                       help="null/normal/non-diverging criterion flags")
    p.add_argument("file")
    p.add_argument("--field",
                   help="comma-separated contravariant components; omitted: "
                        "run the heuristic search")
    p.add_argument("--with-annihilation", action="store_true",
                   help="also evaluate the invariant set and the Lie-annihilation flag")
    common(p)
    p.set_defaults(fn=cmd_criterion)

    p = sub.add_parser("classify", help="two-step classification")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("probe", help="torsion-probe discrimination")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--ansatz", choices=["gradient", "levicivita"],
                   default="gradient")
    common(p, order_default=0)
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("catalog", help="list or export reference geometries")
    p.add_argument("action", choices=["list", "export"])
    p.add_argument("name", nargs="?")
    p.add_argument("--param", action="append",
                   help="entry parameter as key=value (repeatable)")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "catalog" and args.action == "export" and not args.name:
        ap.error("catalog export needs an entry name")
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
