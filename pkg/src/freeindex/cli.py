"""Command-line interface and file formats.

Exit codes: 0 success, 1 verification failure, 2 input error.

Exact values are written as strings (``"9/14"``); float-mode values as JSON
numbers.  Metric input documents look like::

    {"distances": {"xy": "4", "xz": "3", "yz": "2"},
     "labels": {"x": "a", "y": "b", "z": "c"}}

Integers and ``"p/q"`` strings are exact; decimals are floats unless
``--exact`` is given.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from freeindex.errors import FreeIndexError
from freeindex.index import (
    Certification,
    IndexComponents,
    IndexReport,
    Regime,
    design_triangle,
    numerical_index,
)
from freeindex.metric import (
    Classification,
    PointId,
    Tag,
    TriangleMetric,
    to_scalar,
    validate,
)
from freeindex.operators import Operator2
from freeindex.oracle import MODES, OracleConfig, estimate_index, modes_from, sweep
from freeindex.render import ball_svg

SOUNDNESS_SLACK = 1e-9


class InputError(FreeIndexError):
    pass


# scalars


def scalar_to_json(v):
    if isinstance(v, Fraction):
        return str(v)
    return float(v)


def scalar_from_json(v, exact: bool = False):
    if isinstance(v, bool) or not isinstance(v, (str, int, float)):
        raise InputError(f"not a number: {v!r}")
    if exact:
        try:
            return Fraction(v) if not isinstance(v, float) else Fraction(repr(v))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse {v!r} as a rational") from exc
    if isinstance(v, float):
        return v
    return to_scalar(v)


# metrics


def metric_to_dict(m: TriangleMetric) -> dict:
    return {
        "distances": {
            "xy": scalar_to_json(m.d_xy),
            "xz": scalar_to_json(m.d_xz),
            "yz": scalar_to_json(m.d_yz),
        },
        "numeric_mode": m.numeric_mode,
    }


def metric_from_dict(doc: dict, exact: bool = False) -> TriangleMetric:
    try:
        dist = doc["distances"]
        values = [scalar_from_json(dist[k], exact) for k in ("xy", "xz", "yz")]
    except (KeyError, TypeError) as exc:
        raise InputError(f"metric document needs distances xy, xz, yz: {exc}") from exc
    return validate(*values)


# reports


def report_to_dict(r: IndexReport) -> dict:
    s = scalar_to_json
    return {
        "metric": metric_to_dict(r.metric),
        "canonical": {
            **metric_to_dict(r.canonical),
            "order": [p.value for p in r.classification.canonical_order],
            "tag": r.classification.tag.value,
        },
        "index": s(r.index),
        "regime": r.regime.value,
        "components": None
        if r.components is None
        else {k: s(v) for k, v in vars(r.components).items()},
        "witness": None
        if r.witness is None
        else [[s(v) for v in row] for row in r.witness.rows],
        "images": None
        if r.images is None
        else {k: {kk: s(vv) for kk, vv in v.items()} for k, v in r.images.items()},
        "certification": None
        if r.certification is None
        else {
            "norm_one": r.certification.norm_one,
            "radius_equals_index": r.certification.radius_equals_index,
        },
    }


def report_from_dict(doc: dict) -> IndexReport:
    def metric(d):
        vals = [scalar_from_json(d["distances"][k]) for k in ("xy", "xz", "yz")]
        return TriangleMetric(*vals, numeric_mode=d["numeric_mode"])

    g = scalar_from_json
    canon = doc["canonical"]
    comp = doc["components"]
    wit = doc["witness"]
    images = doc["images"]
    cert = doc["certification"]
    return IndexReport(
        metric=metric(doc["metric"]),
        canonical=metric(canon),
        classification=Classification(
            Tag(canon["tag"]), tuple(PointId(p) for p in canon["order"])
        ),
        index=g(doc["index"]),
        regime=Regime(doc["regime"]),
        components=None if comp is None else IndexComponents(**{k: g(v) for k, v in comp.items()}),
        witness=None if wit is None else Operator2(*(g(v) for row in wit for v in row)),
        images=None
        if images is None
        else {k: {kk: g(vv) for kk, vv in v.items()} for k, v in images.items()},
        certification=None if cert is None else Certification(**cert),
    )


def operator_from_json(doc, exact: bool = False) -> Operator2:
    """Accepts ``[[t11, t12], [t21, t22]]``, ``{"matrix": ...}`` or a report
    with a ``"witness"`` entry."""
    if isinstance(doc, dict):
        doc = doc.get("matrix", doc.get("witness"))
    try:
        (a, b), (c, d) = doc
        return Operator2(*(scalar_from_json(v, exact) for v in (a, b, c, d)))
    except (TypeError, ValueError) as exc:
        raise InputError(f"operator must be a 2x2 matrix: {exc}") from exc


# commands


def _read_json(source: str):
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
        return json.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {source}: {exc}") from exc


def _load_metric(args) -> tuple[TriangleMetric, dict | None]:
    if args.distances:
        doc = {"distances": dict(zip(("xy", "xz", "yz"), args.distances))}
    elif args.input:
        doc = _read_json(args.input)
        if not isinstance(doc, dict):
            raise InputError("metric document must be a JSON object")
    else:
        raise InputError("give a metric document path (or '-') or --distances XY XZ YZ")
    return metric_from_dict(doc, exact=args.exact), doc.get("labels")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc}") from exc


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _oracle_config(args) -> OracleConfig:
    return OracleConfig(
        restarts=args.restarts,
        rng_seed=args.seed,
        seed_with_witness=getattr(args, "witness_seed", False),
    )


def cmd_index(args) -> int:
    m, labels = _load_metric(args)
    doc = report_to_dict(numerical_index(m))
    if labels is not None:
        doc["labels"] = labels
    _emit(_dump(doc), args.out)
    return 0


def cmd_verify(args) -> int:
    m, _ = _load_metric(args)
    report = numerical_index(m)
    result = estimate_index(m, _oracle_config(args))
    formula = float(report.index)
    gap = result.min_v - formula
    ok = -SOUNDNESS_SLACK <= gap <= args.tolerance
    doc = {
        "formula": scalar_to_json(report.index),
        "oracle_min": result.min_v,
        "gap": gap,
        "pass": ok,
        "regime": report.regime.value,
        "evaluations": result.evaluations,
        "argmin": [list(row) for row in result.argmin.rows],
    }
    _emit(_dump(doc), args.out)
    return 0 if ok else 1


def cmd_design(args) -> int:
    alpha = scalar_from_json(args.alpha, exact=args.exact)
    m = design_triangle(alpha)
    report = numerical_index(m)
    doc = {
        "alpha": scalar_to_json(alpha),
        "metric": metric_to_dict(m),
        "verified_index": scalar_to_json(report.index),
        "regime": report.regime.value,
    }
    _emit(_dump(doc), args.out)
    return 0


CSV_COLUMNS = ("d_xy", "d_xz", "d_yz", "formula_index", "oracle_min", "gap", "regime", "seed")


def sweep_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [repr(float(v)) for v in r.metric.distances]
            + [repr(r.formula_index), repr(r.oracle_min), repr(r.gap), r.regime, r.seed]
        )
    return buf.getvalue()


def cmd_sweep(args) -> int:
    if args.n < 1:
        raise InputError("--n must be >= 1")
    try:
        modes = modes_from(args.modes)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = Path(args.out)
    if not out.parent.is_dir():
        raise InputError(f"cannot write {out}: no such directory")
    records = sweep(args.n, _oracle_config(args), modes)
    _emit(sweep_csv(records), args.out)
    return 0


def cmd_ball(args) -> int:
    m, _ = _load_metric(args)
    T = None
    if args.operator:
        doc = _read_json(args.operator)
        if isinstance(doc, dict) and "canonical" in doc and doc.get("witness") is not None:
            # an index report: its witness is written in the canonical basis
            m = report_from_dict(doc).canonical
        T = operator_from_json(doc, exact=m.exact)
    _emit(ball_svg(m, T), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freeindex",
        description="Numerical index of 2-dimensional Lipschitz-free spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def metric_args(p):
        p.add_argument("input", nargs="?", help="metric JSON document, or '-' for stdin")
        p.add_argument("--distances", nargs=3, metavar=("XY", "XZ", "YZ"))
        p.add_argument("--exact", action="store_true", help="read decimals as exact rationals")
        p.add_argument("--out", help="output path (default: stdout)")

    def oracle_args(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--restarts", type=int, default=OracleConfig.restarts)

    p = sub.add_parser("index", help="closed-form index with witness operator")
    metric_args(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("verify", help="compare the closed form with the search oracle")
    metric_args(p)
    oracle_args(p)
    p.add_argument("--tolerance", type=float, default=5e-3)
    p.add_argument("--witness-seed", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("design", help="triangle with a prescribed index in [1/2, 1]")
    p.add_argument("alpha")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("sweep", help="random triangles: formula vs oracle, as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--modes", nargs="+", choices=MODES)
    oracle_args(p)
    p.add_argument("--witness-seed", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ball", help="SVG of the unit ball, optionally with T(B)")
    metric_args(p)
    p.add_argument("--operator", help="operator JSON (matrix or index report)")
    p.set_defaults(func=cmd_ball)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "restarts", 1) < 1:
        print("InputError: --restarts must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except FreeIndexError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
