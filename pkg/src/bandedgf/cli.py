"""Batch command-line front end.

Every command reads a JSON matrix spec (``--spec PATH`` or a built-in
``--example NAME``), runs the requested computation, and writes one JSON
document to stdout or ``--out``.  Output is deterministic: keys are sorted
and every scalar is exact (integers or "num/den" strings, never floats).

Exit codes: 0 success, 1 a mathematical check failed (routes disagree,
residual nonzero, identity broken), 2 bad input (malformed JSON, invalid
spec, insufficient order).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures
from .annihilator import AnnihilatorPoly, reconstruct, verify
from .banded import BandedSpec, block_reduce
from .engine import fixed_point_route, series_bundle
from .errors import (
    BandedGFError,
    InsufficientPrecisionError,
    RouteMismatchError,
    SpecFormatError,
)
from .fields import PrimeField, QQ
from .identities import oracle_comparison, run_identity_suite
from .section5 import (
    affine_pipeline,
    recursion_from_json,
    weight_rules_from_json,
    weighted_series,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _parse_field_flag(text):
    if text == "rational":
        return QQ
    if text.startswith("p:"):
        try:
            return PrimeField(int(text[2:]))
        except ValueError as exc:
            raise SpecFormatError(f"bad --field value {text!r}") from exc
    raise SpecFormatError(f"bad --field value {text!r}; use rational or p:PRIME")


def _load_spec(args) -> BandedSpec:
    if getattr(args, "example", None):
        if getattr(args, "spec", None):
            raise SpecFormatError("give either --spec or --example, not both")
        spec = fixtures.example_spec(args.example)
    elif getattr(args, "spec", None):
        try:
            with open(args.spec, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise SpecFormatError(f"cannot read spec file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"invalid JSON in spec file: {exc}") from exc
        spec = BandedSpec.from_json_doc(doc)
    else:
        raise SpecFormatError("a spec is required: --spec PATH or --example NAME")
    if getattr(args, "field", None):
        override = _parse_field_flag(args.field)
        if override != spec.field:
            doc = spec.to_json_doc()
            doc["field"] = "rational" if override == QQ else {"prime": override.p}
            spec = BandedSpec.from_json_doc(doc)
    return spec


def _emit(doc, out_path) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _series_doc(series):
    fmt = series.field.format
    return [fmt(c) for c in series.coeffs]


def cmd_series(args) -> int:
    spec = _load_spec(args)
    gv, report = series_bundle(spec, args.order, block_size=args.block_size)
    _emit(
        {
            "command": "series",
            "order": args.order,
            "coefficients": _series_doc(gv),
            "cross_check": report.to_json_doc(),
        },
        args.out,
    )
    return EXIT_OK


def cmd_annihilate(args) -> int:
    spec = _load_spec(args)
    weights = block_reduce(spec, args.block_size)
    gv = fixed_point_route(weights, args.order).gv
    poly = reconstruct(gv, args.degx, args.degz, guard=args.guard)
    if poly is None:
        _emit(
            {
                "command": "annihilate",
                "order": args.order,
                "degx": args.degx,
                "degz": args.degz,
                "polynomial": None,
                "status": "none-found",
            },
            args.out,
        )
        return EXIT_MISMATCH
    deeper = fixed_point_route(weights, args.order + args.extra).gv
    res = verify(poly, deeper)
    _emit(
        {
            "command": "annihilate",
            "order": args.order,
            "degx": args.degx,
            "degz": args.degz,
            "polynomial": poly.to_json_doc(),
            "verified_to_order": res.checked_order,
            "status": "pass" if res else "fail",
        },
        args.out,
    )
    return EXIT_OK if res else EXIT_MISMATCH


def cmd_verify_example(args) -> int:
    override = None
    if args.poly:
        spec = fixtures.example_spec(args.name)
        try:
            with open(args.poly, "r", encoding="utf-8") as fh:
                override = AnnihilatorPoly.from_json(fh.read(), spec.field)
        except OSError as exc:
            raise SpecFormatError(f"cannot read polynomial file: {exc}") from exc
    try:
        checks = fixtures.run_checks(args.name, args.order, override_poly=override)
    except KeyError as exc:
        raise SpecFormatError(str(exc)) from exc
    ok = all(c[1] for c in checks)
    _emit(
        {
            "command": "verify-example",
            "example": args.name,
            "order": args.order,
            "checks": [
                {"name": n, "ok": o, "detail": d} for n, o, d in checks
            ],
            "status": "pass" if ok else "fail",
        },
        args.out,
    )
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_oracle(args) -> int:
    spec = _load_spec(args)
    weights = block_reduce(spec, args.block_size)
    report = oracle_comparison(weights, args.length)
    doc = report.to_json_doc()
    doc["command"] = "oracle"
    _emit(doc, args.out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_check_identity(args) -> int:
    spec = _load_spec(args)
    weights = block_reduce(spec, args.block_size)
    report = run_identity_suite(
        weights, order=args.order, enum_length=args.enum_length
    )
    doc = report.to_json_doc()
    doc["command"] = "check-identity"
    _emit(doc, args.out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_weighted(args) -> int:
    spec = _load_spec(args)
    weights = block_reduce(spec, args.block_size)
    try:
        with open(args.weights, "r", encoding="utf-8") as fh:
            rules = weight_rules_from_json(fh.read(), spec.field, weights.s)
    except OSError as exc:
        raise SpecFormatError(f"cannot read weights file: {exc}") from exc
    series = weighted_series(spec, rules, args.order, block_size=args.block_size)
    _emit(
        {
            "command": "weighted",
            "order": args.order,
            "coefficients": _series_doc(series),
        },
        args.out,
    )
    return EXIT_OK


def cmd_affine(args) -> int:
    spec = _load_spec(args)
    weights = block_reduce(spec, args.block_size)
    try:
        with open(args.recursion, "r", encoding="utf-8") as fh:
            rec = recursion_from_json(fh.read(), spec.field, weights.s)
    except OSError as exc:
        raise SpecFormatError(f"cannot read recursion file: {exc}") from exc
    series = affine_pipeline(spec, rec, args.order, block_size=args.block_size)
    _emit(
        {
            "command": "affine",
            "order": args.order,
            "coefficients": _series_doc(series),
        },
        args.out,
    )
    return EXIT_OK


def _add_spec_args(p, with_order=True):
    p.add_argument("--spec", help="path to a JSON matrix spec")
    p.add_argument(
        "--example",
        choices=fixtures.EXAMPLE_NAMES,
        help="use a built-in example instead of --spec",
    )
    p.add_argument("--field", help="override the coefficient field: rational or p:PRIME")
    p.add_argument("--block-size", type=int, default=None, help="override block size s")
    if with_order:
        p.add_argument("--order", type=int, default=40, help="truncation order N")
    p.add_argument("--out", help="write the JSON result here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandedgf",
        description=(
            "Exact generating functions of banded, eventually periodic "
            "infinite matrices, with algebraicity certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="cross-checked corner generating function")
    _add_spec_args(p)
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("annihilate", help="reconstruct and verify an annihilating polynomial")
    _add_spec_args(p)
    p.add_argument("--degx", type=int, required=True, help="x-degree bound")
    p.add_argument("--degz", type=int, required=True, help="z-degree bound")
    p.add_argument("--guard", type=int, default=20, help="extra orders beyond the unknown count")
    p.add_argument("--extra", type=int, default=20, help="additional orders for re-verification")
    p.set_defaults(fn=cmd_annihilate)

    p = sub.add_parser("verify-example", help="re-verify a built-in example")
    p.add_argument("name", choices=fixtures.EXAMPLE_NAMES)
    p.add_argument("--order", type=int, default=40)
    p.add_argument("--poly", help="check this polynomial JSON against the example series")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify_example)

    p = sub.add_parser("oracle", help="walk enumeration against every engine output")
    _add_spec_args(p, with_order=False)
    p.add_argument("--length", type=int, default=10, help="maximum walk length")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("check-identity", help="run the full identity suite")
    _add_spec_args(p)
    p.add_argument(
        "--enum-length", type=int, default=8, help="depth of enumeration-backed checks"
    )
    p.set_defaults(fn=cmd_check_identity)

    p = sub.add_parser("weighted", help="weighted corner sums from a rules file")
    _add_spec_args(p)
    p.add_argument("--weights", required=True, help="path to a weight-rules JSON file")
    p.set_defaults(fn=cmd_weighted)

    p = sub.add_parser("affine", help="affine recursion readout series")
    _add_spec_args(p)
    p.add_argument("--recursion", required=True, help="path to a recursion JSON file")
    p.set_defaults(fn=cmd_affine)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except RouteMismatchError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (SpecFormatError, InsufficientPrecisionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BandedGFError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
