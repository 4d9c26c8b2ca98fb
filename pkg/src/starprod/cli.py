"""Command line interface.

All commands print a single report to stdout, as JSON (default) or as flat
"key: value" text lines; diagnostics go to stderr.  Output is deterministic:
keys are sorted and every number is exact.  Exit codes: 0 success, 2 bad
input (including argument errors), 3 a resource limit refused the job,
4 internal inconsistency.

A whole job can be supplied as a JSON file through --json FILE; the file
holds {"command": "star", "alpha": ..., "f": ..., ...} using the long
option names (underscores allowed) and is expanded to the equivalent
command line.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from . import bv, koszul, moduli, poisson, structures, wick
from .errors import (InputError, InternalError, ResourceLimitError,
                     StarprodError)
from .expr import parse_poly, poly_to_expr
from .scalars import Scalar, format_scalar
from .superalg import GradedPoly, coeff_space

DEFAULT_ORDER = wick.DEFAULT_ORDER


# input decoding -----------------------------------------------------------------

def _read_payload(text: str) -> str:
    if text.startswith("@"):
        try:
            with open(text[1:], "r", encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {text[1:]!r}: {exc}") from None
    return text


def _decode_json(text: str, what: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON for {what}: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{what} must be a JSON object")
    return data


def load_bivector(text: str) -> poisson.Multivector:
    """Fixture name, inline JSON, or @file with JSON."""
    payload = _read_payload(text).strip()
    if payload.startswith("{"):
        alpha = poisson.Multivector.from_data(_decode_json(payload, "bivector"))
    else:
        alpha = structures.fixture(payload)
    if alpha.degree != 2:
        raise InputError("expected a bivector (degree 2)")
    return alpha


def load_multivector(text: str) -> poisson.Multivector:
    payload = _read_payload(text).strip()
    return poisson.Multivector.from_data(_decode_json(payload, "multivector"))


def load_one_form(text: str) -> koszul.DifferentialForm:
    payload = _read_payload(text).strip()
    form = koszul.DifferentialForm.from_data(_decode_json(payload, "one-form"))
    if form.degree != 1:
        raise InputError("expected a one-form (degree 1)")
    return form


def parse_basepoint(text: str, dim: int) -> list[Scalar]:
    parts = [p.strip() for p in text.split(",")]
    if parts == [""]:
        parts = []
    values = []
    for part in parts:
        try:
            values.append(Scalar.of(Fraction(part)))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad basepoint entry {part!r}; "
                             "use rationals like 2 or -1/3") from None
    if len(values) != dim:
        raise InputError(f"basepoint has {len(values)} entries, expected {dim}")
    return values


def _series_report(basepoint: Sequence[Scalar], series) -> dict:
    return {
        "basepoint": [format_scalar(v) for v in basepoint],
        "series": series.as_strings(),
    }


# command handlers ------------------------------------------------------------------

def _cmd_star(args) -> dict:
    alpha = load_bivector(args.alpha)
    ring = coeff_space(alpha.dim)
    f = parse_poly(args.f, ring)
    g = parse_poly(args.g, ring)
    at = parse_basepoint(args.at, alpha.dim)
    series = wick.star(alpha, f, g, at, args.order, args.max_work)
    return _series_report(at, series)


def _cmd_moyal(args) -> dict:
    alpha = load_bivector(args.alpha)
    ring = coeff_space(alpha.dim)
    f = parse_poly(args.f, ring)
    g = parse_poly(args.g, ring)
    at = parse_basepoint(args.at, alpha.dim)
    series = wick.moyal(alpha, f, g, at, args.order, args.max_work)
    return _series_report(at, series)


def _cmd_associator(args) -> dict:
    alpha = load_bivector(args.alpha)
    ring = coeff_space(alpha.dim)
    f = parse_poly(args.f, ring)
    g = parse_poly(args.g, ring)
    h = parse_poly(args.h, ring)
    at = parse_basepoint(args.at, alpha.dim)
    series = wick.associator(alpha, f, g, h, at, args.order, args.max_work)
    return _series_report(at, series)


def _cmd_check_poisson(args) -> dict:
    alpha = load_bivector(args.alpha)
    witness = poisson.jacobi_witness(alpha)
    report = {
        "alpha": alpha.to_data(),
        "poisson": witness is None,
    }
    if witness is None:
        report["witness"] = None
    else:
        (i, j, k), defect = witness
        report["witness"] = {"indices": [i, j, k],
                             "defect": poly_to_expr(defect)}
    return report


def _cmd_schouten(args) -> dict:
    a = load_multivector(args.a)
    b = load_multivector(args.b)
    return {"bracket": poisson.schouten(a, b).to_data()}


def _cmd_koszul(args) -> dict:
    alpha = load_bivector(args.alpha)
    w1 = load_one_form(args.w1)
    w2 = load_one_form(args.w2)
    report: dict = {}
    if args.route in ("geometric", "both"):
        geometric = koszul.koszul_bracket(alpha, w1, w2, "geometric")
        report["geometric"] = geometric.to_data()
    if args.route in ("diagram", "both"):
        diagram = koszul.koszul_bracket(alpha, w1, w2, "diagram")
        report["diagram"] = diagram.to_data()
    if args.route == "both":
        report["agree"] = report["geometric"] == report["diagram"]
    return report


def _load_bv_space(text: str, order: Optional[int] = None) -> bv.BVSpace:
    payload = _read_payload(text).strip()
    data = _decode_json(payload, "BV space")
    if order is not None:
        data = dict(data)
        data["hbar_order"] = order
    return bv.BVSpace.from_data(data)


def _cmd_bv_check(args) -> dict:
    space = _load_bv_space(args.space)
    f = space.poly(args.f)
    g = space.poly(args.g)
    h = space.poly(args.h)
    report = bv.check_bv_axioms(space, f, g, h)
    residuals = {name: poly_to_expr(p) for name, p in report.residuals().items()}
    return {
        "space": space.to_data(),
        "residuals": residuals,
        "all_zero": report.all_zero(),
    }


def _cmd_qme(args) -> dict:
    space = _load_bv_space(args.space, args.order)
    action = space.poly(args.s)
    result = bv.qme_residual(space, action)
    return {
        "classical": poly_to_expr(result.classical),
        "residual": poly_to_expr(result.residual),
        "solves_qme": result.solves(),
    }


def _cmd_moduli(args) -> dict:
    n = args.n
    if args.facets:
        facets = moduli.facet_compositions(n)
        return {
            "n": n,
            "facets": [{
                "stratum": fc.stratum.serialize(),
                "notation": fc.notation,
                "outer": fc.outer,
                "inner": fc.inner,
                "position": fc.position,
            } for fc in facets],
        }
    if args.codim is not None:
        strata = moduli.enumerate_strata(n, args.codim)
        return {
            "n": n,
            "codim": args.codim,
            "count": len(strata),
            "strata": [s.serialize() for s in strata],
        }
    top = moduli.dim(n)
    counts = {str(c): len(moduli.enumerate_strata(n, c))
              for c in range(top + 1)}
    return {
        "n": n,
        "dim": top,
        "counts": counts,
        "total": sum(counts.values()),
    }


# plumbing -----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starprod",
        description="Exact deformation products, graded brackets, and "
                    "field/antifield checks on polynomial bivector structures.")
    parser.add_argument("--json", metavar="FILE",
                        help="read the whole job from a JSON file")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json",
                        help="report format (default json)")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def series_flags(p, with_h=False):
        p.add_argument("--alpha", required=True,
                       help="bivector: fixture name, inline JSON, or @file")
        p.add_argument("--f", required=True, help="first factor expression")
        p.add_argument("--g", required=True, help="second factor expression")
        if with_h:
            p.add_argument("--h", required=True, help="third factor expression")
        p.add_argument("--at", required=True,
                       help="comma-separated rational basepoint, e.g. 0,1/2")
        p.add_argument("--order", type=int, default=DEFAULT_ORDER,
                       help=f"truncation order (default {DEFAULT_ORDER})")
        p.add_argument("--max-work", type=int, default=wick.DEFAULT_MAX_WORK,
                       help="refuse jobs beyond this enumeration budget")

    p = sub.add_parser("star", parents=[common],
                       help="deformation product at a basepoint")
    series_flags(p)
    p.set_defaults(handler=_cmd_star)

    p = sub.add_parser("moyal", parents=[common],
                       help="constant-bivector exponential product")
    series_flags(p)
    p.set_defaults(handler=_cmd_moyal)

    p = sub.add_parser("associator", parents=[common],
                       help="associativity defect of the product")
    series_flags(p, with_h=True)
    p.set_defaults(handler=_cmd_associator)

    p = sub.add_parser("check-poisson", parents=[common],
                       help="Jacobi identity check with witness")
    p.add_argument("--alpha", required=True,
                   help="bivector: fixture name, inline JSON, or @file")
    p.set_defaults(handler=_cmd_check_poisson)

    p = sub.add_parser("schouten", parents=[common],
                       help="bracket of two multivector fields")
    p.add_argument("--a", required=True, help="multivector JSON or @file")
    p.add_argument("--b", required=True, help="multivector JSON or @file")
    p.set_defaults(handler=_cmd_schouten)

    p = sub.add_parser("koszul", parents=[common],
                       help="bracket of one-forms, by route")
    p.add_argument("--alpha", required=True,
                   help="bivector: fixture name, inline JSON, or @file")
    p.add_argument("--w1", required=True, help="one-form JSON or @file")
    p.add_argument("--w2", required=True, help="one-form JSON or @file")
    p.add_argument("--route", choices=("geometric", "diagram", "both"),
                   default="both")
    p.set_defaults(handler=_cmd_koszul)

    p = sub.add_parser("bv-check", parents=[common],
                       help="bracket/laplacian axiom residuals")
    p.add_argument("--space", required=True, help="BV space JSON or @file")
    p.add_argument("--f", required=True, help="first expression")
    p.add_argument("--g", required=True, help="second expression")
    p.add_argument("--h", required=True, help="third expression")
    p.set_defaults(handler=_cmd_bv_check)

    p = sub.add_parser("qme", parents=[common],
                       help="master equation residual of an action")
    p.add_argument("--space", required=True, help="BV space JSON or @file")
    p.add_argument("--s", required=True, help="action expression (even)")
    p.add_argument("--order", type=int, default=None,
                   help="override the space truncation order")
    p.set_defaults(handler=_cmd_qme)

    p = sub.add_parser("moduli", parents=[common],
                       help="strata counts and facet compositions")
    p.add_argument("--n", type=int, required=True, help="number of inputs")
    p.add_argument("--codim", type=int, default=None,
                   help="list strata of this codimension")
    p.add_argument("--facets", action="store_true",
                   help="list codimension-1 compositions")
    p.set_defaults(handler=_cmd_moduli)

    return parser


def _job_to_argv(job: dict) -> list[str]:
    if "command" not in job or not isinstance(job["command"], str):
        raise InputError("job file needs a 'command' string")
    argv = [job["command"]]
    for key, value in job.items():
        if key == "command":
            continue
        flag = "--" + str(key).replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
            continue
        if isinstance(value, dict):
            rendered = json.dumps(value, sort_keys=True)
        elif isinstance(value, list):
            rendered = ",".join(str(v) for v in value)
        else:
            rendered = str(value)
        argv.extend([flag, rendered])
    return argv


def _emit_text(report: dict, out: TextIO, prefix: str = "") -> None:
    for key in sorted(report):
        value = report[key]
        path = f"{prefix}{key}"
        if isinstance(value, dict):
            _emit_text(value, out, f"{path}.")
        elif isinstance(value, list):
            for idx, item in enumerate(value):
                if isinstance(item, dict):
                    _emit_text(item, out, f"{path}.{idx}.")
                else:
                    out.write(f"{path}.{idx}: {item}\n")
        else:
            out.write(f"{path}: {value}\n")


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        if args.json is not None:
            if args.command is not None:
                raise InputError("--json replaces the command line; "
                                 "drop the explicit command")
            job = _decode_json(_read_payload("@" + args.json), "job file")
            return main(_job_to_argv(job), out)
        if args.command is None:
            parser.print_usage(sys.stderr)
            print("error: a command or --json FILE is required", file=sys.stderr)
            return 2
        report = args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (InternalError, StarprodError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    if args.format == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2))
        out.write("\n")
    else:
        _emit_text(report, out)
    return 0
