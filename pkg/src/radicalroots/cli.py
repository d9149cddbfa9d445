"""Command-line front end.

Subcommands: ``solve`` (full pipeline), ``roots`` (numeric roots only),
``series`` (composition series of a generated group), ``check`` (integrality
certificates for a labeling).  Output is deterministic: identical inputs and
flags produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath

from . import __version__
from .errors import InputSyntaxError, SolverError
from .groups import closure, composition_series, orbit_sum_invariant, parse_cycles
from .oracle import (coset_product_certificate, default_labeling_invariants,
                     invariant_value, label_roots)
from .pipeline import _as_labeling, _as_polynomial, solve
from .polynomial import render_polynomial, sanity_check, to_monic
from .radical import emit, _json_obj
from .rootfinder import find_roots, relabel

__all__ = ["main"]


def _load_input_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputSyntaxError(f"cannot read input file {path}: {exc}") from None
    if "poly" not in data:
        raise InputSyntaxError('input file must contain a "poly" entry')
    return data


def _resolve_inputs(args):
    """Polynomial, generator text list, and optional labeling from the flags."""
    poly = None
    generators = getattr(args, "generators", None)
    root_order = getattr(args, "root_order", None)
    if getattr(args, "input", None):
        data = _load_input_file(args.input)
        poly = data["poly"]
        generators = generators or ";".join(data.get("generators", []))
        lab = data.get("labeling") or {}
        if root_order is None and "root_order" in lab:
            root_order = ",".join(str(i) for i in lab["root_order"])
    if getattr(args, "poly", None):
        poly = args.poly
    if poly is None:
        raise InputSyntaxError("a polynomial is required (--poly or --input)")
    return poly, generators, root_order


def _labeling_argument(args, root_order):
    if root_order:
        return root_order
    if getattr(args, "labeling", "auto") == "given":
        raise InputSyntaxError(
            "--labeling given requires --root-order \"i1,i2,...\" "
            "(or a labeling entry in the input file)")
    return "auto"


def _root_line(index: int, value) -> str:
    return f"  x_{index} = {value}"


def _print_solve_text(report, args, out):
    w = out.write
    w(f"polynomial: {render_polynomial(report.polynomial)}\n")
    if report.reduction.scale != 1:
        w(f"monic reduction: {render_polynomial(report.reduction.monic)} "
          f"({report.reduction.note})\n")
    w(f"group: order {report.series.order}, degree {report.series.degree}\n")
    chain = " ; ".join(f"{sigma} [p={p}]" for sigma, p in report.series.steps)
    w(f"composition series: {chain if chain else '(trivial)'}\n")
    w(f"digits: {report.digits} (required {report.plan.required_digits}, "
      f"margin {report.plan.margin})\n")
    w(f"labeling: {','.join(map(str, report.labeling.images))} "
      "(label j takes listed root sigma(j))\n")
    w("labeled roots:\n")
    for i, z in enumerate(report.roots.roots, start=1):
        w(_root_line(i, z) + "\n")
    radices = "x".join(map(str, report.theta.radices)) or "scalar"
    w(f"integer tensor ({radices}): {', '.join(map(str, report.theta.values))}\n")
    w(f"max rounding residual: {mpmath.nstr(report.max_rounding_residual, 4)}\n")
    fmt = "latex" if args.format == "latex" else "text"
    w("roots as radicals:\n")
    for i, expr in enumerate(report.root_exprs, start=1):
        w(f"  x_{i} = {emit(expr, fmt)}\n")
        w(f"      = {report.evaluations[i - 1]}\n")
    if report.verification is not None:
        w(f"verification: max deviation "
          f"{mpmath.nstr(max(report.verification), 4)}\n")
    if args.stats:
        w(f"stats: multiplications {report.multiplications} / "
          f"budget {report.budget}\n")
    for note in report.notes:
        w(f"note: {note}\n")


def _solve_json_payload(report, args):
    payload = {
        "polynomial": {
            "coeffs": [str(c) for c in report.polynomial.coeffs],
            "monic_coeffs": [str(c) for c in report.reduction.monic.coeffs],
            "scale": str(report.reduction.scale),
        },
        "group": {
            "degree": report.series.degree,
            "order": report.series.order,
        },
        "series": [{"sigma": str(s), "prime": p} for s, p in report.series.steps],
        "digits": report.digits,
        "plan": {
            "required_digits": report.plan.required_digits,
            "margin": report.plan.margin,
            "n_bound": str(report.plan.n_bound),
            "x0_bound": report.plan.x0_bound,
        },
        "labeling": list(report.labeling.images),
        "roots": [{"re": z.re_string(), "im": z.im_string()}
                  for z in report.roots.roots],
        "theta": {
            "radices": list(report.theta.radices),
            "values": [str(v) for v in report.theta.values],
            "residuals": [mpmath.nstr(r, 4) for r in report.theta.residuals],
        },
        "expressions": [
            {
                "root": i,
                "ast": _json_obj(expr),
                "text": emit(expr, "text"),
                "value": {"re": report.evaluations[i - 1].re_string(),
                          "im": report.evaluations[i - 1].im_string()},
            }
            for i, expr in enumerate(report.root_exprs, start=1)
        ],
        "stats": {"multiplications": report.multiplications,
                  "budget": report.budget},
        "notes": list(report.notes),
    }
    if report.verification is not None:
        payload["verification"] = {
            "max_deviation": mpmath.nstr(max(report.verification), 4),
            "per_root": [mpmath.nstr(d, 4) for d in report.verification],
        }
    return payload


def _cmd_solve(args, out) -> int:
    poly, generators, root_order = _resolve_inputs(args)
    if not generators:
        raise InputSyntaxError("generators are required (--generators)")
    labeling = _labeling_argument(args, root_order)
    report = solve(poly, generators, digits=args.digits, margin=args.margin,
                   tolerance=args.tolerance, labeling=labeling,
                   run_verification=args.verify)
    if args.format == "json":
        out.write(json.dumps(_solve_json_payload(report, args), indent=2))
        out.write("\n")
    else:
        _print_solve_text(report, args, out)
    return 0


def _cmd_roots(args, out) -> int:
    poly, _, _ = _resolve_inputs(args)
    polynomial = _as_polynomial(poly)
    reduction = to_monic(polynomial)
    rs = find_roots(reduction.monic, args.digits)
    if reduction.scale != 1:
        out.write(f"monic reduction: {render_polynomial(reduction.monic)} "
                  f"({reduction.note})\n")
    report = sanity_check(reduction.monic)
    if not report.clean:
        for note in report.notes:
            out.write(f"warning: {note}\n")
    for i, z in enumerate(rs.roots, start=1):
        out.write(_root_line(i, z) + "\n")
    out.write(f"max residual |f(x)|: {mpmath.nstr(max(rs.residuals), 4)}\n")
    return 0


def _cmd_series(args, out) -> int:
    gens = [parse_cycles(t, args.degree) for t in args.generators.split(";")]
    group = closure(gens, args.degree)
    series = composition_series(group)
    out.write(f"group order: {group.order}\n")
    for i, (sigma, p) in enumerate(series.steps, start=1):
        out.write(f"  step {i}: sigma = {sigma}, p = {p}\n")
    out.write("p-chain: " + ", ".join(map(str, series.primes)) + "\n")
    return 0


def _cmd_check(args, out) -> int:
    poly, generators, root_order = _resolve_inputs(args)
    if not generators:
        raise InputSyntaxError("generators are required (--generators)")
    polynomial = _as_polynomial(poly)
    reduction = to_monic(polynomial)
    degree = reduction.monic.degree
    gens = [parse_cycles(t, degree) for t in generators.split(";")]
    group = closure(gens, degree)
    rs = find_roots(reduction.monic, args.digits)
    labeling = _labeling_argument(args, root_order)
    if labeling == "auto":
        result = label_roots(group, rs)
        sigma, labeled = result.permutation, result.labeled
    else:
        sigma = _as_labeling(labeling, degree)
        labeled = relabel(rs, sigma)
    out.write(f"labeling: {','.join(map(str, sigma.images))}\n")
    for monomial, orbit in default_labeling_invariants(group, with_names=True):
        value, residual = invariant_value(group, orbit, labeled,
                                          tolerance=args.tolerance)
        out.write(f"orbit sum of {monomial}: {value} "
                  f"(residual {mpmath.nstr(residual, 4)})\n")
    if degree <= 6:
        edge = (1, 1) + (0,) * (degree - 2)
        cert = coset_product_certificate(
            group, orbit_sum_invariant(group, edge), labeled,
            tolerance=args.tolerance)
        out.write(f"certificate degree: {cert.degree}\n")
        out.write("certificate coefficients (ascending): "
                  + ", ".join(map(str, cert.coefficients)) + "\n")
        out.write(f"max coefficient residual: "
                  f"{mpmath.nstr(max(cert.residuals), 4)}\n")
    else:
        out.write("certificate skipped: degree above cap 6\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radicalroots",
        description="Exact radical expressions for the roots of solvable "
                    "integer polynomials, from numeric roots and a permutation "
                    "presentation of the Galois group.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_generators=True):
        p.add_argument("--poly", help="polynomial text, e.g. \"x^5+20x+32\"")
        p.add_argument("--input", help="JSON input file "
                       '{"poly":[a0,...,an],"generators":[...],"labeling":{...}}')
        if with_generators:
            p.add_argument("--generators",
                           help="cycle notation, ';'-separated, e.g. "
                                "\"(1,2,3,4,5);(1,4)(2,3)\"")
            p.add_argument("--labeling", choices=("auto", "given"),
                           default="auto")
            p.add_argument("--root-order", dest="root_order",
                           help="with --labeling given: \"i1,i2,...\" so that "
                                "label k takes the i_k-th listed root")
            p.add_argument("--tolerance", type=float, default=0.25,
                           help="integer rounding tolerance (default 0.25)")

    p_solve = sub.add_parser("solve", help="full radical solution")
    add_common(p_solve)
    p_solve.add_argument("--digits", type=int, default=None,
                         help="override the planned digit budget")
    p_solve.add_argument("--margin", type=int, default=6,
                         help="extra digits over the planned requirement "
                              "(default 6)")
    p_solve.add_argument("--format", choices=("text", "latex", "json"),
                         default="text")
    p_solve.add_argument("--verify", action="store_true",
                         help="re-evaluate expressions against the roots")
    p_solve.add_argument("--stats", action="store_true",
                         help="print the multiplication count and budget")
    p_solve.set_defaults(func=_cmd_solve)

    p_roots = sub.add_parser("roots", help="numeric roots only")
    add_common(p_roots, with_generators=False)
    p_roots.add_argument("--digits", type=int, default=32)
    p_roots.set_defaults(func=_cmd_roots)

    p_series = sub.add_parser("series", help="composition series of a group")
    p_series.add_argument("--generators", required=True)
    p_series.add_argument("--degree", type=int, required=True)
    p_series.set_defaults(func=_cmd_series)

    p_check = sub.add_parser("check", help="integrality certificates")
    add_common(p_check)
    p_check.add_argument("--digits", type=int, default=20)
    p_check.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except SolverError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
