"""Command-line front door: polytope I/O, computations, cross-checks, scans.

Reproducibility first: flags only, deterministic JSON (sorted keys), no
config files.  All rationals print reduced as "p/q".  Exit codes: 0 success,
1 failed checks or violations under --fail-on-violation, 2 malformed input,
3 degenerate polytope.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import ehrhart, halfopen, positivity, triangulation
from .polytopes import (DegenerateInputError, Polytope, facet_to_json,
                        polytope_from_json)
from .tensors import SymTensor, rational_to_str, tensor_to_json

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_MALFORMED = 2
EXIT_DEGENERATE = 3


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str, **extra):
        self.code = code
        self.payload = {"error": {"kind": kind, "message": message, **extra}}
        super().__init__(message)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _load_json(source: str):
    try:
        if source == "-":
            return json.load(sys.stdin)
        if source.lstrip().startswith("{"):
            return json.loads(source)
        with open(source) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_MALFORMED, "malformed_input", str(exc)) from exc


def _load_polytope(source: str) -> Polytope:
    data = _load_json(source)
    try:
        return polytope_from_json(data)
    except DegenerateInputError as exc:
        raise CliError(EXIT_DEGENERATE, "degenerate_polytope", str(exc),
                       affine_dim=exc.affine_dim) from exc
    except (ValueError, TypeError, KeyError) as exc:
        raise CliError(EXIT_MALFORMED, "malformed_input", str(exc)) from exc


def _load_halfopen(source: str) -> halfopen.HalfOpenSimplex:
    data = _load_json(source)
    try:
        return halfopen.halfopen_from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise CliError(EXIT_MALFORMED, "malformed_input", str(exc)) from exc


def _table_tensor(t: SymTensor) -> str:
    if t.rank == 0:
        return rational_to_str(t.as_scalar())
    if t.rank == 1:
        return "(" + ", ".join(rational_to_str(x) for x in t.entries) + ")"
    if t.rank == 2:
        rows = [[rational_to_str(x) for x in row] for row in t.to_matrix()]
        width = max(len(s) for row in rows for s in row)
        return "\n".join("[ " + "  ".join(s.rjust(width) for s in row) + " ]"
                         for row in rows)
    return repr(t)


def _print_tensor_block(label: str, t: SymTensor) -> None:
    body = _table_tensor(t)
    if "\n" in body:
        print(f"{label}:")
        for line in body.split("\n"):
            print("  " + line)
    else:
        print(f"{label}: {body}")


# ---------------------------------------------------------------------------
# subcommands

def _cmd_moments(args) -> int:
    p = _load_polytope(args.input)
    t = ehrhart.discrete_moment(p, args.r, args.n)
    if args.table:
        _print_tensor_block(f"L^{args.r}({args.n}P)", t)
    else:
        _emit({"r": args.r, "n": args.n, "dim": p.dim, "moment": tensor_to_json(t)})
    return EXIT_OK


def _cmd_ehrhart(args) -> int:
    p = _load_polytope(args.input)
    poly = ehrhart.ehrhart_tensor_polynomial(p, args.r)
    if args.table:
        for k, c in enumerate(poly.coeffs):
            _print_tensor_block(f"n^{k}", c)
    else:
        _emit({"r": args.r, "dim": p.dim,
               "coeffs": [tensor_to_json(c) for c in poly.coeffs]})
    return EXIT_OK


def _cmd_hvec(args) -> int:
    p = _load_polytope(args.input)
    if args.r > 2:
        print(f"warning: closed moment formulas cap at rank 2; rank {args.r} "
              "h-vector comes from enumeration only", file=sys.stderr)
    h = ehrhart.to_hr_vector(p, args.r)
    if args.table:
        for k, c in enumerate(h.entries):
            _print_tensor_block(f"h_{k}", c)
    else:
        _emit({"r": args.r, "dim": p.dim, "h": [tensor_to_json(c) for c in h.entries]})
    return EXIT_OK


def _cmd_pick(args) -> int:
    p = _load_polytope(args.input)
    if p.dim != 2:
        raise CliError(EXIT_MALFORMED, "not_a_polygon",
                       "pick formulas need a 2-dimensional polytope")
    tri = triangulation.unimodular_triangulation(p)
    h1 = triangulation.h1_pick(tri)
    h2 = triangulation.h2_pick(tri)
    l1 = triangulation.ehrhart_vector_pick(tri)
    l2 = triangulation.ehrhart_matrix_pick(tri)
    agree = (h1 == ehrhart.to_hr_vector(p, 1)
             and h2 == ehrhart.to_hr_vector(p, 2)
             and l1 == ehrhart.ehrhart_tensor_polynomial(p, 1)
             and l2 == ehrhart.ehrhart_tensor_polynomial(p, 2))
    out = {
        "h1": [tensor_to_json(c) for c in h1.entries],
        "h2": [tensor_to_json(c) for c in h2.entries],
        "vector_coeffs": [tensor_to_json(c) for c in l1.coeffs],
        "matrix_coeffs": [tensor_to_json(c) for c in l2.coeffs],
        "agrees_with_interpolation": agree,
        "triangles": len(tri.triangles),
    }
    if args.triangulate:
        out["triangulation"] = {"points": [list(q) for q in tri.points],
                                "triangles": [list(t) for t in tri.triangles]}
    if args.table:
        print(f"triangles: {len(tri.triangles)}")
        print(f"agrees with interpolation: {agree}")
        for k, c in enumerate(h2.entries):
            _print_tensor_block(f"h2_{k}", c)
    else:
        _emit(out)
    return EXIT_OK


def _cmd_halfopen(args) -> int:
    s = _load_halfopen(args.input)
    h = halfopen.hr_halfopen(s, args.r)
    slices = halfopen.box_slices(s)
    out = {
        "r": args.r,
        "dim": s.dim,
        "removed": sorted(s.removed),
        "h": [tensor_to_json(c) for c in h.entries],
        "box_slices": [[list(q) for q in sl] for sl in slices.slices],
    }
    if args.table:
        for k, c in enumerate(h.entries):
            _print_tensor_block(f"h_{k}", c)
    else:
        _emit(out)
    return EXIT_OK


def _report_json(rep: positivity.DefinitenessReport) -> dict:
    return {
        "classification": rep.classification,
        "witness": None if rep.witness is None
        else [rational_to_str(x) for x in rep.witness],
        "witness_value": None if rep.witness_value is None
        else rational_to_str(rep.witness_value),
        "kernel": None if rep.kernel is None
        else [rational_to_str(x) for x in rep.kernel],
    }


def _cmd_psd(args) -> int:
    p = _load_polytope(args.input)
    h_reports = positivity.check_h2_psd(p)
    l_reports = positivity.check_ehrhart_psd(p, 2)
    out = {"h2": [_report_json(r) for r in h_reports],
           "ehrhart2": [_report_json(r) for r in l_reports]}
    if args.table:
        for i, r in enumerate(h_reports):
            print(f"h2_{i}: {r.classification}")
        for i, r in enumerate(l_reports, start=1):
            print(f"L2_{i}: {r.classification}")
    else:
        _emit(out)
    violating = [r for r in h_reports if not r.is_psd]
    if args.fail_on_violation and violating:
        return EXIT_FAIL
    return EXIT_OK


def _cmd_reflexive(args) -> int:
    p = _load_polytope(args.input)
    reflexive = positivity.is_reflexive(p)
    origin_interior = all(f.rhs >= 1 for f in p.facets)
    hstar = ehrhart.to_hr_vector(p, 0)
    h2 = ehrhart.to_hr_vector(p, 2)
    out = {
        "reflexive": reflexive,
        "origin_interior": origin_interior,
        "facets": [facet_to_json(f) for f in p.facets],
        "hstar_palindromic": positivity.palindromic(hstar),
        "h2_palindromic": positivity.palindromic(h2),
        "biconditional_r0": None,
        "biconditional_r2": None,
    }
    if origin_interior:
        out["biconditional_r0"] = reflexive == out["hstar_palindromic"]
        out["biconditional_r2"] = positivity.reflexivity_palindromicity_check(p, 2)
    if args.table:
        for k, v in sorted(out.items()):
            if k != "facets":
                print(f"{k}: {v}")
        for f in p.facets:
            print(f"facet: {list(f.normal)} . x <= {f.rhs}")
    else:
        _emit(out)
    return EXIT_OK


def _cmd_scan(args) -> int:
    rep = positivity.conjecture_scan(args.dim, args.trials, args.bound,
                                     args.gens, args.seed, args.which)
    if args.table:
        print(f"scan {rep.which} d={rep.dimension}: {rep.completed} completed, "
              f"{rep.skipped_no_interior} skipped, "
              f"{len(rep.violations)} violations")
        if rep.runtime_seconds is not None:
            print(f"runtime: {rep.runtime_seconds:.2f}s", file=sys.stderr)
    else:
        _emit(rep.to_json())
    if args.fail_on_violation and rep.violations:
        return EXIT_FAIL
    return EXIT_OK


def _cmd_verify(args) -> int:
    p = _load_polytope(args.input)
    checks: list[tuple[str, bool]] = []

    for r in (0, 1, 2):
        ok = all(ehrhart.reciprocity_check(p, r, n) for n in (1, 2, 3))
        checks.append((f"reciprocity_r{r}", ok))

    for r in (0, 1, 2):
        poly = ehrhart.ehrhart_tensor_polynomial(p, r)
        if p.dim <= 3:
            checks.append((f"leading_coefficient_is_volume_moment_r{r}",
                           poly.coeffs[-1] == ehrhart.moment_tensor(p, r)))
        if p.dim == 2:
            checks.append((f"second_coefficient_facet_sum_r{r}",
                           poly.coeffs[p.dim + r - 1]
                           == ehrhart.second_coefficient_facets(p, r)))
        h = ehrhart.to_hr_vector(p, r)
        total = SymTensor.zero(r, p.dim)
        for entry in h.entries:
            total = total + entry
        if p.dim <= 3:
            checks.append((f"h_sum_is_normalized_volume_moment_r{r}",
                           total == ehrhart.moment_tensor(p, r)
                           * math.factorial(p.dim + r)))
        checks.append((f"h_top_is_interior_moment_r{r}",
                       h[len(h) - 1] == ehrhart.discrete_moment_interior(p, r, 1)))

    if p.dim == 2:
        tri = triangulation.unimodular_triangulation(p)
        checks.append(("pick_h1_agrees", triangulation.h1_pick(tri)
                       == ehrhart.to_hr_vector(p, 1)))
        checks.append(("pick_h2_agrees", triangulation.h2_pick(tri)
                       == ehrhart.to_hr_vector(p, 2)))
        checks.append(("pick_vector_polynomial_agrees",
                       triangulation.ehrhart_vector_pick(tri)
                       == ehrhart.ehrhart_tensor_polynomial(p, 1)))
        checks.append(("pick_matrix_polynomial_agrees",
                       triangulation.ehrhart_matrix_pick(tri)
                       == ehrhart.ehrhart_tensor_polynomial(p, 2)))
        checks.append(("h2_entries_psd",
                       all(r.is_psd for r in positivity.check_h2_psd(p))))

    all_pass = all(ok for _, ok in checks)
    if args.as_json:
        _emit({"checks": [{"name": n, "pass": ok} for n, ok in checks],
               "all_pass": all_pass})
    else:
        width = max(len(name) for name, _ in checks)
        for name, ok in checks:
            print(f"{name.ljust(width)}  {'pass' if ok else 'FAIL'}")
        print(f"{'overall'.ljust(width)}  {'pass' if all_pass else 'FAIL'}")
    return EXIT_OK if all_pass else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehrtensor",
        description="Exact moment tensors and h-tensor vectors of lattice polytopes")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(sp, needs_input=True):
        if needs_input:
            sp.add_argument("input", help="path to polytope JSON, inline JSON, or - for stdin")
        sp.add_argument("--json", action="store_true", default=True,
                        help="JSON output (default)")
        sp.add_argument("--table", action="store_true", help="human-readable table output")

    sp = sub.add_parser("moments", help="discrete moment tensor of a dilate")
    add_io(sp)
    sp.add_argument("--r", type=int, default=0, choices=(0, 1, 2))
    sp.add_argument("--n", type=int, default=1)
    sp.set_defaults(func=_cmd_moments)

    sp = sub.add_parser("ehrhart", help="moment tensor dilation polynomial")
    add_io(sp)
    sp.add_argument("--r", type=int, default=0, choices=(0, 1, 2))
    sp.set_defaults(func=_cmd_ehrhart)

    sp = sub.add_parser("hvec", help="h-tensor vector")
    add_io(sp)
    sp.add_argument("--r", type=int, default=0)
    sp.set_defaults(func=_cmd_hvec)

    sp = sub.add_parser("pick", help="triangulation formulas for a polygon")
    add_io(sp)
    sp.add_argument("--triangulate", action="store_true",
                    help="include the triangulation in the output")
    sp.set_defaults(func=_cmd_pick)

    sp = sub.add_parser("halfopen", help="h-vector of a half-open simplex")
    add_io(sp)
    sp.add_argument("--r", type=int, default=2, choices=(0, 1, 2))
    sp.set_defaults(func=_cmd_halfopen)

    sp = sub.add_parser("psd", help="definiteness of h- and moment-matrix coefficients")
    add_io(sp)
    sp.add_argument("--fail-on-violation", action="store_true")
    sp.set_defaults(func=_cmd_psd)

    sp = sub.add_parser("reflexive", help="reflexivity and palindromicity")
    add_io(sp)
    sp.set_defaults(func=_cmd_reflexive)

    sp = sub.add_parser("scan", help="seeded random conjecture scan")
    add_io(sp, needs_input=False)
    sp.add_argument("--dim", type=int, default=3, choices=(2, 3, 4))
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bound", type=int, default=2)
    sp.add_argument("--gens", type=int, default=8)
    sp.add_argument("--which", choices=("psd", "hibi"), default="psd")
    sp.add_argument("--fail-on-violation", action="store_true")
    sp.set_defaults(func=_cmd_scan)

    sp = sub.add_parser("verify", help="full cross-check battery on one polytope")
    sp.add_argument("input", help="path to polytope JSON, inline JSON, or - for stdin")
    sp.add_argument("--json", dest="as_json", action="store_true",
                    help="JSON output instead of the pass/fail matrix")
    sp.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        _emit(exc.payload)
        return exc.code
    except ValueError as exc:
        _emit({"error": {"kind": "invalid_arguments", "message": str(exc)}})
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
