"""Command line harness.

Subcommands::

    capacity   geometry constants of the arc
    solve      one extremal solve, dumped as JSON
    limit      grid dump of the limit function and kernel diagonal
    envelope   solver envelope against its asymptote at chosen points
    verify     batch verification suites

Complex literals use the ``a+bi`` form (``inf`` for the point at
infinity); angles are radians.  Exit codes: 0 ok, 1 verification failure,
2 bad input.  The solve cache directory comes from ``--cache-dir`` or the
``ARCWIDOM_CACHE`` environment variable.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import re
import sys

import numpy as np

from .asymptotics import envelope_limit, kernel_k, limit_P_u0
from .cache import SolveCache
from .conformal import INF, ArcGeometry, b_omega_alpha
from .extremal import ExtremalProblem, solve_extremal
from .verify import SUITES, CachedSolver

_SCHEMA = "# arc-widom v1"


class CliError(ValueError):
    pass


def fmt_c(z: complex) -> str:
    """Render a complex value as a+bi with 17 significant digits."""
    if cmath.isinf(z):
        return "inf"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.17g}{sign}{abs(z.imag):.17g}i"


def parse_c(text: str) -> complex:
    """Parse a+bi / a-bi / bare reals / 'inf'."""
    s = text.strip().lower().replace(" ", "")
    if s in ("inf", "+inf", "infinity"):
        return INF
    s = re.sub(r"i$", "j", s)
    try:
        return complex(s)
    except ValueError as exc:
        raise CliError(f"cannot parse complex literal {text!r}") from exc


def _geometry(args) -> ArcGeometry:
    try:
        return ArcGeometry(args.alpha)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _cache(args) -> SolveCache | None:
    directory = os.environ.get("ARCWIDOM_CACHE", args.cache_dir)
    return SolveCache(directory) if directory else None


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_capacity(args) -> int:
    geom = _geometry(args)
    pairs = [
        ("alpha", f"{geom.alpha:.17g}"),
        ("cap", f"{geom.cap:.17g}"),
        ("cot_quarter", f"{1.0 / math.tan(geom.alpha / 4):.17g}"),
        ("tan_quarter", f"{math.tan(geom.alpha / 4):.17g}"),
        ("z0", fmt_c(geom.z0)),
        ("w0", fmt_c(geom.w0)),
    ]
    if args.format == "json":
        _emit(args, json.dumps({"schema": "arc-widom v1", **dict(pairs)}, indent=2) + "\n")
    else:
        _emit(args, _SCHEMA + "\n" + "\n".join(f"{k},{v}" for k, v in pairs) + "\n")
    return 0


def cmd_solve(args) -> int:
    geom = _geometry(args)
    u0 = parse_c(args.u0)
    cache = _cache(args)
    prob = ExtremalProblem(geom, args.n, u0, arc_grid_size=args.grid_m or 0,
                           phase_grid_size=args.grid_k or 0, tol=args.tol,
                           max_rounds=args.max_rounds)
    if cache is not None:
        solver = CachedSolver(cache)
        value, poly = solver.solve(geom, args.n, u0, tol=args.tol,
                                   max_rounds=args.max_rounds)
        record = {
            "schema": "arc-widom v1",
            "alpha": geom.alpha,
            "n": args.n,
            "u0": fmt_c(u0),
            "value": value,
            "coeffs": [[c.real, c.imag] for c in poly.coeffs],
        }
    else:
        sol = solve_extremal(prob)
        record = {
            "schema": "arc-widom v1",
            "alpha": geom.alpha,
            "n": args.n,
            "u0": fmt_c(u0),
            "value": sol.value,
            "norm_cert": sol.norm_cert,
            "upper_bound": sol.upper_bound,
            "converged": sol.converged,
            "rounds": sol.rounds,
            "phase": sol.phase,
            "coeffs": [[c.real, c.imag] for c in sol.poly.coeffs],
        }
    _emit(args, json.dumps(record, indent=2) + "\n")
    return 0


def _grid_points(args) -> np.ndarray:
    radii = [float(r) for r in args.radii.split(",")] if args.radii else [0.3, 0.5, 2.0, 3.0]
    pts = []
    for r in radii:
        for j in range(args.points):
            th = 2.0 * math.pi * (j + 0.37) / args.points
            pts.append(r * cmath.exp(1j * th))
    return np.array(pts)


def cmd_limit(args) -> int:
    geom = _geometry(args)
    u0 = parse_c(args.u0)
    if cmath.isinf(u0):
        raise CliError("the limit grid needs a finite anchor inside the disc")
    pts = _grid_points(args)
    rows = []
    for u in pts:
        u = complex(u)
        try:
            fval = complex(limit_P_u0(u, u0, geom))
        except ValueError:
            continue
        g, kd, _ = envelope_limit(u, 0, geom)
        rows.append((u.real, u.imag, fval.real, fval.imag, float(abs(fval)), g, kd))
    header = "re_u,im_u,re_F,im_F,abs_F,g,k_diag"
    if args.format == "json":
        payload = {"schema": "arc-widom v1", "columns": header.split(","),
                   "rows": [list(r) for r in rows]}
        _emit(args, json.dumps(payload) + "\n")
    else:
        body = "\n".join(",".join(repr(v) for v in row) for row in rows)
        _emit(args, _SCHEMA + "\n" + header + "\n" + body + "\n")
    return 0


def cmd_envelope(args) -> int:
    geom = _geometry(args)
    u0 = parse_c(args.u0)
    cache = _cache(args)
    solver = CachedSolver(cache)
    rows = []
    for n in range(max(args.n, 1), (args.nmax or args.n) + 1):
        value, _ = solver.solve(geom, n, u0, tol=args.tol, max_rounds=args.max_rounds)
        g, kd, asym = envelope_limit(u0, n, geom)
        rows.append((n, value, asym, value / asym, abs(value / asym - 1.0)))
    header = "n,computed,asymptote,ratio,error"
    if args.format == "json":
        _emit(args, json.dumps({"schema": "arc-widom v1",
                                "columns": header.split(","),
                                "rows": [list(r) for r in rows]}) + "\n")
    else:
        body = "\n".join(",".join(repr(v) for v in row) for row in rows)
        _emit(args, _SCHEMA + "\n" + header + "\n" + body + "\n")
    return 0


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise CliError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    cache = _cache(args)
    kwargs = {"cache": cache}
    if args.suite in ("thiran-detaille", "szego-widom", "kernel"):
        kwargs["nmax"] = args.nmax or 30
    elif args.suite == "finite-n":
        kwargs["nmax"] = args.nmax or 10
    elif args.suite == "involution":
        kwargs["n"] = args.n or 12
    elif args.suite == "subharmonicity":
        kwargs["n_circles"] = args.circles
    rep = SUITES[args.suite](args.alpha, **kwargs)
    text = json.dumps(rep.to_json(), indent=2) + "\n" if args.format == "json" else rep.to_csv()
    _emit(args, text)
    sys.stderr.write(f"suite {rep.suite}: {'PASS' if rep.passed else 'FAIL'} "
                     f"({rep.wall_time:.1f}s)\n")
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arc-widom",
                                description="extremal polynomials on circular arcs")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--alpha", type=float, required=True, help="arc half-angle (radians)")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--cache-dir", default=None)
        sp.add_argument("--tol", type=float, default=1e-6)
        sp.add_argument("--max-rounds", type=int, default=8)

    sp = sub.add_parser("capacity", help="geometry constants")
    common(sp)
    sp.set_defaults(func=cmd_capacity)

    sp = sub.add_parser("solve", help="one extremal solve")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--u0", default="0")
    sp.add_argument("--grid-m", type=int, default=None)
    sp.add_argument("--grid-k", type=int, default=None)
    sp.set_defaults(func=cmd_solve, format="json")

    sp = sub.add_parser("limit", help="limit function grid dump")
    common(sp)
    sp.add_argument("--u0", default="0")
    sp.add_argument("--radii", default=None, help="comma separated radii")
    sp.add_argument("--points", type=int, default=16, help="points per radius")
    sp.set_defaults(func=cmd_limit)

    sp = sub.add_parser("envelope", help="solver envelope vs asymptote")
    common(sp)
    sp.add_argument("--u0", default="0")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--nmax", type=int, default=None)
    sp.set_defaults(func=cmd_envelope)

    sp = sub.add_parser("verify", help="verification suites")
    common(sp)
    sp.add_argument("suite", choices=sorted(SUITES))
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--nmax", type=int, default=None)
    sp.add_argument("--circles", type=int, default=20)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
