"""Command line interface.

Subcommands: classify, orbit, rcov, plan, verify, render.  Exit codes: 0 on
success, 2 on validation errors (the message names the violated
precondition), 1 on internal failure or a failed verification.  Rational
inputs are accepted as "n/d" or decimal strings and parsed exactly; output
shows the exact form first and the float second.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import List, Optional

from .covering import (NotCoprime, covering_radius, grid_oracle_radius,
                       make_cover_report)
from .exact import format_rational, parse_rational
from .planner import (InvalidRadius, NotRepresentable, path_length,
                      plan_shortest_cover)
from .render import InvalidOptions, RenderOptions, render_orbit
from .trajectory import (Horizontal, SingularTrajectory, Sloped,
                         TrajectorySpec, Vertical, build_orbit_by_symmetry,
                         classify, orbit_to_json, simulate_orbit)

_VALIDATION_ERRORS = (ValueError, ZeroDivisionError, NotCoprime,
                      InvalidRadius, NotRepresentable, InvalidOptions,
                      SingularTrajectory)


def _add_spec_args(sub):
    sub.add_argument("--a", required=True,
                     help='starting point, "n/d" or decimal string')
    sub.add_argument("--p", type=int, help="slope numerator")
    sub.add_argument("--q", type=int, help="slope denominator")
    kind = sub.add_mutually_exclusive_group()
    kind.add_argument("--vertical", action="store_true",
                      help="period-2 vertical trajectory at x = a")
    kind.add_argument("--horizontal", action="store_true",
                      help="period-2 horizontal trajectory at y = a")


def _spec_from_args(args) -> TrajectorySpec:
    a = parse_rational(args.a)
    if args.vertical:
        return Vertical(a)
    if args.horizontal:
        return Horizontal(a)
    if args.p is None or args.q is None:
        raise ValueError("sloped trajectories need --p and --q "
                         "(or pass --vertical/--horizontal)")
    return Sloped(a, args.p, args.q)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="billiardcover",
        description="Periodic billiard orbits in the unit square: exact "
                    "construction, covering radii, and shortest covering "
                    "paths.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("classify", help="singular or periodic, and period")
    _add_spec_args(sub)
    sub.add_argument("--json", action="store_true")

    sub = subs.add_parser("orbit", help="construct the orbit")
    _add_spec_args(sub)
    sub.add_argument("--method", choices=("simulate", "symmetry"),
                     default="simulate")
    sub.add_argument("--json", action="store_true")
    sub.add_argument("--no-cells", action="store_true",
                     help="omit cell parallelograms from JSON output")

    sub = subs.add_parser("rcov", help="optimal covering radius")
    _add_spec_args(sub)
    sub.add_argument("--oracle-n", type=int,
                     help="also run the brute-force grid oracle at this "
                          "resolution")
    sub.add_argument("--json", action="store_true")

    sub = subs.add_parser("plan", help="shortest covering path for a radius")
    sub.add_argument("--radius", required=True,
                     help='blade radius, "n/d" or decimal string')
    sub.add_argument("--json", action="store_true")

    sub = subs.add_parser("verify",
                          help="check the closed form against the grid oracle")
    _add_spec_args(sub)
    sub.add_argument("--grid", type=int, default=2000,
                     help="grid oracle resolution (default 2000)")

    sub = subs.add_parser("render", help="write an SVG figure of the orbit")
    _add_spec_args(sub)
    sub.add_argument("--out", required=True, help="output SVG path")
    sub.add_argument("--method", choices=("simulate", "symmetry"),
                     default="simulate")
    sub.add_argument("--width", type=int, default=640)
    sub.add_argument("--margin", type=int, default=16)
    sub.add_argument("--no-grid", action="store_true")
    sub.add_argument("--cells", action="store_true",
                     help="draw the per-cell parallelograms")
    sub.add_argument("--neighborhood", type=str,
                     help="draw the swept region for this blade radius")
    return parser


def _make_orbit(spec, method: str):
    if method == "symmetry":
        if not isinstance(spec, Sloped):
            raise ValueError("--method symmetry needs a sloped trajectory")
        return build_orbit_by_symmetry(spec)
    return simulate_orbit(spec)


def _cmd_classify(args) -> int:
    cls = classify(_spec_from_args(args))
    if args.json:
        print(json.dumps({"kind": cls.kind, "period": cls.period}))
    elif cls.is_periodic:
        print(f"periodic, period {cls.period}")
    else:
        print("singular (hits a corner)")
    return 0


def _cmd_orbit(args) -> int:
    orbit = _make_orbit(_spec_from_args(args), args.method)
    if args.json:
        print(json.dumps(orbit_to_json(orbit,
                                       include_cells=not args.no_cells)))
        return 0
    bp = orbit.bounce_points
    print(f"period {orbit.period}")
    for side, vals in (("bottom", bp.bottom), ("top", bp.top),
                       ("left", bp.left), ("right", bp.right)):
        print(f"{side}: " + " ".join(format_rational(v) for v in vals))
    length = path_length(orbit.spec)
    print(f"length = {length} ≈ {length.to_float():.6f}")
    return 0


def _cmd_rcov(args) -> int:
    spec = _spec_from_args(args)
    report = make_cover_report(spec, oracle_n=args.oracle_n)
    if args.json:
        print(json.dumps(report.to_json()))
        return 0
    print(f"rcov = {report.exact} ≈ {report.float_value:.6f}")
    if report.oracle_estimate is not None:
        print(f"oracle (n={args.oracle_n}) = {report.oracle_estimate:.6f}")
    return 0


def _cmd_plan(args) -> int:
    plan = plan_shortest_cover(parse_rational(args.radius))
    if args.json:
        print(json.dumps(plan.to_json()))
        return 0
    print(f"threshold 1/(4r²) = {format_rational(plan.threshold)}")
    print(f"M = {plan.M}")
    print("representations: "
          + ", ".join(f"({p}, {q})" for p, q in plan.representations))
    c = plan.canonical_spec
    print(f"canonical trajectory: a = {format_rational(c.a)}, "
          f"slope {c.p}/{c.q}")
    print("optimal starts: "
          + " ".join(format_rational(a) for a in plan.all_min_starts))
    print(f"length = {plan.length} ≈ {plan.length.to_float():.6f}")
    if plan.period2_note:
        print(f"note: {plan.period2_note}")
    return 0


def _cmd_verify(args) -> int:
    spec = _spec_from_args(args)
    exact = covering_radius(spec)
    formula = exact.to_float()
    orbit = simulate_orbit(spec)
    oracle = grid_oracle_radius(orbit, args.grid)
    bound = oracle + math.sqrt(2) / 2 / args.grid + 1e-12
    ok = oracle <= formula <= bound
    print(f"formula: {exact} ≈ {formula:.9f}")
    print(f"oracle (n={args.grid}): {oracle:.9f}  upper bound: {bound:.9f}")
    print("VERIFIED" if ok else "MISMATCH")
    return 0 if ok else 1


def _cmd_render(args) -> int:
    orbit = _make_orbit(_spec_from_args(args), args.method)
    r = None
    if args.neighborhood is not None:
        r = float(parse_rational(args.neighborhood))
    opts = RenderOptions(width_px=args.width, margin_px=args.margin,
                         show_grid=not args.no_grid, show_cells=args.cells,
                         neighborhood_r=r)
    svg = render_orbit(orbit, opts)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "classify": _cmd_classify,
    "orbit": _cmd_orbit,
    "rcov": _cmd_rcov,
    "plan": _cmd_plan,
    "verify": _cmd_verify,
    "render": _cmd_render,
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
