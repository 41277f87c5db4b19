"""Periodic billiard trajectories in the unit square.

A sloped trajectory is named by its starting point (a, 0) on the bottom edge
and its slope p/q (p, q coprime positive integers); the degenerate period-2
trajectories are the vertical segment at x = a and the horizontal segment at
y = a.  The orbit is built two independent ways: exact reflection-by-
reflection simulation, and the reflection-symmetry construction that seeds a
single parallelogram and mirrors it across the 1/p x 1/q grid.  Both run on
integer coordinates scaled by a common denominator, so corner hits and period
closure are decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Dict, List, Optional, Tuple, Union

from .exact import Point, Segment, format_rational, frac_part, parse_rational


class SingularTrajectory(Exception):
    """Raised when a trajectory reaches a corner of the square."""

    def __init__(self, message, corner: Optional[Point] = None,
                 bounce_count: Optional[int] = None):
        super().__init__(message)
        self.corner = corner
        self.bounce_count = bounce_count


@dataclass(frozen=True)
class Sloped:
    a: Fraction
    p: int
    q: int

    def __post_init__(self):
        if not (0 < self.a < 1):
            raise ValueError("starting point a must satisfy 0 < a < 1")
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be positive integers")
        if gcd(self.p, self.q) != 1:
            raise ValueError("gcd(p,q) must be 1")


@dataclass(frozen=True)
class Vertical:
    a: Fraction

    def __post_init__(self):
        if not (0 < self.a < 1):
            raise ValueError("starting point a must satisfy 0 < a < 1")


@dataclass(frozen=True)
class Horizontal:
    a: Fraction

    def __post_init__(self):
        if not (0 < self.a < 1):
            raise ValueError("starting point a must satisfy 0 < a < 1")


TrajectorySpec = Union[Sloped, Vertical, Horizontal]


@dataclass(frozen=True)
class Classification:
    kind: str                     # "singular" or "periodic"
    period: Optional[int] = None  # present iff periodic

    @property
    def is_periodic(self) -> bool:
        return self.kind == "periodic"


@dataclass(frozen=True)
class UnfoldedPoint:
    """A point of the unfolded ray y = (p/q)(x - a) in the upper half plane."""
    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class BouncePoints:
    bottom: Tuple[Fraction, ...]
    top: Tuple[Fraction, ...]
    left: Tuple[Fraction, ...]
    right: Tuple[Fraction, ...]


def classify(spec: TrajectorySpec) -> Classification:
    """Singular iff p*a is an integer; otherwise periodic with period 2(p+q).

    Vertical and horizontal specs are the period-2 trajectories.
    """
    if isinstance(spec, (Vertical, Horizontal)):
        return Classification("periodic", 2)
    if (spec.p * spec.a).denominator == 1:
        return Classification("singular")
    return Classification("periodic", 2 * (spec.p + spec.q))


def unfold_project(pt: UnfoldedPoint) -> Point:
    """Fold a point of the unfolded plane back into the unit square.

    The four cases are decided by the parities of floor(x) and floor(y):
    an odd floor means the corresponding coordinate has been mirrored an odd
    number of times.
    """
    fx = math.floor(pt.x)
    fy = math.floor(pt.y)
    x = pt.x - fx
    y = pt.y - fy
    if fx % 2:
        x = 1 - x
    if fy % 2:
        y = 1 - y
    return Point(x, y)


def bounce_points_bottom(spec: Sloped) -> List[Point]:
    """The p bottom-edge bounce points, sorted by x.

    Obtained by folding the ray points (2k q/p + a, 2k), k = 0..p-1; the k-th
    one is where the unfolded trajectory crosses the horizontal line y = 2k.
    """
    cls = classify(spec)
    if not cls.is_periodic:
        raise SingularTrajectory(
            f"singular trajectory: a = k/{spec.p} for integer k")
    step = 2 * Fraction(spec.q, spec.p)
    pts = [unfold_project(UnfoldedPoint(spec.a + k * step, Fraction(2 * k)))
           for k in range(spec.p)]
    return sorted(pts, key=lambda pt: pt.x)


@dataclass(eq=False)
class Orbit:
    spec: TrajectorySpec
    segments: Tuple[Segment, ...]
    bounce_points: BouncePoints

    @property
    def period(self) -> int:
        return len(self.segments)

    def canonical_segment_set(self) -> frozenset:
        """Normalized segment endpoints, for order-insensitive comparison."""
        out = set()
        for seg in self.segments:
            n = seg.normalized()
            out.add(((n.start.x, n.start.y), (n.end.x, n.end.y)))
        return frozenset(out)

    @cached_property
    def cells(self) -> Dict[Tuple[int, int], Tuple[Segment, ...]]:
        """Orbit pieces clipped to each subrectangle W_{i,j}.

        Each cell holds exactly the four sides of the inscribed parallelogram.
        Empty for period-2 orbits (the subrectangle grid needs a slope).
        """
        if not isinstance(self.spec, Sloped):
            return {}
        p, q = self.spec.p, self.spec.q
        out = {}
        for i in range(1, p + 1):
            x0, x1 = Fraction(i - 1, p), Fraction(i, p)
            for j in range(1, q + 1):
                y0, y1 = Fraction(j - 1, q), Fraction(j, q)
                pieces = []
                for seg in self.segments:
                    clipped = _clip_segment(seg, x0, x1, y0, y1)
                    if clipped is not None:
                        pieces.append(clipped)
                if len(pieces) != 4:
                    raise AssertionError(
                        f"cell ({i},{j}): expected 4 orbit pieces, "
                        f"got {len(pieces)}")
                out[(i, j)] = tuple(pieces)
        return out

    def total_length(self) -> float:
        return sum(math.sqrt(float((s.end.x - s.start.x) ** 2
                                   + (s.end.y - s.start.y) ** 2))
                   for s in self.segments)


def _clip_segment(seg: Segment, x0, x1, y0, y1) -> Optional[Segment]:
    """Exact clip of a sloped segment to an axis-aligned box; None if the
    intersection is empty or a single point."""
    sx, sy = seg.start.x, seg.start.y
    dx = seg.end.x - sx
    dy = seg.end.y - sy
    t_lo, t_hi = Fraction(0), Fraction(1)
    for d, lo, hi, s in ((dx, x0, x1, sx), (dy, y0, y1, sy)):
        ta = (lo - s) / d
        tb = (hi - s) / d
        if ta > tb:
            ta, tb = tb, ta
        t_lo = max(t_lo, ta)
        t_hi = min(t_hi, tb)
    if t_lo >= t_hi:
        return None
    return Segment(Point(sx + t_lo * dx, sy + t_lo * dy),
                   Point(sx + t_hi * dx, sy + t_hi * dy))


def _exact_div(n: int, d: int) -> int:
    quot, rem = divmod(n, d)
    if rem:
        raise AssertionError("scaled coordinate arithmetic left the lattice")
    return quot


def _simulate_scaled(a: Fraction, p: int, q: int):
    """Exact reflection simulation on integer coordinates scaled by D = den(a)*p*q.

    Returns (chain, D) where chain is the list of scaled bounce positions,
    chain[0] == chain[-1].  State recurrence is detected by exact comparison
    of (position, direction); the 2(p+q) period formula is never assumed.
    """
    D = a.denominator * p * q
    A = a.numerator * p * q
    X, Y, sx, sy = A, 0, 1, 1
    start = (X, Y, sx, sy)
    chain = [(X, Y)]
    max_steps = 8 * (p + q) + 16
    for _ in range(max_steps):
        tx_num = (D - X) if sx > 0 else X   # time to x-wall, times q
        ty_num = (D - Y) if sy > 0 else Y   # time to y-wall, times p
        cx = tx_num * p
        cy = ty_num * q
        if cx == cy:
            corner = Point(Fraction(D if sx > 0 else 0, D),
                           Fraction(D if sy > 0 else 0, D))
            raise SingularTrajectory(
                f"singular trajectory: hits corner "
                f"({corner.x}, {corner.y}) after {len(chain) - 1} bounces",
                corner=corner, bounce_count=len(chain) - 1)
        if cx < cy:
            X = D if sx > 0 else 0
            Y = Y + sy * _exact_div(p * tx_num, q)
            sx = -sx
        else:
            Y = D if sy > 0 else 0
            X = X + sx * _exact_div(q * ty_num, p)
            sy = -sy
        chain.append((X, Y))
        if (X, Y, sx, sy) == start:
            return chain, D
    raise RuntimeError("simulation did not close; exceeded safety cap")


def _orbit_from_chain(spec: TrajectorySpec, chain, D: int) -> Orbit:
    pts = [Point(Fraction(x, D), Fraction(y, D)) for x, y in chain]
    segments = tuple(Segment(pts[k], pts[k + 1]) for k in range(len(pts) - 1))
    bottom, top, left, right = [], [], [], []
    for pt in pts[:-1]:
        if pt.y == 0:
            bottom.append(pt.x)
        elif pt.y == 1:
            top.append(pt.x)
        elif pt.x == 0:
            left.append(pt.y)
        else:
            right.append(pt.y)
    bp = BouncePoints(tuple(sorted(bottom)), tuple(sorted(top)),
                      tuple(sorted(left)), tuple(sorted(right)))
    return Orbit(spec, segments, bp)


def simulate_orbit(spec: TrajectorySpec) -> Orbit:
    """Trace the trajectory bounce by bounce until the start state recurs.

    Raises SingularTrajectory (with the corner and bounce count) if the
    trajectory reaches a corner.
    """
    if isinstance(spec, Vertical):
        lo, hi = Point(spec.a, Fraction(0)), Point(spec.a, Fraction(1))
        return Orbit(spec, (Segment(lo, hi), Segment(hi, lo)),
                     BouncePoints((spec.a,), (spec.a,), (), ()))
    if isinstance(spec, Horizontal):
        lo, hi = Point(Fraction(0), spec.a), Point(Fraction(1), spec.a)
        return Orbit(spec, (Segment(lo, hi), Segment(hi, lo)),
                     BouncePoints((), (), (spec.a,), (spec.a,)))
    chain, D = _simulate_scaled(spec.a, spec.p, spec.q)
    return _orbit_from_chain(spec, chain, D)


def build_orbit_by_symmetry(spec: Sloped) -> Orbit:
    """Construct the orbit without simulation.

    Seeds the parallelogram of the cell containing (a, 0), mirrors it across
    every grid line x = i/p and y = j/q, merges the collinear cell pieces into
    maximal segments, and chains those into traversal order starting upward
    from (a, 0).
    """
    cls = classify(spec)
    if not cls.is_periodic:
        raise SingularTrajectory(
            f"singular trajectory: a = k/{spec.p} for integer k")
    a, p, q = spec.a, spec.p, spec.q
    D = a.denominator * p * q
    A = a.numerator * p * q
    wx = D // p
    hy = D // q
    i0 = -((-p * A) // D)        # ceil(p*a)
    u = (i0 - 1) * wx
    # seed parallelogram: one vertex per side of W_{i0,1}
    seed = (
        (A, 0),                                       # bottom
        (u + wx, _exact_div(p * (u + wx - A), q)),    # right
        (2 * u + wx - A, hy),                         # top
        (u, _exact_div(p * (A - u), q)),              # left
    )
    pieces = []
    for i in range(1, p + 1):
        flip_x = (i - i0) % 2
        off_x = (i - 1) * wx
        for j in range(1, q + 1):
            flip_y = (j - 1) % 2
            off_y = (j - 1) * hy
            verts = []
            for x, y in seed:
                xi = x - u
                if flip_x:
                    xi = wx - xi
                eta = hy - y if flip_y else y
                verts.append((off_x + xi, off_y + eta))
            for k in range(4):
                pieces.append((verts[k], verts[(k + 1) % 4]))

    # merge collinear pieces: slope +p/q lines have p*x - q*y constant,
    # slope -p/q lines have p*x + q*y constant
    groups: Dict[Tuple[int, int], list] = {}
    for e0, e1 in pieces:
        if e1 < e0:
            e0, e1 = e1, e0
        sgn = 1 if e1[1] > e0[1] else -1
        key = (sgn, p * e0[0] - sgn * q * e0[1])
        groups.setdefault(key, []).append((e0, e1))
    maximal = []
    for run in groups.values():
        run.sort()
        for k in range(len(run) - 1):
            if run[k][1] != run[k + 1][0]:
                raise AssertionError("collinear orbit pieces do not tile")
        maximal.append((run[0][0], run[-1][1]))

    # chain maximal segments into a closed traversal from (a, 0) going up
    adj: Dict[Tuple[int, int], list] = {}
    for seg in maximal:
        adj.setdefault(seg[0], []).append(seg)
        adj.setdefault(seg[1], []).append(seg)
    for pt, incident in adj.items():
        if len(incident) != 2:
            raise AssertionError(f"bounce point {pt} has {len(incident)} "
                                 "incident segments, expected 2")
    start = (A, 0)
    cur = next(s for s in adj[start] if s[1][1] > s[0][1])  # slope +p/q side
    chain = [start]
    here = start
    while True:
        there = cur[1] if cur[0] == here else cur[0]
        chain.append(there)
        if there == start:
            break
        nxt = next(s for s in adj[there] if s is not cur)
        cur, here = nxt, there
    if len(chain) != len(maximal) + 1:
        raise AssertionError("orbit traversal did not visit every segment")
    return _orbit_from_chain(spec, chain, D)


def cell_decomposition(orbit: Orbit) -> Dict[Tuple[int, int], List[Point]]:
    """Four vertices of the inscribed parallelogram per cell, in cyclic order.

    Vertices lie on the boundary of their subrectangle W_{i,j}.
    """
    if orbit.period < 4:
        raise ValueError("cell decomposition needs a sloped orbit "
                         "(period >= 4)")
    out = {}
    for key, pieces in orbit.cells.items():
        ends: Dict[Point, list] = {}
        for piece in pieces:
            ends.setdefault(piece.start, []).append(piece)
            ends.setdefault(piece.end, []).append(piece)
        cur = pieces[0]
        here = cur.start
        verts = [here]
        for _ in range(3):
            there = cur.end if cur.start == here else cur.start
            verts.append(there)
            cur = next(s for s in ends[there] if s is not cur)
            here = there
        out[key] = verts
    return out


# ---------------------------------------------------------------------------
# JSON shapes


def spec_to_json(spec: TrajectorySpec) -> dict:
    if isinstance(spec, Sloped):
        return {"kind": "sloped", "a": format_rational(spec.a),
                "p": spec.p, "q": spec.q}
    kind = "vertical" if isinstance(spec, Vertical) else "horizontal"
    return {"kind": kind, "a": format_rational(spec.a)}


def spec_from_json(data: dict) -> TrajectorySpec:
    a = parse_rational(data["a"])
    kind = data["kind"]
    if kind == "sloped":
        return Sloped(a, int(data["p"]), int(data["q"]))
    if kind == "vertical":
        return Vertical(a)
    if kind == "horizontal":
        return Horizontal(a)
    raise ValueError(f"unknown trajectory kind: {kind!r}")


def _point_json(pt: Point) -> list:
    return [format_rational(pt.x), format_rational(pt.y)]


def orbit_to_json(orbit: Orbit, include_cells: bool = True) -> dict:
    bp = orbit.bounce_points
    doc = {
        "spec": spec_to_json(orbit.spec),
        "period": orbit.period,
        "bounce_points": {
            "bottom": [format_rational(v) for v in bp.bottom],
            "top": [format_rational(v) for v in bp.top],
            "left": [format_rational(v) for v in bp.left],
            "right": [format_rational(v) for v in bp.right],
        },
        "segments": [[_point_json(s.start), _point_json(s.end)]
                     for s in orbit.segments],
    }
    if include_cells and orbit.period >= 4:
        doc["cells"] = {f"{i},{j}": [_point_json(v) for v in verts]
                        for (i, j), verts
                        in sorted(cell_decomposition(orbit).items())}
    else:
        doc["cells"] = {}
    return doc
