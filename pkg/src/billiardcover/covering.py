"""Optimal covering radii, exact and brute force.

The closed-form radius of a sloped orbit is max({pa}, 1-{pa}) / sqrt(p^2+q^2);
for the period-2 trajectories it is the distance to the furthest parallel
side.  Exact values are carried as m/sqrt(s) with rational m and integer s,
compared via cross-multiplied squares, so the square root appears only at the
float boundary.  An independent grid oracle bounds the true radius from below
with a provable (sqrt(2)/2)/n gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

import numpy as np

from .exact import Point, Segment, format_rational, frac_part, point_segment_dist2
from .trajectory import (Horizontal, Orbit, SingularTrajectory, Sloped,
                         TrajectorySpec, Vertical, classify)


class NotCoprime(Exception):
    pass


@dataclass(frozen=True)
class ExactRadius:
    """The value m / sqrt(s), m rational and nonnegative, s a positive integer."""
    m: Fraction
    s: int

    def __post_init__(self):
        if self.m < 0 or self.s < 1:
            raise ValueError("need m >= 0 and s >= 1")

    def squared(self) -> Fraction:
        return self.m * self.m / self.s

    def to_float(self) -> float:
        # sqrt of the correctly rounded square keeps the result within 1 ulp
        return math.sqrt(float(self.squared()))

    def __str__(self):
        if self.s == 1:
            return str(self.m)
        return f"({self.m})/√{self.s}"


@dataclass(frozen=True)
class ParallelogramSpec:
    """Inscribed-parallelogram data: corner distances |AP|, |BP| along one
    rectangle side, and the sine of the side angle as an exact radical."""
    ap: Fraction
    bp: Fraction
    sin_theta: ExactRadius

    def __post_init__(self):
        if self.ap < 0 or self.bp < 0:
            raise ValueError("corner distances must be nonnegative")


@dataclass(frozen=True)
class CoverReport:
    exact: ExactRadius
    float_value: float
    oracle_estimate: Optional[float] = None
    grid_spacing: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "exact": {"m": format_rational(self.exact.m), "s": self.exact.s},
            "float": self.float_value,
            "oracle": self.oracle_estimate,
            "grid_n": (None if self.grid_spacing is None
                       else round(1 / self.grid_spacing)),
        }


def parallelogram_cover_radius(ps: ParallelogramSpec) -> ExactRadius:
    """max(|AP|, |BP|) * sin(theta): the corner distances dominate the
    half-gaps between opposite parallelogram sides."""
    return ExactRadius(max(ps.ap, ps.bp) * ps.sin_theta.m, ps.sin_theta.s)


def covering_radius(spec: TrajectorySpec) -> ExactRadius:
    """Optimal covering radius in closed form.

    Sloped: max({pa}, 1-{pa}) / sqrt(p^2+q^2).  Vertical/horizontal: the
    distance max(a, 1-a) to the furthest parallel side.
    """
    if isinstance(spec, (Vertical, Horizontal)):
        return ExactRadius(max(spec.a, 1 - spec.a), 1)
    if not classify(spec).is_periodic:
        raise SingularTrajectory(
            f"singular trajectory: a = k/{spec.p} for integer k")
    f = frac_part(spec.p * spec.a)
    return ExactRadius(max(f, 1 - f), spec.p * spec.p + spec.q * spec.q)


@dataclass(frozen=True)
class ClassMinimum:
    radius: ExactRadius
    starts: Tuple[Fraction, ...]


def class_min_radius(p: int, q: int) -> ClassMinimum:
    """Minimum covering radius 1/(2 sqrt(p^2+q^2)) over the class of period
    2(p+q) trajectories with p bottom bounces, with the minimizing starting
    points (2k-1)/(2p)."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive integers")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) must be 1")
    starts = tuple(Fraction(2 * k - 1, 2 * p) for k in range(1, p + 1))
    return ClassMinimum(ExactRadius(Fraction(1, 2), p * p + q * q), starts)


def covers(spec: TrajectorySpec, r: Fraction) -> bool:
    """True iff the open r-neighborhood of the orbit contains the square.

    Strict inequality r > rcov, compared exactly: at r = rcov the open
    neighborhood misses the extremal point.
    """
    if r <= 0:
        return False
    rc = covering_radius(spec)
    return r * r * rc.s > rc.m * rc.m


def _dedupe_segments(orbit: Orbit) -> List[Segment]:
    seen = set()
    out = []
    for seg in orbit.segments:
        n = seg.normalized()
        key = ((n.start.x, n.start.y), (n.end.x, n.end.y))
        if key not in seen:
            seen.add(key)
            out.append(n)
    return out


def grid_oracle_radius(orbit: Orbit, n: int) -> float:
    """Max over the (n+1)^2 grid points (i/n, j/n) of the min distance to any
    orbit segment: a guaranteed lower bound on the true covering radius, with
    rcov <= result + (sqrt(2)/2)/n.

    A float pass shortlists the near-maximal grid points; the shortlisted
    points are then re-evaluated in exact rational arithmetic, so the returned
    value is the square root of an exactly computed maximum and is
    bit-identical however the grid is partitioned.
    """
    if n < 2:
        raise ValueError("grid resolution n must be at least 2")
    segs = _dedupe_segments(orbit)
    coords = np.arange(n + 1, dtype=np.float64) / n
    gx, gy = np.meshgrid(coords, coords, indexing="ij")
    best = np.full(gx.shape, np.inf)
    for seg in segs:
        x1, y1 = float(seg.start.x), float(seg.start.y)
        vx = float(seg.end.x) - x1
        vy = float(seg.end.y) - y1
        vv = vx * vx + vy * vy
        wx = gx - x1
        wy = gy - y1
        t = np.clip((wx * vx + wy * vy) / vv, 0.0, 1.0)
        d2 = (wx - t * vx) ** 2 + (wy - t * vy) ** 2
        np.minimum(best, d2, out=best)
    # shortlist comfortably wider than float rounding error, then go exact
    cut = best.max() - 1e-9
    cand_i, cand_j = np.nonzero(best >= cut)
    best_sq = Fraction(0)
    for i, j in zip(cand_i.tolist(), cand_j.tolist()):
        pt = Point(Fraction(i, n), Fraction(j, n))
        d2 = min(point_segment_dist2(pt, seg) for seg in segs)
        if d2 > best_sq:
            best_sq = d2
    return math.sqrt(float(best_sq))


def make_cover_report(spec: TrajectorySpec,
                      oracle_n: Optional[int] = None) -> CoverReport:
    """Closed-form radius plus, optionally, the independent grid estimate."""
    exact = covering_radius(spec)
    if oracle_n is None:
        return CoverReport(exact, exact.to_float())
    from .trajectory import simulate_orbit
    orbit = simulate_orbit(spec)
    return CoverReport(exact, exact.to_float(),
                       oracle_estimate=grid_oracle_radius(orbit, oracle_n),
                       grid_spacing=1.0 / oracle_n)
