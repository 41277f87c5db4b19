"""Exact rational arithmetic and the small planar-geometry kernel.

All coordinates in this package are ``fractions.Fraction`` values, so every
comparison (corner hits, period closure, midpoint identities) is exact.
Square roots never enter exact computation; they appear only when a value is
converted to a float for display or for the numeric oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "n/d" or an exact decimal literal ("0.02" -> 1/50)."""
    return Fraction(text.strip())


def format_rational(r: Fraction) -> str:
    """Canonical "n/d" form (denominator always present and positive)."""
    return f"{r.numerator}/{r.denominator}"


def frac_part(x: Fraction) -> Fraction:
    """Fractional part x - floor(x), always in [0, 1)."""
    return x - math.floor(x)


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __iter__(self):
        return iter((self.x, self.y))


@dataclass(frozen=True)
class Segment:
    start: Point
    end: Point

    def __post_init__(self):
        if self.start == self.end:
            raise ValueError("degenerate segment: start == end")

    def normalized(self) -> "Segment":
        """Endpoints ordered lexicographically; canonical form for set comparison."""
        a, b = (self.start.x, self.start.y), (self.end.x, self.end.y)
        if b < a:
            return Segment(self.end, self.start)
        return self


def reflect_point_across_vertical(pt: Point, x0: Fraction) -> Point:
    return Point(2 * x0 - pt.x, pt.y)


def reflect_point_across_horizontal(pt: Point, y0: Fraction) -> Point:
    return Point(pt.x, 2 * y0 - pt.y)


def point_segment_dist2(pt: Point, seg: Segment) -> Fraction:
    """Exact squared Euclidean distance from pt to the closed segment."""
    vx = seg.end.x - seg.start.x
    vy = seg.end.y - seg.start.y
    wx = pt.x - seg.start.x
    wy = pt.y - seg.start.y
    vv = vx * vx + vy * vy
    t = (wx * vx + wy * vy) / vv
    if t < 0:
        t = Fraction(0)
    elif t > 1:
        t = Fraction(1)
    dx = wx - t * vx
    dy = wy - t * vy
    return dx * dx + dy * dy


def point_segment_distance(pt: Point, seg: Segment) -> float:
    """Euclidean point-to-segment distance; the square root is the only float step."""
    return math.sqrt(float(point_segment_dist2(pt, seg)))
