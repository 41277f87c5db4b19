"""Deterministic SVG figures of orbits.

The unit square maps to a fixed pixel viewport with the y axis flipped so
(0, 0) renders bottom-left.  The swept region for a blade radius r is drawn
as the orbit polyline stroked at width 2r with round caps and joins, which is
exactly the r-neighborhood of the orbit as a point set.  Coordinates are
serialized at six decimal places with trailing zeros trimmed, so identical
inputs produce byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .trajectory import Orbit, Sloped, cell_decomposition


class InvalidOptions(Exception):
    pass


@dataclass(frozen=True)
class RenderOptions:
    width_px: int = 640
    show_grid: bool = True
    show_cells: bool = False
    neighborhood_r: Optional[float] = None
    stroke_width: float = 2.0
    margin_px: int = 16

    def __post_init__(self):
        if self.width_px < 64:
            raise InvalidOptions("width_px must be at least 64")
        if self.neighborhood_r is not None and self.neighborhood_r <= 0:
            raise InvalidOptions("neighborhood_r must be positive")
        if self.margin_px < 0:
            raise InvalidOptions("margin_px must be nonnegative")
        if self.stroke_width <= 0:
            raise InvalidOptions("stroke_width must be positive")


def _fmt(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_orbit(orbit: Orbit, opts: RenderOptions = RenderOptions()) -> str:
    """Render the orbit (plus optional grid, cells and swept region) as an
    SVG 1.1 document string."""
    size = opts.width_px
    inner = size - 2 * opts.margin_px
    if inner <= 0:
        raise InvalidOptions("margin_px leaves no drawing area")

    def fx(x) -> str:
        return _fmt(opts.margin_px + float(x) * inner)

    def fy(y) -> str:
        return _fmt(opts.margin_px + (1.0 - float(y)) * inner)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect class="table" x="{fx(0)}" y="{fy(1)}" width="{_fmt(inner)}" '
        f'height="{_fmt(inner)}" fill="white" stroke="black" '
        f'stroke-width="1"/>',
    ]

    # traversal points; deduped closed path for degenerate period-2 orbits
    seen = set()
    pts = []
    for seg in orbit.segments:
        key = frozenset(((seg.start.x, seg.start.y), (seg.end.x, seg.end.y)))
        if key in seen:
            continue
        seen.add(key)
        if not pts:
            pts.append(seg.start)
        pts.append(seg.end)
    points_attr = " ".join(f"{fx(pt.x)},{fy(pt.y)}" for pt in pts)

    if opts.neighborhood_r is not None:
        lines.append(
            f'<polyline class="sweep" points="{points_attr}" fill="none" '
            f'stroke="#9ad29a" '
            f'stroke-width="{_fmt(2 * opts.neighborhood_r * inner)}" '
            f'stroke-linecap="round" stroke-linejoin="round"/>')

    if opts.show_grid and isinstance(orbit.spec, Sloped):
        p, q = orbit.spec.p, orbit.spec.q
        for i in range(1, p):
            x = _fmt(opts.margin_px + i * inner / p)
            lines.append(f'<line class="grid" x1="{x}" y1="{fy(1)}" '
                         f'x2="{x}" y2="{fy(0)}" stroke="#bbbbbb" '
                         f'stroke-width="0.5"/>')
        for j in range(1, q):
            y = _fmt(opts.margin_px + (1.0 - j / q) * inner)
            lines.append(f'<line class="grid" x1="{fx(0)}" y1="{y}" '
                         f'x2="{fx(1)}" y2="{y}" stroke="#bbbbbb" '
                         f'stroke-width="0.5"/>')

    if opts.show_cells and orbit.period >= 4:
        for (i, j), verts in sorted(cell_decomposition(orbit).items()):
            attr = " ".join(f"{fx(v.x)},{fy(v.y)}" for v in verts)
            lines.append(f'<polygon class="cell" points="{attr}" '
                         f'fill="none" stroke="#d08080" '
                         f'stroke-width="0.75"/>')

    lines.append(
        f'<polyline class="orbit" points="{points_attr}" fill="none" '
        f'stroke="#1040a0" stroke-width="{_fmt(opts.stroke_width)}" '
        f'stroke-linecap="round" stroke-linejoin="round"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
