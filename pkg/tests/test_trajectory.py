import math
import random
from fractions import Fraction as F
from math import gcd

import pytest

from billiardcover.exact import frac_part
from billiardcover.trajectory import (BouncePoints, Horizontal,
                                      SingularTrajectory, Sloped,
                                      TrajectorySpec, UnfoldedPoint, Vertical,
                                      bounce_points_bottom,
                                      build_orbit_by_symmetry,
                                      cell_decomposition, classify,
                                      orbit_to_json, simulate_orbit,
                                      spec_from_json, spec_to_json,
                                      unfold_project)


def test_spec_invariants():
    with pytest.raises(ValueError):
        Sloped(F(0), 1, 1)
    with pytest.raises(ValueError):
        Sloped(F(1, 2), 2, 4)
    with pytest.raises(ValueError):
        Sloped(F(1, 2), 0, 1)
    with pytest.raises(ValueError):
        Vertical(F(1))


def test_classify_examples():
    assert classify(Sloped(F(1, 2), 2, 1)).kind == "singular"
    cls = classify(Sloped(F(1, 50), 8, 5))
    assert cls.is_periodic and cls.period == 26
    assert classify(Vertical(F(1, 3))) == classify(Horizontal(F(1, 3)))
    assert classify(Vertical(F(1, 3))).period == 2


def test_classify_singularity_criterion():
    for p in range(1, 13):
        for q in range(1, 13):
            if gcd(p, q) != 1:
                continue
            for t in range(1, 40):
                a = F(t, 40)
                if a >= 1:
                    break
                spec = Sloped(a, p, q)
                expected = "singular" if (p * a).denominator == 1 else "periodic"
                assert classify(spec).kind == expected


@pytest.mark.parametrize("x,y,ex,ey", [
    (F(1, 50), F(0), F(1, 50), F(0)),
    (F(127, 100), F(2), F(73, 100), F(0)),
    (F(252, 100), F(2), F(52, 100), F(0)),
])
def test_unfold_project_examples(x, y, ex, ey):
    pt = unfold_project(UnfoldedPoint(x, y))
    assert (pt.x, pt.y) == (ex, ey)


def test_unfold_project_stays_in_square():
    rng = random.Random(19)
    for _ in range(400):
        pt = unfold_project(UnfoldedPoint(
            F(rng.randint(-500, 500), rng.randint(1, 40)),
            F(rng.randint(0, 500), rng.randint(1, 40))))
        assert 0 <= pt.x <= 1 and 0 <= pt.y <= 1


def test_bounce_points_bottom_examples():
    pts = bounce_points_bottom(Sloped(F(1, 50), 8, 5))
    assert [p.x for p in pts] == [F(1, 50), F(23, 100), F(27, 100),
                                  F(12, 25), F(13, 25), F(73, 100),
                                  F(77, 100), F(49, 50)]
    assert all(p.y == 0 for p in pts)

    assert [p.x for p in bounce_points_bottom(Sloped(F(1, 4), 1, 1))] \
        == [F(1, 4)]
    assert [p.x for p in bounce_points_bottom(Sloped(F(1, 4), 2, 1))] \
        == [F(1, 4), F(3, 4)]

    with pytest.raises(SingularTrajectory):
        bounce_points_bottom(Sloped(F(1, 2), 2, 1))


def _check_bounce_structure(spec: Sloped, orbit):
    p, q, a = spec.p, spec.q, spec.a
    bp = orbit.bounce_points
    assert len(bp.bottom) == p and len(bp.top) == p
    assert len(bp.left) == q and len(bp.right) == q
    for vals, m in ((bp.bottom, p), (bp.top, p), (bp.left, q), (bp.right, q)):
        # distinct, one per open subinterval, exact midpoint identity
        assert len(set(vals)) == len(vals)
        for i, v in enumerate(vals, start=1):
            assert F(i - 1, m) < v < F(i, m)
        for i in range(1, m):
            assert (vals[i - 1] + vals[i]) / 2 == F(i, m)


def test_simulate_orbit_structure_example():
    spec = Sloped(F(1, 50), 8, 5)
    orbit = simulate_orbit(spec)
    assert orbit.period == 26
    _check_bounce_structure(spec, orbit)
    # every segment has slope exactly +-p/q
    for seg in orbit.segments:
        slope = (seg.end.y - seg.start.y) / (seg.end.x - seg.start.x)
        assert slope in (F(8, 5), F(-8, 5))


def test_simulate_orbit_singular():
    with pytest.raises(SingularTrajectory) as info:
        simulate_orbit(Sloped(F(1, 2), 2, 1))
    assert info.value.corner is not None
    assert info.value.bounce_count >= 0


def test_simulate_orbit_period2():
    orbit = simulate_orbit(Vertical(F(1, 3)))
    assert orbit.period == 2
    assert orbit.bounce_points == BouncePoints((F(1, 3),), (F(1, 3),), (), ())
    orbit = simulate_orbit(Horizontal(F(2, 5)))
    assert orbit.bounce_points.left == (F(2, 5),)


def test_bottom_parity_alternates():
    spec = Sloped(F(1, 50), 8, 5)
    step = 2 * F(spec.q, spec.p)
    xs = [spec.a + k * step for k in range(spec.p)]
    folded = sorted(xs, key=lambda x: unfold_project(
        UnfoldedPoint(x, F(0))).x)
    parities = [math.floor(x) % 2 for x in folded]
    assert all(parities[i] != parities[i + 1] for i in range(len(parities) - 1))


def test_symmetry_construction_matches_simulation():
    rng = random.Random(23)
    for _ in range(60):
        p, q = rng.randint(1, 9), rng.randint(1, 9)
        if gcd(p, q) != 1:
            continue
        a = F(rng.randint(1, 96), 97)
        spec = Sloped(a, p, q)
        sim = simulate_orbit(spec)
        sym = build_orbit_by_symmetry(spec)
        assert sim.canonical_segment_set() == sym.canonical_segment_set()
        assert sym.period == sim.period


def test_symmetry_construction_examples():
    spec = Sloped(F(1, 50), 8, 5)
    assert build_orbit_by_symmetry(spec).canonical_segment_set() \
        == simulate_orbit(spec).canonical_segment_set()

    diamond = build_orbit_by_symmetry(Sloped(F(1, 4), 1, 1))
    pts = {(s.start.x, s.start.y) for s in diamond.segments}
    assert pts == {(F(1, 4), F(0)), (F(1), F(3, 4)),
                   (F(3, 4), F(1)), (F(0), F(1, 4))}

    # seed cell index is ceil(p*a)
    assert math.ceil(8 * F(1, 50)) == 1

    with pytest.raises(SingularTrajectory):
        build_orbit_by_symmetry(Sloped(F(1, 2), 2, 1))


def _is_parallelogram(verts):
    (a, b, c, d) = verts
    return (b.x - a.x, b.y - a.y) == (c.x - d.x, c.y - d.y) \
        and (d.x - a.x, d.y - a.y) == (c.x - b.x, c.y - b.y)


def test_cell_decomposition():
    spec = Sloped(F(1, 50), 8, 5)
    orbit = simulate_orbit(spec)
    cells = cell_decomposition(orbit)
    assert set(cells) == {(i, j) for i in range(1, 9) for j in range(1, 6)}
    # one vertex of cell (1,1) is the starting point (a, 0)
    assert any(v.x == F(1, 50) and v.y == 0 for v in cells[(1, 1)])
    for (i, j), verts in cells.items():
        assert _is_parallelogram(verts)
        x0, x1 = F(i - 1, 8), F(i, 8)
        y0, y1 = F(j - 1, 5), F(j, 5)
        for v in verts:
            assert x0 <= v.x <= x1 and y0 <= v.y <= y1
            assert v.x in (x0, x1) or v.y in (y0, y1)
    # adjacent cells are exact mirror images across the shared grid line
    for (i, j), verts in cells.items():
        if i < 8:
            mirrored = {(2 * F(i, 8) - v.x, v.y) for v in verts}
            assert mirrored == {(v.x, v.y) for v in cells[(i + 1, j)]}
        if j < 5:
            mirrored = {(v.x, 2 * F(j, 5) - v.y) for v in verts}
            assert mirrored == {(v.x, v.y) for v in cells[(i, j + 1)]}


def test_cell_decomposition_needs_period_4():
    with pytest.raises(ValueError):
        cell_decomposition(simulate_orbit(Vertical(F(1, 2))))


def test_orbit_json_roundtrip():
    spec = Sloped(F(1, 50), 8, 5)
    assert spec_from_json(spec_to_json(spec)) == spec
    assert spec_from_json(spec_to_json(Vertical(F(1, 3)))) == Vertical(F(1, 3))
    doc = orbit_to_json(simulate_orbit(spec))
    assert doc["period"] == 26
    assert len(doc["segments"]) == 26
    assert doc["bounce_points"]["bottom"][0] == "1/50"
    assert len(doc["cells"]) == 40
    assert all(len(v) == 4 for v in doc["cells"].values())
    doc2 = orbit_to_json(simulate_orbit(Vertical(F(1, 3))))
    assert doc2["cells"] == {}
