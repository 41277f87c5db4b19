"""Exact periodic billiard orbits in the unit square, their optimal covering
radii, and shortest covering-path planning for a fixed blade radius."""

from .exact import (Point, Rational, Segment, format_rational, frac_part,
                    parse_rational, point_segment_distance,
                    reflect_point_across_horizontal,
                    reflect_point_across_vertical)
from .trajectory import (BouncePoints, Classification, Horizontal, Orbit,
                         SingularTrajectory, Sloped, TrajectorySpec,
                         UnfoldedPoint, Vertical, bounce_points_bottom,
                         build_orbit_by_symmetry, cell_decomposition,
                         classify, orbit_to_json, simulate_orbit,
                         spec_from_json, spec_to_json, unfold_project)
from .covering import (ClassMinimum, CoverReport, ExactRadius, NotCoprime,
                       ParallelogramSpec, class_min_radius, covering_radius,
                       covers, grid_oracle_radius, make_cover_report,
                       parallelogram_cover_radius)
from .planner import (InvalidRadius, NotRepresentable, Plan, RootLength,
                      TrajectoryClass, all_primitive_representations,
                      cornacchia, is_properly_representable, path_length,
                      plan_shortest_cover)
from .render import InvalidOptions, RenderOptions, render_orbit

__version__ = "0.1.0"
