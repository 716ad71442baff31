#pragma once

// Hand-rolled random generators for property tests. Everything is driven by
// an explicit mt19937_64 so failures reproduce from the printed seed.

#include <random>
#include <vector>

#include "qsr/geometry.hpp"
#include "qsr/scene.hpp"

namespace qsr::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

/// Box with half extents in [h_lo, h_hi] and center within `spread` of the
/// origin (z shifted so the box sits above z = 0).
OrientedBox random_box(Rng& rng, double h_lo = 0.05, double h_hi = 1.0, double spread = 2.0);

/// Pair whose intersection is at least `min_share` of the smaller volume.
std::pair<OrientedBox, OrientedBox> random_overlapping_pair(Rng& rng, double min_share = 0.1);
/// Pair at a gap in (0, max_gap].
std::pair<OrientedBox, OrientedBox> random_separated_pair(Rng& rng, double max_gap = 1.0);

std::vector<Vec2> random_cloud_2d(Rng& rng, std::size_t n, double radius = 1.0);
std::vector<Point3> random_points_in(Rng& rng, const OrientedBox& box, std::size_t n);

RobotPose random_pose(Rng& rng, double r_lo = 2.0, double r_hi = 8.0);

/// Floor, optional wall, and a handful of boxes: some stacked, some against
/// the wall (standing or hanging), some free. Boxes for planes are fitted
/// through the scene parser, as a loaded file would be.
Scene random_scene(Rng& rng, std::size_t solids = 5);

/// Runs the scene through dump/parse so every box is fitted the way the
/// loader fits it.
Scene refit(const Scene& scene);

/// One global XY translation + yaw applied to every object and the robot.
Scene rigid_motion(const Scene& scene, Vec2 translation, double yaw);

/// Smallest-area rectangle over a rotation sweep with step `step_rad`.
double swept_min_rect_area(const ConvexPolygon2D& poly, double step_rad);

/// Lower bound on box distance: largest gap between the boxes' projections
/// onto the candidate separating axes (face normals and edge crosses).
double separating_axis_lower_bound(const OrientedBox& a, const OrientedBox& b);

}  // namespace qsr::testing
