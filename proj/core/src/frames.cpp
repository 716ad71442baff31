#include "qsr/frames.hpp"

namespace qsr {

std::string_view to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::Global: return "global";
    case FrameKind::Robot: return "robot";
    case FrameKind::Viewpoint: return "viewpoint";
    case FrameKind::Intrinsic: return "intrinsic";
    case FrameKind::Contextualised: return "contextualised";
  }
  return "unknown";
}

Point3 FrameOfReference::to_local(Point3 p) const {
  const Vec2 d = p.xy() - origin.xy();
  return {dot(d, axis_x()), dot(d, axis_y()), p.z - origin.z};
}

Point3 FrameOfReference::to_global(Point3 local) const {
  const Vec2 g = origin.xy() + local.x * axis_x() + local.y * axis_y();
  return {g.x, g.y, origin.z + local.z};
}

FrameOfReference robot_viewpoint(const RobotPose& pose, Point3 object_centroid) {
  const Vec2 sight = object_centroid.xy() - pose.position.xy();
  if (norm(sight) < kGeomEps)
    throw DegenerateViewpoint("object centroid is vertically collocated with the robot");
  const double alpha = signed_angle(std::atan2(sight.y, sight.x) - pose.heading);
  return {pose.position, normalize_angle(pose.heading + alpha), FrameKind::Viewpoint};
}

FrameOfReference contextualised_frame(const FrameOfReference& viewpoint, Point3 object_centroid) {
  return {object_centroid, viewpoint.yaw, FrameKind::Contextualised};
}

FrameOfReference intrinsic_frame(const OrientedBox& box) {
  return {box.center(), box.yaw(), FrameKind::Intrinsic};
}

double relative_yaw(const OrientedBox& box, const FrameOfReference& frame) {
  return normalize_angle(box.yaw() - frame.yaw);
}

double cbb_rotation(const OrientedBox& min_box, const FrameOfReference& fc) {
  // Remainder of the relative yaw modulo π/2; the four aligning rotations are
  // -r, π/2 - r, -r - π/2 and π - r.
  double r = std::fmod(relative_yaw(min_box, fc), kHalfPi);
  if (r < 0.0) r += kHalfPi;
  const double quarter = 0.5 * kHalfPi;
  if (std::abs(r - quarter) < kGeomEps) return quarter;
  return r < quarter ? -r : kHalfPi - r;
}

OrientedBox build_cbb(const OrientedBox& min_box, const FrameOfReference& fc) {
  if (norm(fc.origin.xy() - min_box.center().xy()) > kGeomEps)
    throw std::invalid_argument("build_cbb: frame origin is not at the box center");
  const double theta = cbb_rotation(min_box, fc);
  const OrientedBox rotated = rotate_box_about_axis(min_box, min_box.center(), theta);
  // Snap the yaw onto the exact multiple of π/2 so later alignment checks see
  // no residue from the rotation arithmetic.
  const double quarters = std::round(signed_angle(rotated.yaw() - fc.yaw) / kHalfPi);
  return OrientedBox(rotated.center(), rotated.half_extents(), fc.yaw + quarters * kHalfPi);
}

ViewFrames view_frames(const OrientedBox& min_box, const RobotPose& pose) {
  ViewFrames out;
  try {
    out.viewpoint = robot_viewpoint(pose, min_box.center());
  } catch (const DegenerateViewpoint&) {
    out.viewpoint = pose.frame();
    out.viewpoint.kind = FrameKind::Viewpoint;
    out.degenerate = true;
  }
  out.contextualised = contextualised_frame(out.viewpoint, min_box.center());
  out.theta = cbb_rotation(min_box, out.contextualised);
  out.cbb = build_cbb(min_box, out.contextualised);
  return out;
}

}  // namespace qsr
