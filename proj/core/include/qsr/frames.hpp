#pragma once

#include <string_view>

#include "qsr/geometry.hpp"

namespace qsr {

enum class FrameKind { Global, Robot, Viewpoint, Intrinsic, Contextualised };

std::string_view to_string(FrameKind kind);

/// Right-handed frame with Z pointing up (against gravity). Only the yaw of
/// the X axis is free; `origin` and `yaw` are expressed in the global frame.
struct FrameOfReference {
  Point3 origin;
  double yaw = 0.0;
  FrameKind kind = FrameKind::Global;

  static FrameOfReference global() { return {}; }

  [[nodiscard]] Vec2 axis_x() const { return {std::cos(yaw), std::sin(yaw)}; }
  [[nodiscard]] Vec2 axis_y() const { return {-std::sin(yaw), std::cos(yaw)}; }
  /// Coordinates of a global point in this frame.
  [[nodiscard]] Point3 to_local(Point3 p) const;
  [[nodiscard]] Point3 to_global(Point3 local) const;
};

struct RobotPose {
  Point3 position;
  double heading = 0.0;  ///< direction of the robot's X axis, [0, 2π)

  RobotPose() = default;
  RobotPose(Point3 p, double h) : position(p), heading(normalize_angle(h)) {}

  [[nodiscard]] FrameOfReference frame() const {
    return {position, heading, FrameKind::Robot};
  }
};

class DegenerateViewpoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The robot frame turned about its vertical axis so that X points at the
/// XY projection of `object_centroid`. Throws DegenerateViewpoint when the
/// robot stands (in XY) on top of the centroid.
FrameOfReference robot_viewpoint(const RobotPose& pose, Point3 object_centroid);

/// Viewpoint orientation carried to the object's centroid.
FrameOfReference contextualised_frame(const FrameOfReference& viewpoint, Point3 object_centroid);

/// Frame of the box itself: origin at its center, X along its local X axis.
FrameOfReference intrinsic_frame(const OrientedBox& box);

/// Angle between the box's X axis and the frame's X axis, in [0, 2π).
double relative_yaw(const OrientedBox& box, const FrameOfReference& frame);

/// Signed rotation of smallest magnitude that makes the box's yaw a multiple
/// of π/2 relative to `fc`. A tie at ±π/4 resolves to +π/4.
double cbb_rotation(const OrientedBox& min_box, const FrameOfReference& fc);

/// Contextualised bounding box: `min_box` rotated about its own vertical
/// axis by cbb_rotation(). Requires fc.origin to sit on the box center (XY).
OrientedBox build_cbb(const OrientedBox& min_box, const FrameOfReference& fc);

/// Viewpoint, contextualised frame and CBB of one object for one robot pose.
struct ViewFrames {
  FrameOfReference viewpoint;
  FrameOfReference contextualised;
  OrientedBox cbb;
  double theta = 0.0;
  /// Robot directly above/below the centroid: the robot frame was used as
  /// the viewpoint.
  bool degenerate = false;
};

ViewFrames view_frames(const OrientedBox& min_box, const RobotPose& pose);

}  // namespace qsr
