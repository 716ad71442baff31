#include "qsr/halfspaces.hpp"

#include <array>

namespace qsr {

namespace {

constexpr std::array<std::pair<SemiAxis, std::string_view>, 6> kAxisNames{{
    {SemiAxis::XPos, "X+"},
    {SemiAxis::XNeg, "X-"},
    {SemiAxis::YPos, "Y+"},
    {SemiAxis::YNeg, "Y-"},
    {SemiAxis::ZPos, "Z+"},
    {SemiAxis::ZNeg, "Z-"},
}};

void check_scale(double s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("halfspace scale must be finite and positive");
}

// Extents of an aligned box along the frame's X and Y axes.
HalfExtents extents_in_frame(const OrientedBox& box, const FrameOfReference& frame) {
  const double quarters = std::round(signed_angle(relative_yaw(box, frame)) / kHalfPi);
  const bool swapped = static_cast<long>(quarters) % 2 != 0;
  const HalfExtents h = box.half_extents();
  return swapped ? HalfExtents{h.y, h.x, h.z} : h;
}

OrientedBox lateral_region(const OrientedBox& box, const FrameOfReference& frame,
                           HalfExtents h, SemiAxis axis, double s) {
  const bool along_x = axis == SemiAxis::XPos || axis == SemiAxis::XNeg;
  const double sign = (axis == SemiAxis::XPos || axis == SemiAxis::YPos) ? 1.0 : -1.0;
  const double h_axis = along_x ? h.x : h.y;
  const Vec2 dir = along_x ? frame.axis_x() : frame.axis_y();
  // Flush against the face at h_axis, reaching s * (2 h_axis) beyond it.
  const Vec2 c = box.center().xy() + (sign * (h_axis + s * h_axis)) * dir;
  const HalfExtents rh = along_x ? HalfExtents{s * h.x, h.y, h.z} : HalfExtents{h.x, s * h.y, h.z};
  return OrientedBox({c.x, c.y, box.center().z}, rh, frame.yaw);
}

OrientedBox vertical_region(const OrientedBox& box, SemiAxis axis, double s) {
  const HalfExtents h = box.half_extents();
  const double sign = axis == SemiAxis::ZPos ? 1.0 : -1.0;
  Point3 c = box.center();
  c.z += sign * (h.z + s * h.z);
  return OrientedBox(c, {h.x, h.y, s * h.z}, box.yaw());
}

}  // namespace

std::string_view to_string(SemiAxis axis) {
  for (const auto& [a, name] : kAxisNames)
    if (a == axis) return name;
  return "?";
}

std::optional<SemiAxis> semi_axis_from_string(std::string_view name) {
  for (const auto& [a, n] : kAxisNames)
    if (n == name) return a;
  return std::nullopt;
}

const OrientedBox& HalfspaceSet::at(SemiAxis axis) const {
  const auto it = regions.find(axis);
  if (it == regions.end())
    throw std::out_of_range("halfspace " + std::string(to_string(axis)) + " not in set");
  return it->second;
}

bool is_aligned(const OrientedBox& box, const FrameOfReference& frame, double eps) {
  const double rel = signed_angle(relative_yaw(box, frame));
  const double quarters = std::round(rel / kHalfPi);
  return std::abs(rel - quarters * kHalfPi) < eps;
}

HalfspaceSet vertical_halfspaces_of(const OrientedBox& box, double s) {
  check_scale(s);
  HalfspaceSet set{box, intrinsic_frame(box), s, {}};
  set.regions.emplace(SemiAxis::ZPos, vertical_region(box, SemiAxis::ZPos, s));
  set.regions.emplace(SemiAxis::ZNeg, vertical_region(box, SemiAxis::ZNeg, s));
  return set;
}

HalfspaceSet halfspaces_of(const OrientedBox& box, const FrameOfReference& frame, double s) {
  check_scale(s);
  if (!is_aligned(box, frame))
    throw MisalignedBox("box yaw is not a multiple of pi/2 relative to the frame");
  HalfspaceSet set = vertical_halfspaces_of(box, s);
  set.frame = frame;
  const HalfExtents h = extents_in_frame(box, frame);
  for (SemiAxis a : {SemiAxis::XPos, SemiAxis::XNeg, SemiAxis::YPos, SemiAxis::YNeg})
    set.regions.emplace(a, lateral_region(box, frame, h, a, s));
  return set;
}

HalfspaceSet lateral_halfspaces_of_cbb(const OrientedBox& cbb, const FrameOfReference& fc,
                                       double s) {
  check_scale(s);
  if (!is_aligned(cbb, fc))
    throw MisalignedBox("CBB is not aligned with its contextualised frame");
  HalfspaceSet set{cbb, fc, s, {}};
  const HalfExtents h = extents_in_frame(cbb, fc);
  for (SemiAxis a : {SemiAxis::XPos, SemiAxis::XNeg, SemiAxis::YPos, SemiAxis::YNeg})
    set.regions.emplace(a, lateral_region(cbb, fc, h, a, s));
  return set;
}

}  // namespace qsr
