#pragma once

#include <map>
#include <optional>
#include <string_view>

#include "qsr/frames.hpp"
#include "qsr/geometry.hpp"

namespace qsr {

enum class SemiAxis { XPos, XNeg, YPos, YNeg, ZPos, ZNeg };

std::string_view to_string(SemiAxis axis);
std::optional<SemiAxis> semi_axis_from_string(std::string_view name);

class MisalignedBox : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite directional regions extruded from the faces of a box.
///
/// Each region is a prism flush against one face of `source_box`, with that
/// face's cross-section, reaching `scale` times the box's full extent along
/// the semi-axis. Regions never overlap the box or each other.
struct HalfspaceSet {
  OrientedBox source_box;
  FrameOfReference frame;
  double scale = 2.0;
  std::map<SemiAxis, OrientedBox> regions;

  [[nodiscard]] const OrientedBox& at(SemiAxis axis) const;
  [[nodiscard]] bool has(SemiAxis axis) const { return regions.contains(axis); }
};

/// True when the box's yaw is a multiple of π/2 relative to `frame`.
bool is_aligned(const OrientedBox& box, const FrameOfReference& frame, double eps = kGeomEps);

/// All six halfspaces of `box` with lateral axes taken from `frame`.
/// Throws MisalignedBox if the box is not aligned with the frame, and
/// std::invalid_argument for s <= 0.
HalfspaceSet halfspaces_of(const OrientedBox& box, const FrameOfReference& frame, double s);

/// Z+ and Z- only; valid for any yaw.
HalfspaceSet vertical_halfspaces_of(const OrientedBox& box, double s);

/// X+/X-/Y+/Y- of a contextualised bounding box. In F_c, X- is the front
/// (facing the robot), X+ the back, Y+ the left and Y- the right.
HalfspaceSet lateral_halfspaces_of_cbb(const OrientedBox& cbb, const FrameOfReference& fc,
                                       double s);

}  // namespace qsr
