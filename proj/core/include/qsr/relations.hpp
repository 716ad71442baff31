#pragma once

#include <string_view>

#include "qsr/frames.hpp"
#include "qsr/geometry.hpp"
#include "qsr/halfspaces.hpp"
#include "qsr/scene.hpp"

namespace qsr {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RelationConfig {
  double closeness_T = 0.5;        ///< meters
  double touch_eps = 0.01;         ///< meters; stands in for the frame granularity
  double halfspace_scale_s = 2.0;
  double containment_tol = 1e-3;   ///< relative
  double adjacency_delta = 0.02;   ///< relative growth of the PartIn shell

  /// Throws ConfigError unless every field is finite and positive and
  /// closeness_T >= touch_eps.
  void validate() const;
};

enum class Cardinal { East, West, North, South, Above, Below };
enum class Strictness { Strict, Relaxed };
enum class ViewRelation { Above, Below, LeftOf, RightOf, InFrontOf, Behind };

std::string_view to_string(Cardinal c);
std::string_view to_string(ViewRelation r);
SemiAxis semi_axis_of(Cardinal c);
SemiAxis semi_axis_of(ViewRelation r);

// Box-level relations. Figure/reference order follows the relation: in
// directional and containment relations the second box is the reference.

double object_distance(const OrientedBox& a, const OrientedBox& b);
bool is_close(const OrientedBox& a, const OrientedBox& b, const RelationConfig& cfg);
/// Overlapping boxes touch as well (distance 0).
bool touches(const OrientedBox& a, const OrientedBox& b, const RelationConfig& cfg);
bool intersects(const OrientedBox& a, const OrientedBox& b);
ConvexPrism intersection_region(const OrientedBox& a, const OrientedBox& b);
/// `container` holds all of `contained`, up to cfg.containment_tol of its volume.
bool completely_contains(const OrientedBox& container, const OrientedBox& contained,
                         const RelationConfig& cfg);

/// Cardinal relation of `figure` w.r.t. `reference` in the reference's
/// intrinsic frame `fo`. Relaxed: the figure intersects the tagged
/// halfspace; strict: the halfspace completely contains the figure.
bool directional_fo(const OrientedBox& figure, const OrientedBox& reference,
                    const FrameOfReference& fo, Cardinal tag, Strictness strictness,
                    const RelationConfig& cfg);

/// Everything needed to evaluate viewpoint relations against one reference
/// for one robot pose.
struct ViewContext {
  ViewFrames frames;
  HalfspaceSet vertical;  ///< Z+/Z- of the minimum box
  HalfspaceSet lateral;   ///< X+/X-/Y+/Y- of the CBB

  [[nodiscard]] const OrientedBox& region(ViewRelation r) const;
};

ViewContext make_view_context(const OrientedBox& reference, const RobotPose& pose,
                              const RelationConfig& cfg);
/// Context for an already-built contextualised frame of `reference`.
ViewContext make_view_context(const OrientedBox& reference, const FrameOfReference& fc,
                              const RelationConfig& cfg);

/// Relaxed viewpoint relation. Above/Below come from the minimum box,
/// the lateral relations from the contextualised bounding box.
bool directional_fc(const OrientedBox& figure, const ViewContext& ctx, ViewRelation tag);

// SceneObject forms, evaluated on the objects' fitted boxes.

double object_distance(const SceneObject& o1, const SceneObject& o2);
bool is_close(const SceneObject& o1, const SceneObject& o2, const RelationConfig& cfg);
bool touches(const SceneObject& o1, const SceneObject& o2, const RelationConfig& cfg);
bool intersects(const SceneObject& o1, const SceneObject& o2);
ConvexPrism intersection_region(const SceneObject& o1, const SceneObject& o2);
bool completely_contains(const SceneObject& o1, const SceneObject& o2, const RelationConfig& cfg);
bool directional_fo(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fo,
                    Cardinal tag, Strictness strictness, const RelationConfig& cfg);
/// `fc` must be the contextualised frame of o1 for some robot pose.
bool directional_fc(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fc,
                    ViewRelation tag, const RelationConfig& cfg);

}  // namespace qsr
