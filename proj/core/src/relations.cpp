#include "qsr/relations.hpp"

#include <algorithm>

namespace qsr {

void RelationConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(closeness_T)) throw ConfigError("closeness_T must be finite and positive");
  if (!positive(touch_eps)) throw ConfigError("touch_eps must be finite and positive");
  if (!positive(halfspace_scale_s))
    throw ConfigError("halfspace_scale_s must be finite and positive");
  if (!positive(containment_tol) || containment_tol >= 1.0)
    throw ConfigError("containment_tol must lie in (0, 1)");
  if (!positive(adjacency_delta)) throw ConfigError("adjacency_delta must be finite and positive");
  if (closeness_T < touch_eps) throw ConfigError("closeness_T must be >= touch_eps");
}

std::string_view to_string(Cardinal c) {
  switch (c) {
    case Cardinal::East: return "East";
    case Cardinal::West: return "West";
    case Cardinal::North: return "North";
    case Cardinal::South: return "South";
    case Cardinal::Above: return "Above";
    case Cardinal::Below: return "Below";
  }
  return "?";
}

std::string_view to_string(ViewRelation r) {
  switch (r) {
    case ViewRelation::Above: return "Above";
    case ViewRelation::Below: return "Below";
    case ViewRelation::LeftOf: return "LeftOf";
    case ViewRelation::RightOf: return "RightOf";
    case ViewRelation::InFrontOf: return "InFrontOf";
    case ViewRelation::Behind: return "Behind";
  }
  return "?";
}

SemiAxis semi_axis_of(Cardinal c) {
  switch (c) {
    case Cardinal::East: return SemiAxis::XPos;
    case Cardinal::West: return SemiAxis::XNeg;
    case Cardinal::North: return SemiAxis::YPos;
    case Cardinal::South: return SemiAxis::YNeg;
    case Cardinal::Above: return SemiAxis::ZPos;
    case Cardinal::Below: return SemiAxis::ZNeg;
  }
  return SemiAxis::XPos;
}

SemiAxis semi_axis_of(ViewRelation r) {
  switch (r) {
    case ViewRelation::Above: return SemiAxis::ZPos;
    case ViewRelation::Below: return SemiAxis::ZNeg;
    case ViewRelation::LeftOf: return SemiAxis::YPos;
    case ViewRelation::RightOf: return SemiAxis::YNeg;
    case ViewRelation::InFrontOf: return SemiAxis::XNeg;
    case ViewRelation::Behind: return SemiAxis::XPos;
  }
  return SemiAxis::XPos;
}

double object_distance(const OrientedBox& a, const OrientedBox& b) { return box_distance(a, b); }

bool is_close(const OrientedBox& a, const OrientedBox& b, const RelationConfig& cfg) {
  return object_distance(a, b) <= cfg.closeness_T;
}

bool touches(const OrientedBox& a, const OrientedBox& b, const RelationConfig& cfg) {
  return object_distance(a, b) <= cfg.touch_eps;
}

bool intersects(const OrientedBox& a, const OrientedBox& b) {
  return box_intersection_volume(a, b) > kVolumeEps;
}

ConvexPrism intersection_region(const OrientedBox& a, const OrientedBox& b) {
  return box_intersection(a, b);
}

bool completely_contains(const OrientedBox& container, const OrientedBox& contained,
                         const RelationConfig& cfg) {
  return box_intersection_volume(container, contained) >=
         (1.0 - cfg.containment_tol) * contained.volume();
}

bool directional_fo(const OrientedBox& figure, const OrientedBox& reference,
                    const FrameOfReference& fo, Cardinal tag, Strictness strictness,
                    const RelationConfig& cfg) {
  const SemiAxis axis = semi_axis_of(tag);
  const HalfspaceSet hs = (axis == SemiAxis::ZPos || axis == SemiAxis::ZNeg)
                              ? vertical_halfspaces_of(reference, cfg.halfspace_scale_s)
                              : halfspaces_of(reference, fo, cfg.halfspace_scale_s);
  const OrientedBox& region = hs.at(axis);
  return strictness == Strictness::Strict ? completely_contains(region, figure, cfg)
                                          : intersects(figure, region);
}

const OrientedBox& ViewContext::region(ViewRelation r) const {
  const SemiAxis axis = semi_axis_of(r);
  return (r == ViewRelation::Above || r == ViewRelation::Below) ? vertical.at(axis)
                                                                : lateral.at(axis);
}

ViewContext make_view_context(const OrientedBox& reference, const RobotPose& pose,
                              const RelationConfig& cfg) {
  ViewContext ctx;
  ctx.frames = view_frames(reference, pose);
  ctx.vertical = vertical_halfspaces_of(reference, cfg.halfspace_scale_s);
  ctx.lateral = lateral_halfspaces_of_cbb(ctx.frames.cbb, ctx.frames.contextualised,
                                          cfg.halfspace_scale_s);
  return ctx;
}

ViewContext make_view_context(const OrientedBox& reference, const FrameOfReference& fc,
                              const RelationConfig& cfg) {
  ViewContext ctx;
  ctx.frames.viewpoint = {fc.origin, fc.yaw, FrameKind::Viewpoint};
  ctx.frames.contextualised = fc;
  ctx.frames.theta = cbb_rotation(reference, fc);
  ctx.frames.cbb = build_cbb(reference, fc);
  ctx.vertical = vertical_halfspaces_of(reference, cfg.halfspace_scale_s);
  ctx.lateral = lateral_halfspaces_of_cbb(ctx.frames.cbb, fc, cfg.halfspace_scale_s);
  return ctx;
}

bool directional_fc(const OrientedBox& figure, const ViewContext& ctx, ViewRelation tag) {
  return intersects(figure, ctx.region(tag));
}

double object_distance(const SceneObject& o1, const SceneObject& o2) {
  return object_distance(o1.box, o2.box);
}
bool is_close(const SceneObject& o1, const SceneObject& o2, const RelationConfig& cfg) {
  return is_close(o1.box, o2.box, cfg);
}
bool touches(const SceneObject& o1, const SceneObject& o2, const RelationConfig& cfg) {
  return touches(o1.box, o2.box, cfg);
}
bool intersects(const SceneObject& o1, const SceneObject& o2) { return intersects(o1.box, o2.box); }
ConvexPrism intersection_region(const SceneObject& o1, const SceneObject& o2) {
  return intersection_region(o1.box, o2.box);
}
bool completely_contains(const SceneObject& o1, const SceneObject& o2, const RelationConfig& cfg) {
  return completely_contains(o1.box, o2.box, cfg);
}
bool directional_fo(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fo,
                    Cardinal tag, Strictness strictness, const RelationConfig& cfg) {
  return directional_fo(o2.box, o1.box, fo, tag, strictness, cfg);
}
bool directional_fc(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fc,
                    ViewRelation tag, const RelationConfig& cfg) {
  return directional_fc(o2.box, make_view_context(o1.box, fc, cfg), tag);
}

}  // namespace qsr
