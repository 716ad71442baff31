#include "qsr/commonsense.hpp"

namespace qsr {

namespace {

std::string fact(std::string_view rel, const SceneObject& a, const SceneObject& b,
                 bool positive = true) {
  std::string s = positive ? "" : "!";
  s.append(rel).append("(").append(a.id).append(",").append(b.id).append(")");
  return s;
}

bool below(const SceneObject& o3, const SceneObject& o2, const RelationConfig& cfg) {
  const HalfspaceSet hs = vertical_halfspaces_of(o2.box, cfg.halfspace_scale_s);
  return intersects(o3.box, hs.at(SemiAxis::ZNeg));
}

bool is_candidate(const SceneObject& o3, const SceneObject& o1, const SceneObject& o2) {
  return o3.id != o1.id && o3.id != o2.id;
}

}  // namespace

std::string_view to_string(CommonsenseTag tag) {
  switch (tag) {
    case CommonsenseTag::Beside: return "Beside";
    case CommonsenseTag::OnTopOf: return "OnTopOf";
    case CommonsenseTag::LeansOn: return "LeansOn";
    case CommonsenseTag::AffixedOn: return "AffixedOn";
    case CommonsenseTag::Inside: return "Inside";
    case CommonsenseTag::PartIn: return "PartIn";
    case CommonsenseTag::Near: return "Near";
  }
  return "?";
}

Judgement beside(const SceneObject& o2, const SceneObject& o1, const ViewContext& ctx) {
  Judgement j;
  const bool right = directional_fc(o2.box, ctx, ViewRelation::RightOf);
  const bool left = directional_fc(o2.box, ctx, ViewRelation::LeftOf);
  j.holds = right || left;
  if (right) j.audit.push_back(fact("RightOf", o2, o1));
  if (left) j.audit.push_back(fact("LeftOf", o2, o1));
  if (!j.holds) {
    j.audit.push_back(fact("RightOf", o2, o1, false));
    j.audit.push_back(fact("LeftOf", o2, o1, false));
  }
  return j;
}

Judgement on_top_of(const SceneObject& o2, const SceneObject& o1, const ViewContext& ctx,
                    const RelationConfig& cfg) {
  Judgement j;
  const bool above = directional_fc(o2.box, ctx, ViewRelation::Above);
  const bool touching = touches(o2, o1, cfg);
  j.holds = above && touching;
  j.audit = {fact("Above", o2, o1, above), fact("Touches", o2, o1, touching)};
  return j;
}

Judgement leans_on(const SceneObject& o2, const SceneObject& o1, const ViewContext& ctx,
                   const RelationConfig& cfg, std::span<const SceneObject> scene) {
  Judgement j;
  const bool touching = touches(o2, o1, cfg);
  const bool above = directional_fc(o2.box, ctx, ViewRelation::Above);
  const bool beneath = directional_fc(o2.box, ctx, ViewRelation::Below);
  j.audit = {fact("Touches", o2, o1, touching), fact("Above", o2, o1, above),
             fact("Below", o2, o1, beneath)};
  if (!touching || above || beneath) return j;
  for (const SceneObject& o3 : scene) {
    if (!is_candidate(o3, o1, o2)) continue;
    if (touches(o2, o3, cfg) && below(o3, o2, cfg)) {
      j.audit.push_back(fact("Touches", o2, o3));
      j.audit.push_back(fact("Below", o3, o2));
      j.holds = true;
      return j;
    }
  }
  j.audit.push_back("no-support-below");
  return j;
}

Judgement affixed_on(const SceneObject& o2, const SceneObject& o1, const ViewContext& ctx,
                     const RelationConfig& cfg, std::span<const SceneObject> scene) {
  Judgement j;
  const bool touching = touches(o2, o1, cfg);
  const bool above = directional_fc(o2.box, ctx, ViewRelation::Above);
  j.audit = {fact("Touches", o2, o1, touching), fact("Above", o2, o1, above)};
  if (!touching || above) return j;
  for (const SceneObject& o3 : scene) {
    if (!is_candidate(o3, o1, o2)) continue;
    if (touches(o3, o2, cfg)) {
      j.audit.push_back(fact("Touches", o3, o2));
      return j;
    }
  }
  j.audit.push_back("no-other-contact");
  j.audit.push_back("one-way-rule");
  j.holds = true;
  return j;
}

Judgement inside(const SceneObject& o2, const SceneObject& o1, const RelationConfig& cfg) {
  Judgement j;
  j.holds = completely_contains(o1, o2, cfg);
  j.audit = {fact("ComplCont", o1, o2, j.holds)};
  return j;
}

AdjacencyProxies adjacency_proxies(const OrientedBox& o1, const OrientedBox& o2,
                                   const RelationConfig& cfg) {
  const ConvexPrism inter = intersection_region(o1, o2);
  if (inter.volume() <= kVolumeEps) throw NoIntersection("PartIn: objects do not intersect");
  const ConvexPrism shell = inter.scaled(1.0 + cfg.adjacency_delta);
  auto proxy = [&](const OrientedBox& o) {
    const ConvexPrism solid = o.to_prism();
    return intersect(shell, solid).volume() - intersect(inter, solid).volume();
  };
  return {proxy(o1), proxy(o2), shell.volume()};
}

Judgement part_in(const SceneObject& o1, const SceneObject& o2, const RelationConfig& cfg) {
  const AdjacencyProxies p = adjacency_proxies(o1.box, o2.box, cfg);
  // Differences at rounding level count as a tie, and a tie is not strict.
  const double tie = 1e-9 * p.shell_volume;
  Judgement j;
  j.holds = p.first < p.second - tie;
  j.audit = {fact("Int", o1, o2),
             "adj(" + o1.id + ")" + (j.holds ? "<" : ">=") + "adj(" + o2.id + ")"};
  return j;
}

Judgement near(const SceneObject& o1, const SceneObject& o2, const RelationConfig& cfg) {
  Judgement j;
  j.holds = is_close(o1, o2, cfg);
  j.audit = {fact("IsClose", o1, o2, j.holds)};
  return j;
}

Judgement beside(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fc,
                 const RelationConfig& cfg) {
  return beside(o2, o1, make_view_context(o1.box, fc, cfg));
}
Judgement on_top_of(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fc,
                    const RelationConfig& cfg) {
  return on_top_of(o2, o1, make_view_context(o1.box, fc, cfg), cfg);
}
Judgement leans_on(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fc,
                   const RelationConfig& cfg, std::span<const SceneObject> scene) {
  return leans_on(o2, o1, make_view_context(o1.box, fc, cfg), cfg, scene);
}
Judgement affixed_on(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fc,
                     const RelationConfig& cfg, std::span<const SceneObject> scene) {
  return affixed_on(o2, o1, make_view_context(o1.box, fc, cfg), cfg, scene);
}

}  // namespace qsr
