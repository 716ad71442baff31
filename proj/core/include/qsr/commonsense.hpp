#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsr/relations.hpp"
#include "qsr/scene.hpp"

namespace qsr {

enum class CommonsenseTag { Beside, OnTopOf, LeansOn, AffixedOn, Inside, PartIn, Near };

std::string_view to_string(CommonsenseTag tag);

/// Answer of a composed predicate plus the base relations that decided it.
struct Judgement {
  bool holds = false;
  std::vector<std::string> audit;

  explicit operator bool() const { return holds; }
};

class NoIntersection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `ctx` is always the view context of the reference object o1. The `scene`
// spans are the candidate supports; o1 and o2 themselves are skipped.

Judgement beside(const SceneObject& o2, const SceneObject& o1, const ViewContext& ctx);
Judgement on_top_of(const SceneObject& o2, const SceneObject& o1, const ViewContext& ctx,
                    const RelationConfig& cfg);
Judgement leans_on(const SceneObject& o2, const SceneObject& o1, const ViewContext& ctx,
                   const RelationConfig& cfg, std::span<const SceneObject> scene);
/// Sufficient-condition reading: may under-report objects that are fixed to
/// o1 but also touch something else.
Judgement affixed_on(const SceneObject& o2, const SceneObject& o1, const ViewContext& ctx,
                     const RelationConfig& cfg, std::span<const SceneObject> scene);
Judgement inside(const SceneObject& o2, const SceneObject& o1, const RelationConfig& cfg);
/// o1 is partially in o2. Throws NoIntersection when the boxes do not overlap.
Judgement part_in(const SceneObject& o1, const SceneObject& o2, const RelationConfig& cfg);
Judgement near(const SceneObject& o1, const SceneObject& o2, const RelationConfig& cfg);

// Frame-based overloads matching the relation signatures; they build the
// reference's view context from `fc`.

Judgement beside(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fc,
                 const RelationConfig& cfg);
Judgement on_top_of(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fc,
                    const RelationConfig& cfg);
Judgement leans_on(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fc,
                   const RelationConfig& cfg, std::span<const SceneObject> scene);
Judgement affixed_on(const SceneObject& o2, const SceneObject& o1, const FrameOfReference& fc,
                     const RelationConfig& cfg, std::span<const SceneObject> scene);

/// Shell-volume stand-in for the count of points adjacent to the
/// intersection region: volume of the grown intersection inside `o`, minus
/// the intersection itself.
struct AdjacencyProxies {
  double first = 0.0;   ///< for o1
  double second = 0.0;  ///< for o2
  double shell_volume = 0.0;
};

AdjacencyProxies adjacency_proxies(const OrientedBox& o1, const OrientedBox& o2,
                                   const RelationConfig& cfg);

}  // namespace qsr
