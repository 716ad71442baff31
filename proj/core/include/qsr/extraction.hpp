#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsr/config.hpp"
#include "qsr/scene.hpp"

namespace qsr {

/// Every relation name that can appear in an emitted triple.
enum class RelationName {
  Touches,
  Near,
  Intersects,
  Above,
  Below,
  LeftOf,
  RightOf,
  InFrontOf,
  Behind,
  Beside,
  OnTopOf,
  LeansOn,
  AffixedOn,
  Inside,
  PartIn,
  East,
  West,
  North,
  South,
};

std::string_view to_string(RelationName name);
std::optional<RelationName> relation_from_string(std::string_view name);
std::vector<RelationName> all_relation_names();

enum class FrameNote { Contextualised, Intrinsic, Global, DegenerateViewpoint };

std::string_view to_string(FrameNote note);
std::optional<FrameNote> frame_note_from_string(std::string_view name);

/// One figure-reference statement, e.g. (mug, OnTopOf, desk).
struct RelationTriple {
  std::string figure_id;
  RelationName relation = RelationName::Touches;
  std::string reference_id;
  FrameNote frame = FrameNote::Global;
  std::vector<std::string> audit;  ///< base relations that decided the answer

  friend bool operator==(const RelationTriple&, const RelationTriple&) = default;
};

/// Sorts by (reference, figure, relation name).
void sort_triples(std::vector<RelationTriple>& triples);

/// Walls and floors first, then solids by descending volume; ties by id.
std::vector<const SceneObject*> select_references(const Scene& scene);

struct EvaluatedPair {
  std::string reference_id;
  std::string figure_id;
  friend bool operator==(const EvaluatedPair&, const EvaluatedPair&) = default;
};

struct ExtractionResult {
  std::vector<RelationTriple> triples;  ///< sorted
  std::vector<EvaluatedPair> evaluated;
  std::size_t broad_phase_candidates = 0;
};

/// Evaluates every nearby (distance <= prune radius) figure-reference pair.
/// The figure is always the smaller object or a solid against a plane;
/// plane-plane pairs are skipped.
ExtractionResult extract_qsr_detailed(const Scene& scene, const RobotPose& pose,
                                      const EngineConfig& cfg);

std::vector<RelationTriple> extract_qsr(const Scene& scene, const RobotPose& pose,
                                        const EngineConfig& cfg);

}  // namespace qsr
