#pragma once

#include <optional>

#include "qsr/relations.hpp"

namespace qsr {

/// Engine-wide settings. None of these values are physical constants; they
/// are tuning knobs with documented defaults.
struct EngineConfig {
  RelationConfig relations;
  double plane_thickness_tau = 0.02;  ///< meters; walls/floors are inflated to this
  std::optional<double> prune_T;      ///< pair pruning radius; defaults to closeness_T
  bool emit_intrinsic = false;        ///< also emit East/West/North/South in F_o

  [[nodiscard]] double prune_radius() const { return prune_T.value_or(relations.closeness_T); }
  /// Throws ConfigError on any invalid field.
  void validate() const;
};

}  // namespace qsr
