#pragma once

// Brute-force reference evaluation by point sampling. Nothing in here calls
// the analytic geometry (distances, clipping, halfspaces, CBB); regions are
// rebuilt from box parameters with plain coordinate inequalities.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qsr/config.hpp"
#include "qsr/extraction.hpp"
#include "qsr/scene.hpp"

namespace qsr::oracle {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::size_t kMinSamples = 10000;

/// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);

/// Box as a yaw frame plus per-axis bounds in that frame.
struct Region {
  Point3 origin;
  double yaw = 0.0;
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  // cos/sin of `yaw`, refreshed whenever `yaw` changes
  mutable double trig_yaw = std::numeric_limits<double>::quiet_NaN();
  mutable double cos_yaw = 1.0, sin_yaw = 0.0;

  static Region of(const OrientedBox& box);

  [[nodiscard]] Point3 to_local(Point3 p) const;
  [[nodiscard]] Point3 to_global(Point3 local) const;
  [[nodiscard]] bool contains(Point3 p) const;
  /// Smallest slack to a face; positive inside, negative outside.
  [[nodiscard]] double depth(Point3 p) const;
  /// Euclidean distance to the region, 0 inside.
  [[nodiscard]] double outside_distance(Point3 p) const;
  [[nodiscard]] Point3 project(Point3 p) const;
  [[nodiscard]] double volume() const;
  [[nodiscard]] std::array<Point3, 8> corners() const;
  [[nodiscard]] Point3 sample(std::mt19937_64& rng) const;
  [[nodiscard]] Point3 sample_surface(std::mt19937_64& rng) const;
};

/// N uniform samples of a region, drawn with per-axis uniform draws in the
/// region's own frame.
struct SampledRegion {
  Region source;
  std::vector<Point3> samples;
  std::uint64_t seed = kDefaultSeed;

  SampledRegion(const Region& region, std::size_t n, std::uint64_t seed);
  /// Membership recheck of every sample against the source.
  [[nodiscard]] bool verify() const;
};

/// Halfspace regions, built literally from coordinate inequalities.
Region vertical_region(const OrientedBox& box, bool up, double s);
/// Lateral region of the CBB of `box` in the contextualised frame at
/// `fc_yaw`, or of `box` itself in its intrinsic frame when `fc_yaw` is
/// empty. `axis` is 0 for X, 1 for Y; `positive` picks the side.
Region lateral_region(const OrientedBox& box, std::optional<double> fc_yaw, int axis, bool positive,
                      double s);
/// Viewpoint yaw towards `target` (robot heading when collocated in XY).
double viewpoint_yaw(const RobotPose& pose, Point3 target);

/// Minimum distance over `n` surface samples of each box to the other box.
/// An upper bound on the true distance.
double sampled_distance(const OrientedBox& a, const OrientedBox& b, std::size_t n,
                        std::uint64_t seed);
/// Monte-Carlo estimate of vol(a ∩ b).
double monte_carlo_intersection_volume(const OrientedBox& a, const OrientedBox& b, std::size_t n,
                                       std::uint64_t seed);

struct OracleAnswer {
  bool holds = false;
  double margin = 0.0;  ///< distance to the decision threshold
  double band = 0.0;    ///< margins at or below this are inconclusive

  [[nodiscard]] bool decisive() const { return margin > band; }
};

/// Relations evaluated against (figure, reference). East/West/North/South
/// honour `strictness`; the others ignore it.
struct Query {
  RelationName relation = RelationName::Touches;
  Strictness strictness = Strictness::Relaxed;
};

std::string to_string(const Query& q);
/// Every relation and, for the intrinsic cardinals, both strictness levels.
std::vector<Query> all_queries();

/// Evaluates one relation by sampling. `scene` supplies third objects for
/// LeansOn/AffixedOn. Throws std::invalid_argument when n < kMinSamples.
OracleAnswer oracle_relation(const SceneObject& figure, const SceneObject& reference,
                             const Query& query, const RobotPose& pose, const EngineConfig& cfg,
                             std::size_t n, std::uint64_t seed,
                             std::span<const SceneObject> scene = {});

/// The analytic engine's answer for the same query. Empty for PartIn when the
/// objects do not intersect (the relation is undefined there).
std::optional<bool> engine_relation(const SceneObject& figure, const SceneObject& reference,
                                    const Query& query, const RobotPose& pose,
                                    const EngineConfig& cfg,
                                    std::span<const SceneObject> scene = {});

/// Two-object scene drawn from a mix of separated, face-touching, stacked,
/// overlapping, nested and floor-supported configurations.
Scene random_pair_scene(std::mt19937_64& rng);

struct CheckRecord {
  std::size_t scene = 0;
  std::string figure;
  std::string reference;
  std::string query;
  bool engine = false;
  bool oracle = false;
  double margin = 0.0;
  double band = 0.0;
};

struct AgreementReport {
  std::uint64_t seed = kDefaultSeed;
  std::size_t scenes = 0;
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t agreements = 0;
  std::size_t inconclusive = 0;  ///< in-band checks, agreeing or not
  std::vector<CheckRecord> in_band_disagreements;
  std::vector<CheckRecord> out_of_band_disagreements;
  double seconds = 0.0;

  [[nodiscard]] bool passed() const { return out_of_band_disagreements.empty(); }
  [[nodiscard]] std::string to_json() const;
};

struct AgreementOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::vector<RelationName> relations;  ///< empty: all
};

/// Compares engine and oracle on every ordered (solid figure, reference)
/// pair of every scene.
AgreementReport check_agreement(std::span<const Scene> scenes, const EngineConfig& cfg,
                                const AgreementOptions& options);

/// `count` scenes from random_pair_scene seeded with `seed`.
std::vector<Scene> random_pair_scenes(std::size_t count, std::uint64_t seed);

}  // namespace qsr::oracle
