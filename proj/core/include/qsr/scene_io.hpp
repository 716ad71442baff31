#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsr/config.hpp"
#include "qsr/extraction.hpp"
#include "qsr/scene.hpp"

namespace qsr {

/// Current scene file schema version.
inline constexpr int kSceneSchemaVersion = 1;

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text. `line` and `column` are 1-based.
class ParseError : public SceneError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : SceneError(what), line_(line), column_(column) {}
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Well-formed text breaking a schema or domain invariant. `path` is a JSON
/// pointer to the offending node.
class ValidationError : public SceneError {
 public:
  ValidationError(const std::string& what, std::string path)
      : SceneError(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  [[nodiscard]] const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class UnitError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public SceneError {
 public:
  using SceneError::SceneError;
};

struct LoadOptions {
  bool strict = true;  ///< reject unknown fields
  double plane_thickness_tau = 0.02;
};

/// Parses and validates a scene document; fits boxes for point clouds and
/// inflates planes to `plane_thickness_tau`.
Scene parse_scene(std::string_view text, const LoadOptions& options = {});
Scene load_scene(const std::filesystem::path& path, const LoadOptions& options = {});

/// Serializes a scene in the same format parse_scene reads.
std::string dump_scene(const Scene& scene);
void save_scene(const Scene& scene, const std::filesystem::path& path);

/// Reads an engine configuration document (JSON object of EngineConfig
/// fields). Unknown keys are rejected.
EngineConfig parse_config(std::string_view text);
EngineConfig load_config(const std::filesystem::path& path);

enum class TripleFormat { Lines, Table };

/// Sorted, deterministic triple output. `Lines` is one JSON record per line.
void write_triples(std::vector<RelationTriple> triples, std::ostream& out, TripleFormat format);
void write_triples(std::vector<RelationTriple> triples, const std::filesystem::path& path,
                   TripleFormat format);

/// Parses the `Lines` format back.
std::vector<RelationTriple> read_triples(std::istream& in);

/// Plane normal classification: floor if |n_z| > cos 15°, wall if
/// |n_z| < sin 15°, otherwise no kind.
std::optional<SurfaceKind> classify_plane(std::span<const Point3> polygon);

}  // namespace qsr
