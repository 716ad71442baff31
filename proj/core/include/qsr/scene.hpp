#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsr/frames.hpp"
#include "qsr/geometry.hpp"

namespace qsr {

enum class SurfaceKind { Solid, Wall, Floor };

std::string_view to_string(SurfaceKind kind);

struct Label {
  std::string name;
  double confidence = 0.0;
  friend bool operator==(const Label&, const Label&) = default;
};

/// How the object's geometry was declared in the scene file.
enum class GeometrySource { Box, Points, Surface };

/// A labeled spatial object. Walls and floors are objects too, carrying
/// their polygon and a box inflated to the plane thickness.
struct SceneObject {
  std::string id;
  std::vector<Label> labels;  ///< at most 5, confidence descending
  GeometrySource source = GeometrySource::Box;
  std::vector<Point3> points;   ///< raw cloud when source == Points
  std::vector<Point3> polygon;  ///< plane outline when source == Surface
  SurfaceKind surface = SurfaceKind::Solid;
  OrientedBox box;              ///< minimum oriented box, global frame

  [[nodiscard]] bool is_plane() const { return surface != SurfaceKind::Solid; }
};

struct Scene {
  RobotPose robot;
  std::vector<SceneObject> objects;

  [[nodiscard]] const SceneObject* find(std::string_view id) const;
};

}  // namespace qsr
