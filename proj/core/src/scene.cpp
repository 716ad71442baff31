#include "qsr/scene.hpp"

#include <algorithm>

namespace qsr {

std::string_view to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Solid: return "solid";
    case SurfaceKind::Wall: return "wall";
    case SurfaceKind::Floor: return "floor";
  }
  return "unknown";
}

const SceneObject* Scene::find(std::string_view id) const {
  const auto it = std::find_if(objects.begin(), objects.end(),
                               [id](const SceneObject& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

}  // namespace qsr
