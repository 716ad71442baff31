#include "qsr/scene_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace qsr {

using nlohmann::json;

namespace {

const double kCos15 = std::cos(15.0 * kPi / 180.0);
const double kSin15 = std::sin(15.0 * kPi / 180.0);

std::string join_path(const std::string& base, std::string_view key) {
  return base + "/" + std::string(key);
}
std::string join_path(const std::string& base, std::size_t index) {
  return base + "/" + std::to_string(index);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed,
                bool strict) {
  if (!strict) return;
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ValidationError("unknown field '" + key + "'", join_path(path, key));
  }
}

const json& require(const json& obj, std::string_view key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError("missing field '" + std::string(key) + "'", path);
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError("expected a number", path);
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw UnitError("value is not finite", path);
  return d;
}

Point3 point(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ValidationError("expected [x, y, z]", path);
  return {number(v[0], join_path(path, 0)), number(v[1], join_path(path, 1)),
          number(v[2], join_path(path, 2))};
}

std::vector<Point3> point_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError("expected a list of points", path);
  std::vector<Point3> pts;
  pts.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) pts.push_back(point(v[i], join_path(path, i)));
  return pts;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         e.what(),
                     line, col);
  } catch (const json::out_of_range& e) {
    // numeric literals beyond double range
    throw UnitError(std::string("value is not finite: ") + e.what(), "");
  }
}

Point3 newell_normal(std::span<const Point3> poly) {
  Point3 n;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point3 a = poly[i], b = poly[(i + 1) % poly.size()];
    n.x += (a.y - b.y) * (a.z + b.z);
    n.y += (a.z - b.z) * (a.x + b.x);
    n.z += (a.x - b.x) * (a.y + b.y);
  }
  const double len = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
  return len > 0.0 ? (1.0 / len) * n : Point3{};
}

OrientedBox plane_box(std::span<const Point3> polygon, SurfaceKind kind, double tau) {
  const OrientedBox fitted = fit_min_oriented_box(polygon);
  HalfExtents h = fitted.half_extents();
  const double half_tau = 0.5 * tau;
  if (kind == SurfaceKind::Floor) {
    h.z = std::max(h.z, half_tau);
  } else if (h.x <= h.y) {
    h.x = std::max(h.x, half_tau);
  } else {
    h.y = std::max(h.y, half_tau);
  }
  return OrientedBox(fitted.center(), h, fitted.yaw());
}

std::vector<Label> parse_labels(const json& v, const std::string& path, bool strict) {
  if (!v.is_array()) throw ValidationError("expected a list of labels", path);
  if (v.size() > 5) throw ValidationError("at most 5 labels are allowed", path);
  std::vector<Label> labels;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = join_path(path, i);
    const json& l = v[i];
    if (!l.is_object()) throw ValidationError("expected {label, confidence}", p);
    check_keys(l, p, {"label", "confidence"}, strict);
    const json& name = require(l, "label", p);
    if (!name.is_string()) throw ValidationError("label must be a string", join_path(p, "label"));
    const double conf = number(require(l, "confidence", p), join_path(p, "confidence"));
    if (conf < 0.0 || conf > 1.0)
      throw ValidationError("confidence must lie in [0, 1]", join_path(p, "confidence"));
    if (!labels.empty() && conf > labels.back().confidence)
      throw ValidationError("confidences must be in descending order", join_path(p, "confidence"));
    labels.push_back({name.get<std::string>(), conf});
  }
  return labels;
}

SceneObject parse_object(const json& v, const std::string& path, const LoadOptions& opt) {
  if (!v.is_object()) throw ValidationError("expected an object", path);
  check_keys(v, path, {"id", "labels", "points", "box", "surface"}, opt.strict);
  SceneObject o;
  const json& id = require(v, "id", path);
  if (!id.is_string() || id.get<std::string>().empty())
    throw ValidationError("id must be a non-empty string", join_path(path, "id"));
  o.id = id.get<std::string>();
  if (v.contains("labels")) o.labels = parse_labels(v["labels"], join_path(path, "labels"), opt.strict);

  const int kinds = static_cast<int>(v.contains("points")) + static_cast<int>(v.contains("box")) +
                    static_cast<int>(v.contains("surface"));
  if (kinds != 1)
    throw ValidationError("exactly one of 'points', 'box', 'surface' is required", path);

  if (v.contains("points")) {
    const std::string p = join_path(path, "points");
    o.source = GeometrySource::Points;
    o.points = point_list(v["points"], p);
    if (o.points.empty()) throw ValidationError("point cloud is empty", p);
    o.box = fit_min_oriented_box(o.points);
  } else if (v.contains("box")) {
    const std::string p = join_path(path, "box");
    const json& b = v["box"];
    if (!b.is_object()) throw ValidationError("expected an object", p);
    check_keys(b, p, {"center", "half_extents", "yaw"}, opt.strict);
    const Point3 c = point(require(b, "center", p), join_path(p, "center"));
    const Point3 h = point(require(b, "half_extents", p), join_path(p, "half_extents"));
    const double yaw = b.contains("yaw") ? number(b["yaw"], join_path(p, "yaw")) : 0.0;
    if (!(h.x > 0.0 && h.y > 0.0 && h.z > 0.0))
      throw ValidationError("half extents must be positive", join_path(p, "half_extents"));
    o.source = GeometrySource::Box;
    o.box = OrientedBox(c, {h.x, h.y, h.z}, yaw);
  } else {
    const std::string p = join_path(path, "surface");
    const json& s = v["surface"];
    if (!s.is_object()) throw ValidationError("expected an object", p);
    check_keys(s, p, {"kind", "polygon"}, opt.strict);
    o.source = GeometrySource::Surface;
    o.polygon = point_list(require(s, "polygon", p), join_path(p, "polygon"));
    if (o.polygon.size() < 3)
      throw ValidationError("a surface polygon needs at least 3 vertices", join_path(p, "polygon"));
    const auto kind = classify_plane(o.polygon);
    if (!kind)
      throw ValidationError("plane normal is neither vertical nor horizontal within 15 degrees",
                            join_path(p, "polygon"));
    if (s.contains("kind")) {
      const json& k = s["kind"];
      const std::string declared = k.is_string() ? k.get<std::string>() : "";
      if (declared != "wall" && declared != "floor")
        throw ValidationError("kind must be 'wall' or 'floor'", join_path(p, "kind"));
      if (declared != to_string(*kind))
        throw ValidationError("declared kind '" + declared + "' contradicts the plane normal (" +
                                  std::string(to_string(*kind)) + ")",
                              join_path(p, "kind"));
    }
    // Planarity: every vertex within the plate thickness of the best plane.
    const Point3 n = newell_normal(o.polygon);
    Point3 mean;
    for (const Point3& q : o.polygon) mean = mean + q;
    mean = (1.0 / static_cast<double>(o.polygon.size())) * mean;
    for (std::size_t i = 0; i < o.polygon.size(); ++i) {
      const Point3 d = o.polygon[i] - mean;
      if (std::abs(d.x * n.x + d.y * n.y + d.z * n.z) > opt.plane_thickness_tau)
        throw ValidationError("polygon vertex is off the plane",
                              join_path(join_path(p, "polygon"), i));
    }
    o.surface = *kind;
    o.box = plane_box(o.polygon, *kind, opt.plane_thickness_tau);
  }
  return o;
}

nlohmann::ordered_json point_json(Point3 p) { return nlohmann::ordered_json::array({p.x, p.y, p.z}); }

}  // namespace

std::optional<SurfaceKind> classify_plane(std::span<const Point3> polygon) {
  if (polygon.size() < 3) return std::nullopt;
  const Point3 n = newell_normal(polygon);
  const double nz = std::abs(n.z);
  if (n.x == 0.0 && n.y == 0.0 && n.z == 0.0) return std::nullopt;
  if (nz > kCos15) return SurfaceKind::Floor;
  if (nz < kSin15) return SurfaceKind::Wall;
  return std::nullopt;
}

Scene parse_scene(std::string_view text, const LoadOptions& options) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ValidationError("scene must be a JSON object", "");
  check_keys(doc, "", {"schema_version", "robot", "objects", "frames"}, options.strict);

  const json& version = require(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != kSceneSchemaVersion)
    throw ValidationError("unsupported schema_version (expected " +
                              std::to_string(kSceneSchemaVersion) + ")",
                          "/schema_version");

  Scene scene;
  const json& robot = require(doc, "robot", "");
  if (!robot.is_object()) throw ValidationError("expected an object", "/robot");
  check_keys(robot, "/robot", {"x", "y", "z", "heading"}, options.strict);
  const Point3 pos{number(require(robot, "x", "/robot"), "/robot/x"),
                   number(require(robot, "y", "/robot"), "/robot/y"),
                   robot.contains("z") ? number(robot["z"], "/robot/z") : 0.0};
  scene.robot = RobotPose(pos, number(require(robot, "heading", "/robot"), "/robot/heading"));

  const json& objects = require(doc, "objects", "");
  if (!objects.is_array()) throw ValidationError("expected a list", "/objects");
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string path = join_path(std::string("/objects"), i);
    SceneObject o = parse_object(objects[i], path, options);
    if (!ids.insert(o.id).second)
      throw ValidationError("duplicate id '" + o.id + "'", join_path(path, "id"));
    scene.objects.push_back(std::move(o));
  }
  return scene;
}

Scene load_scene(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str(), options);
}

std::string dump_scene(const Scene& scene) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSceneSchemaVersion;
  doc["robot"] = {{"x", scene.robot.position.x},
                  {"y", scene.robot.position.y},
                  {"z", scene.robot.position.z},
                  {"heading", scene.robot.heading}};
  auto& objects = doc["objects"] = nlohmann::ordered_json::array();
  for (const SceneObject& o : scene.objects) {
    nlohmann::ordered_json j;
    j["id"] = o.id;
    auto& labels = j["labels"] = nlohmann::ordered_json::array();
    for (const Label& l : o.labels) labels.push_back({{"label", l.name}, {"confidence", l.confidence}});
    switch (o.source) {
      case GeometrySource::Points: {
        auto& pts = j["points"] = nlohmann::ordered_json::array();
        for (const Point3& p : o.points) pts.push_back(point_json(p));
        break;
      }
      case GeometrySource::Box: {
        const HalfExtents h = o.box.half_extents();
        j["box"] = {{"center", point_json(o.box.center())},
                    {"half_extents", nlohmann::ordered_json::array({h.x, h.y, h.z})},
                    {"yaw", o.box.yaw()}};
        break;
      }
      case GeometrySource::Surface: {
        nlohmann::ordered_json verts = nlohmann::ordered_json::array();
        for (const Point3& p : o.polygon) verts.push_back(point_json(p));
        j["surface"] = {{"kind", std::string(to_string(o.surface))}, {"polygon", verts}};
        break;
      }
    }
    objects.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << dump_scene(scene);
  if (!out) throw IoError("write failed for " + path.string());
}

void EngineConfig::validate() const {
  relations.validate();
  if (!std::isfinite(plane_thickness_tau) || plane_thickness_tau <= 0.0)
    throw ConfigError("plane_thickness_tau must be finite and positive");
  if (prune_T && (!std::isfinite(*prune_T) || *prune_T <= 0.0))
    throw ConfigError("prune_T must be finite and positive");
}

EngineConfig parse_config(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ValidationError("config must be a JSON object", "");
  check_keys(doc, "",
             {"closeness_T", "touch_eps", "halfspace_scale_s", "containment_tol",
              "adjacency_delta", "plane_thickness_tau", "prune_T", "emit_intrinsic"},
             true);
  EngineConfig cfg;
  auto read = [&](std::string_view key, double& field) {
    if (doc.contains(key)) field = number(doc[std::string(key)], "/" + std::string(key));
  };
  read("closeness_T", cfg.relations.closeness_T);
  read("touch_eps", cfg.relations.touch_eps);
  read("halfspace_scale_s", cfg.relations.halfspace_scale_s);
  read("containment_tol", cfg.relations.containment_tol);
  read("adjacency_delta", cfg.relations.adjacency_delta);
  read("plane_thickness_tau", cfg.plane_thickness_tau);
  if (doc.contains("prune_T")) cfg.prune_T = number(doc["prune_T"], "/prune_T");
  if (doc.contains("emit_intrinsic")) {
    if (!doc["emit_intrinsic"].is_boolean())
      throw ValidationError("expected true or false", "/emit_intrinsic");
    cfg.emit_intrinsic = doc["emit_intrinsic"].get<bool>();
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ValidationError(e.what(), "");
  }
  return cfg;
}

EngineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void write_triples(std::vector<RelationTriple> triples, std::ostream& out, TripleFormat format) {
  sort_triples(triples);
  if (format == TripleFormat::Lines) {
    for (const RelationTriple& t : triples) {
      nlohmann::ordered_json j;
      j["figure"] = t.figure_id;
      j["relation"] = std::string(to_string(t.relation));
      j["reference"] = t.reference_id;
      j["frame"] = std::string(to_string(t.frame));
      j["audit"] = t.audit;
      out << j.dump() << '\n';
    }
    return;
  }

  const std::vector<std::string> header{"FIGURE", "RELATION", "REFERENCE", "FRAME", "AUDIT"};
  std::vector<std::array<std::string, 5>> rows;
  rows.reserve(triples.size());
  for (const RelationTriple& t : triples) {
    std::string audit;
    for (const std::string& a : t.audit) audit += (audit.empty() ? "" : " ") + a;
    rows.push_back({t.figure_id, std::string(to_string(t.relation)), t.reference_id,
                    std::string(to_string(t.frame)), audit});
  }
  std::array<std::size_t, 4> width{};
  for (std::size_t c = 0; c < 4; ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const auto& cells) {
    std::string s;
    for (std::size_t c = 0; c < 4; ++c) {
      s += cells[c];
      s.append(width[c] - cells[c].size() + 2, ' ');
    }
    s += cells[4];
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_triples(std::vector<RelationTriple> triples, const std::filesystem::path& path,
                   TripleFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_triples(std::move(triples), out, format);
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<RelationTriple> read_triples(std::istream& in) {
  std::vector<RelationTriple> out;
  std::string text;
  std::size_t lineno = 0;
  while (std::getline(in, text)) {
    ++lineno;
    if (text.empty()) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), lineno, e.byte);
    }
    const std::string path = "line " + std::to_string(lineno);
    RelationTriple t;
    try {
      t.figure_id = j.at("figure").get<std::string>();
      t.reference_id = j.at("reference").get<std::string>();
      const auto rel = relation_from_string(j.at("relation").get<std::string>());
      const auto frame = frame_note_from_string(j.at("frame").get<std::string>());
      if (!rel) throw ValidationError("unknown relation", path);
      if (!frame) throw ValidationError("unknown frame note", path);
      t.relation = *rel;
      t.frame = *frame;
      t.audit = j.at("audit").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      throw ValidationError(e.what(), path);
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace qsr
