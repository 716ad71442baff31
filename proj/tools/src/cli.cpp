#include "qsr_tools/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsr/extraction.hpp"
#include "qsr/halfspaces.hpp"
#include "qsr/oracle.hpp"
#include "qsr/scene_io.hpp"

namespace qsr::cli {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

/// Bad flag values that CLI11 cannot catch on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<double> s, T, touch_eps;
};

struct Options {
  std::string scene;
  std::string config;
  std::string out;
  std::string format = "lines";
  std::vector<std::string> relations;
  Overrides overrides;
  std::uint64_t seed = oracle::kDefaultSeed;
  std::size_t samples = 100000;
  std::string scenes = "random";
  std::size_t n = 200;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--s", o.s, "Halfspace depth as a multiple of the box extent")->envname("QSR_S");
  cmd->add_option("--T", o.T, "Closeness threshold in meters (Near)")->envname("QSR_T");
  cmd->add_option("--touch-eps", o.touch_eps, "Contact tolerance in meters (Touches)")
      ->envname("QSR_TOUCH_EPS");
}

void add_config(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "Engine configuration file (JSON)")
      ->envname("QSR_CONFIG")
      ->check(CLI::ExistingFile);
}

EngineConfig engine_config(const Options& o) {
  EngineConfig cfg = o.config.empty() ? EngineConfig{} : load_config(o.config);
  if (o.overrides.s) cfg.relations.halfspace_scale_s = *o.overrides.s;
  if (o.overrides.T) cfg.relations.closeness_T = *o.overrides.T;
  if (o.overrides.touch_eps) cfg.relations.touch_eps = *o.overrides.touch_eps;
  cfg.validate();
  return cfg;
}

LoadOptions load_options(const EngineConfig& cfg) {
  LoadOptions opt;
  opt.plane_thickness_tau = cfg.plane_thickness_tau;
  return opt;
}

std::vector<RelationName> relation_filter(const std::vector<std::string>& names) {
  std::vector<RelationName> out;
  for (const std::string& n : names) {
    const auto r = relation_from_string(n);
    if (!r) throw UsageError("unknown relation '" + n + "'");
    out.push_back(*r);
  }
  return out;
}

// Writes to --out when given, else to `out`.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write " + path);
  write(file);
  if (!file) throw IoError("write failed for " + path);
}

ordered_json box_json(const OrientedBox& b) {
  const HalfExtents h = b.half_extents();
  const Point3 c = b.center();
  return {{"center", {c.x, c.y, c.z}}, {"half_extents", {h.x, h.y, h.z}}, {"yaw", b.yaw()}};
}

ordered_json frame_json(const FrameOfReference& f) {
  return {{"origin", {f.origin.x, f.origin.y, f.origin.z}}, {"yaw", f.yaw}};
}

ordered_json regions_json(const HalfspaceSet& set) {
  ordered_json j = ordered_json::object();
  for (const auto& [axis, box] : set.regions) j[std::string(to_string(axis))] = box_json(box);
  return j;
}

int cmd_extract(const Options& o, std::ostream& out, std::ostream& err) {
  const EngineConfig cfg = engine_config(o);
  const Scene scene = load_scene(o.scene, load_options(cfg));
  const auto keep = relation_filter(o.relations);
  std::vector<RelationTriple> triples = extract_qsr(scene, scene.robot, cfg);
  if (!keep.empty()) {
    std::erase_if(triples, [&](const RelationTriple& t) {
      return std::find(keep.begin(), keep.end(), t.relation) == keep.end();
    });
  }
  const TripleFormat format = o.format == "table" ? TripleFormat::Table : TripleFormat::Lines;
  emit(o.out, out, [&](std::ostream& s) { write_triples(triples, s, format); });
  if (!o.out.empty())
    err << ordered_json{{"status", "ok"}, {"triples", triples.size()}, {"out", o.out}}.dump()
        << '\n';
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const EngineConfig cfg = engine_config(o);
  const Scene scene = load_scene(o.scene, load_options(cfg));
  const auto planes = std::count_if(scene.objects.begin(), scene.objects.end(),
                                    [](const SceneObject& ob) { return ob.is_plane(); });
  out << ordered_json{{"status", "valid"},
                      {"objects", scene.objects.size()},
                      {"planes", planes}}
             .dump()
      << '\n';
  return kOk;
}

int cmd_frames(const Options& o, std::ostream& out) {
  const EngineConfig cfg = engine_config(o);
  const Scene scene = load_scene(o.scene, load_options(cfg));
  const double s = cfg.relations.halfspace_scale_s;
  ordered_json doc = ordered_json::parse(dump_scene(scene));
  ordered_json frames = ordered_json::array();
  for (const SceneObject& ob : scene.objects) {
    const ViewFrames vf = view_frames(ob.box, scene.robot);
    const FrameOfReference fo = intrinsic_frame(ob.box);
    frames.push_back({
        {"object", ob.id},
        {"degenerate_viewpoint", vf.degenerate},
        {"viewpoint", frame_json(vf.viewpoint)},
        {"contextualised", frame_json(vf.contextualised)},
        {"intrinsic", frame_json(fo)},
        {"theta", vf.theta + 0.0},  // no negative zero in the dump
        {"min_box", box_json(ob.box)},
        {"cbb", box_json(vf.cbb)},
        {"halfspaces",
         {{"min_box", regions_json(vertical_halfspaces_of(ob.box, s))},
          {"cbb", regions_json(lateral_halfspaces_of_cbb(vf.cbb, vf.contextualised, s))},
          {"intrinsic", regions_json(halfspaces_of(ob.box, fo, s))}}},
    });
  }
  doc["frames"] = std::move(frames);
  emit(o.out, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return kOk;
}

std::vector<Scene> scenes_from(const Options& o, const EngineConfig& cfg) {
  if (o.scenes == "random") return oracle::random_pair_scenes(o.n, o.seed);
  const fs::path p(o.scenes);
  if (!fs::exists(p)) throw UsageError("--scenes: no such file or directory: " + o.scenes);
  std::vector<fs::path> files;
  if (fs::is_directory(p)) {
    for (const auto& e : fs::directory_iterator(p))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(p);
  }
  std::vector<Scene> out;
  for (const fs::path& f : files) out.push_back(load_scene(f, load_options(cfg)));
  return out;
}

int cmd_oracle_check(const Options& o, std::ostream& out, std::ostream& err) {
  const EngineConfig cfg = engine_config(o);
  if (o.samples < oracle::kMinSamples)
    throw UsageError("--samples must be at least " + std::to_string(oracle::kMinSamples));
  const std::vector<Scene> scenes = scenes_from(o, cfg);
  oracle::AgreementOptions opt;
  opt.samples = o.samples;
  opt.seed = o.seed;
  opt.relations = relation_filter(o.relations);
  const oracle::AgreementReport report = oracle::check_agreement(scenes, cfg, opt);
  emit(o.out, out, [&](std::ostream& s) { s << report.to_json(); });
  err << ordered_json{{"status", report.passed() ? "agree" : "disagree"},
                      {"checks", report.checks},
                      {"out_of_band", report.out_of_band_disagreements.size()},
                      {"in_band", report.in_band_disagreements.size()}}
             .dump()
      << '\n';
  return report.passed() ? kOk : kValidationFailure;
}

void diagnose(std::ostream& err, std::string_view kind, const std::string& message,
              ordered_json extra = ordered_json::object()) {
  ordered_json j{{"error", kind}, {"message", message}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  err << j.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qualitative spatial relations from labeled 3D scenes", "qsr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");
  Options o;

  auto* extract = app.add_subcommand("extract", "Extract relation triples from a scene");
  extract->add_option("--scene", o.scene, "Scene file (JSON)")->required()->check(CLI::ExistingFile);
  add_config(extract, o);
  extract->add_option("--out", o.out, "Output file (default: standard output)");
  extract->add_option("--format", o.format, "Triple output format")
      ->check(CLI::IsMember({"lines", "table"}))
      ->envname("QSR_FORMAT");
  extract->add_option("--relations", o.relations, "Only emit these relation names")
      ->delimiter(',');
  add_overrides(extract, o.overrides);

  auto* validate = app.add_subcommand("validate", "Check a scene file and report problems");
  validate->add_option("--scene", o.scene, "Scene file (JSON)")->required()->check(CLI::ExistingFile);
  add_config(validate, o);

  auto* frames = app.add_subcommand(
      "frames", "Dump viewpoint, contextualised frame, CBB and halfspace boxes per object");
  frames->add_option("--scene", o.scene, "Scene file (JSON)")->required()->check(CLI::ExistingFile);
  add_config(frames, o);
  frames->add_option("--out", o.out, "Output file (default: standard output)");
  frames->add_option("--s", o.overrides.s, "Halfspace depth as a multiple of the box extent")
      ->envname("QSR_S");

  auto* check = app.add_subcommand("oracle-check", "Compare the engine with the sampling oracle");
  check->add_option("--scenes", o.scenes, "'random', a scene file, or a directory of scenes");
  check->add_option("--n", o.n, "Number of random scenes")->check(CLI::PositiveNumber);
  check->add_option("--seed", o.seed, "Seed for scene generation and sampling")->envname("QSR_SEED");
  check->add_option("--samples", o.samples, "Samples per region (at least 10000)")
      ->envname("QSR_SAMPLES");
  check->add_option("--relations", o.relations, "Only check these relation names")->delimiter(',');
  check->add_option("--out", o.out, "Report file (default: standard output)");
  add_config(check, o);
  add_overrides(check, o.overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    diagnose(err, "UsageError", e.what());
    return kValidationFailure;
  }

  try {
    if (*extract) return cmd_extract(o, out, err);
    if (*validate) return cmd_validate(o, out);
    if (*frames) return cmd_frames(o, out);
    if (*check) return cmd_oracle_check(o, out, err);
    return kInternalError;
  } catch (const ParseError& e) {
    diagnose(err, "ParseError", e.what(), {{"line", e.line()}, {"column", e.column()}});
  } catch (const UnitError& e) {
    diagnose(err, "UnitError", e.what(), {{"path", e.path()}});
  } catch (const ValidationError& e) {
    diagnose(err, "ValidationError", e.what(), {{"path", e.path()}});
  } catch (const IoError& e) {
    diagnose(err, "IoError", e.what());
  } catch (const ConfigError& e) {
    diagnose(err, "ConfigError", e.what());
  } catch (const UsageError& e) {
    diagnose(err, "UsageError", e.what());
  } catch (const std::exception& e) {
    diagnose(err, "InternalError", e.what());
    return kInternalError;
  }
  return kValidationFailure;
}

}  // namespace qsr::cli
