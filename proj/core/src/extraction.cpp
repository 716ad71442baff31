#include "qsr/extraction.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>

#include "qsr/commonsense.hpp"

namespace qsr {

namespace {

constexpr std::array<std::pair<RelationName, std::string_view>, 19> kRelationNames{{
    {RelationName::Touches, "Touches"},
    {RelationName::Near, "Near"},
    {RelationName::Intersects, "Intersects"},
    {RelationName::Above, "Above"},
    {RelationName::Below, "Below"},
    {RelationName::LeftOf, "LeftOf"},
    {RelationName::RightOf, "RightOf"},
    {RelationName::InFrontOf, "InFrontOf"},
    {RelationName::Behind, "Behind"},
    {RelationName::Beside, "Beside"},
    {RelationName::OnTopOf, "OnTopOf"},
    {RelationName::LeansOn, "LeansOn"},
    {RelationName::AffixedOn, "AffixedOn"},
    {RelationName::Inside, "Inside"},
    {RelationName::PartIn, "PartIn"},
    {RelationName::East, "East"},
    {RelationName::West, "West"},
    {RelationName::North, "North"},
    {RelationName::South, "South"},
}};

constexpr std::array<std::pair<FrameNote, std::string_view>, 4> kFrameNotes{{
    {FrameNote::Contextualised, "contextualised"},
    {FrameNote::Intrinsic, "intrinsic"},
    {FrameNote::Global, "global"},
    {FrameNote::DegenerateViewpoint, "degenerate-viewpoint"},
}};

struct Aabb {
  Point3 lo, hi;
};

Aabb aabb_of(const OrientedBox& b) {
  Aabb box{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            b.z_min()},
           {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            b.z_max()}};
  for (const Point3& c : b.corners()) {
    box.lo.x = std::min(box.lo.x, c.x);
    box.lo.y = std::min(box.lo.y, c.y);
    box.hi.x = std::max(box.hi.x, c.x);
    box.hi.y = std::max(box.hi.y, c.y);
  }
  return box;
}

bool volume_before(const SceneObject& a, const SceneObject& b) {
  if (a.is_plane() != b.is_plane()) return a.is_plane();
  if (!a.is_plane()) {
    const double va = a.box.volume(), vb = b.box.volume();
    // Volumes equal to rounding (e.g. after a rigid motion) fall back to ids.
    if (std::abs(va - vb) > 1e-9 * std::max(va, vb)) return va > vb;
  }
  return a.id < b.id;
}

std::string hs_fact(std::string_view figure, std::string_view box, std::string_view ref,
                    SemiAxis axis) {
  std::string s = "Int(";
  s.append(figure).append(",hs(").append(box).append("(").append(ref).append("),");
  s.append(to_string(axis)).append("))");
  return s;
}

class PairEvaluator {
 public:
  PairEvaluator(const Scene& scene, const EngineConfig& cfg, std::vector<RelationTriple>& out)
      : scene_(scene), cfg_(cfg), rc_(cfg.relations), out_(out) {}

  void evaluate(const SceneObject& f, const SceneObject& r, const ViewContext& ctx) {
    const FrameNote view_note =
        ctx.frames.degenerate ? FrameNote::DegenerateViewpoint : FrameNote::Contextualised;

    const double d = object_distance(f, r);
    if (d <= rc_.touch_eps) emit(f, r, RelationName::Touches, FrameNote::Global,
                                 {"distance(" + f.id + "," + r.id + ")<=D"});
    if (d <= rc_.closeness_T) emit(f, r, RelationName::Near, FrameNote::Global,
                                   {"IsClose(" + f.id + "," + r.id + ")"});
    const bool overlap = intersects(f, r);
    if (overlap) emit(f, r, RelationName::Intersects, FrameNote::Global,
                      {"Int(" + f.id + "," + r.id + ")"});

    struct View {
      ViewRelation rel;
      RelationName name;
      std::string_view box;
    };
    constexpr std::array<View, 6> views{{
        {ViewRelation::Above, RelationName::Above, "mb"},
        {ViewRelation::Below, RelationName::Below, "mb"},
        {ViewRelation::LeftOf, RelationName::LeftOf, "cbb"},
        {ViewRelation::RightOf, RelationName::RightOf, "cbb"},
        {ViewRelation::InFrontOf, RelationName::InFrontOf, "cbb"},
        {ViewRelation::Behind, RelationName::Behind, "cbb"},
    }};
    for (const View& v : views) {
      if (directional_fc(f.box, ctx, v.rel))
        emit(f, r, v.name, view_note, {hs_fact(f.id, v.box, r.id, semi_axis_of(v.rel))});
    }

    emit_if(f, r, RelationName::Beside, view_note, beside(f, r, ctx));
    emit_if(f, r, RelationName::OnTopOf, view_note, on_top_of(f, r, ctx, rc_));
    emit_if(f, r, RelationName::LeansOn, view_note, leans_on(f, r, ctx, rc_, scene_.objects));
    emit_if(f, r, RelationName::AffixedOn, view_note,
            affixed_on(f, r, ctx, rc_, scene_.objects));
    emit_if(f, r, RelationName::Inside, FrameNote::Global, inside(f, r, rc_));
    if (overlap) emit_if(f, r, RelationName::PartIn, FrameNote::Global, part_in(f, r, rc_));

    if (cfg_.emit_intrinsic) {
      const FrameOfReference fo = intrinsic_frame(r.box);
      constexpr std::array<std::pair<Cardinal, RelationName>, 4> cards{{
          {Cardinal::East, RelationName::East},
          {Cardinal::West, RelationName::West},
          {Cardinal::North, RelationName::North},
          {Cardinal::South, RelationName::South},
      }};
      for (const auto& [c, name] : cards) {
        if (directional_fo(f, r, fo, c, Strictness::Relaxed, rc_))
          emit(f, r, name, FrameNote::Intrinsic, {hs_fact(f.id, "mb", r.id, semi_axis_of(c))});
      }
    }
  }

 private:
  void emit(const SceneObject& f, const SceneObject& r, RelationName name, FrameNote note,
            std::vector<std::string> audit) {
    out_.push_back({f.id, name, r.id, note, std::move(audit)});
  }
  void emit_if(const SceneObject& f, const SceneObject& r, RelationName name, FrameNote note,
               Judgement j) {
    if (j.holds) emit(f, r, name, note, std::move(j.audit));
  }

  const Scene& scene_;
  const EngineConfig& cfg_;
  const RelationConfig& rc_;
  std::vector<RelationTriple>& out_;
};

}  // namespace

std::string_view to_string(RelationName name) {
  for (const auto& [n, s] : kRelationNames)
    if (n == name) return s;
  return "?";
}

std::optional<RelationName> relation_from_string(std::string_view name) {
  for (const auto& [n, s] : kRelationNames)
    if (s == name) return n;
  return std::nullopt;
}

std::vector<RelationName> all_relation_names() {
  std::vector<RelationName> out;
  for (const auto& entry : kRelationNames) out.push_back(entry.first);
  return out;
}

std::string_view to_string(FrameNote note) {
  for (const auto& [n, s] : kFrameNotes)
    if (n == note) return s;
  return "?";
}

std::optional<FrameNote> frame_note_from_string(std::string_view name) {
  for (const auto& [n, s] : kFrameNotes)
    if (s == name) return n;
  return std::nullopt;
}

void sort_triples(std::vector<RelationTriple>& triples) {
  std::stable_sort(triples.begin(), triples.end(),
                   [](const RelationTriple& a, const RelationTriple& b) {
                     const auto ka = std::make_tuple(std::string_view(a.reference_id),
                                                     std::string_view(a.figure_id),
                                                     to_string(a.relation));
                     const auto kb = std::make_tuple(std::string_view(b.reference_id),
                                                     std::string_view(b.figure_id),
                                                     to_string(b.relation));
                     return ka < kb;
                   });
}

std::vector<const SceneObject*> select_references(const Scene& scene) {
  std::vector<const SceneObject*> order;
  order.reserve(scene.objects.size());
  for (const SceneObject& o : scene.objects) order.push_back(&o);
  std::sort(order.begin(), order.end(),
            [](const SceneObject* a, const SceneObject* b) { return volume_before(*a, *b); });
  return order;
}

ExtractionResult extract_qsr_detailed(const Scene& scene, const RobotPose& pose,
                                      const EngineConfig& cfg) {
  cfg.validate();
  ExtractionResult result;
  if (scene.objects.empty()) return result;

  const std::vector<const SceneObject*> order = select_references(scene);
  const std::size_t n = order.size();
  const double radius = cfg.prune_radius();

  // Sweep over x with boxes inflated by the pruning radius.
  std::vector<Aabb> boxes(n);
  for (std::size_t i = 0; i < n; ++i) boxes[i] = aabb_of(order[i]->box);
  std::vector<std::size_t> by_x(n);
  for (std::size_t i = 0; i < n; ++i) by_x[i] = i;
  std::sort(by_x.begin(), by_x.end(),
            [&](std::size_t a, std::size_t b) { return boxes[a].lo.x < boxes[b].lo.x; });

  // reference rank -> figure ranks
  std::map<std::size_t, std::vector<std::size_t>> figures_of;
  for (std::size_t a = 0; a < n; ++a) {
    const Aabb& ba = boxes[by_x[a]];
    for (std::size_t b = a + 1; b < n; ++b) {
      const Aabb& bb = boxes[by_x[b]];
      if (bb.lo.x > ba.hi.x + radius) break;
      if (bb.lo.y > ba.hi.y + radius || ba.lo.y > bb.hi.y + radius) continue;
      if (bb.lo.z > ba.hi.z + radius || ba.lo.z > bb.hi.z + radius) continue;
      const std::size_t ref = std::min(by_x[a], by_x[b]);
      const std::size_t fig = std::max(by_x[a], by_x[b]);
      if (order[fig]->is_plane()) continue;  // planes are never figures
      ++result.broad_phase_candidates;
      if (object_distance(*order[ref], *order[fig]) <= radius) figures_of[ref].push_back(fig);
    }
  }

  PairEvaluator evaluator(scene, cfg, result.triples);
  for (auto& [ref, figures] : figures_of) {
    std::sort(figures.begin(), figures.end());
    const SceneObject& r = *order[ref];
    const ViewContext ctx = make_view_context(r.box, pose, cfg.relations);
    for (std::size_t fig : figures) {
      const SceneObject& f = *order[fig];
      result.evaluated.push_back({r.id, f.id});
      evaluator.evaluate(f, r, ctx);
    }
  }
  sort_triples(result.triples);
  return result;
}

std::vector<RelationTriple> extract_qsr(const Scene& scene, const RobotPose& pose,
                                        const EngineConfig& cfg) {
  return extract_qsr_detailed(scene, pose, cfg).triples;
}

}  // namespace qsr
