#include "qsr/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>

#include "json.hpp"
#include "qsr/commonsense.hpp"
#include "qsr/relations.hpp"

namespace qsr::oracle {

namespace {

constexpr double kCertain = 1e9;  // margin of a quantifier over no candidates

constexpr double kTurn = 6.283185307179586;
constexpr double kQuarter = 1.5707963267948966;

double wrap(double a) {
  a = std::fmod(a, kTurn);
  if (a <= -kTurn / 2) a += kTurn;
  if (a > kTurn / 2) a -= kTurn;
  return a;
}

double dist3(Point3 a, Point3 b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Aabb {
  Point3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
  Point3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};
  void add(Point3 p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  [[nodiscard]] bool empty() const { return lo.x >= hi.x || lo.y >= hi.y || lo.z >= hi.z; }
};

Aabb aabb_of(const Region& r) {
  Aabb box;
  for (const Point3& c : r.corners()) box.add(c);
  return box;
}

Aabb overlap(const Aabb& a, const Aabb& b) {
  Aabb o;
  o.lo = {std::max(a.lo.x, b.lo.x), std::max(a.lo.y, b.lo.y), std::max(a.lo.z, b.lo.z)};
  o.hi = {std::min(a.hi.x, b.hi.x), std::min(a.hi.y, b.hi.y), std::min(a.hi.z, b.hi.z)};
  return o;
}

// Alternating projections between two convex regions, started at `p`.
double alternate(const Region& a, const Region& b, Point3 p) {
  p = a.project(p);
  Point3 q = b.project(p);
  double best = dist3(p, q);
  for (int i = 0; i < 400; ++i) {
    p = a.project(q);
    q = b.project(p);
    const double d = dist3(p, q);
    const bool stalled = best - d < 1e-13;
    best = std::min(best, d);
    if (stalled || best == 0.0) break;
  }
  return best;
}

// Distance between two regions from their samples, refined by projection.
double region_distance(const Region& a, std::span<const Point3> a_samples, const Region& b,
                       std::span<const Point3> b_samples) {
  double best = std::numeric_limits<double>::infinity();
  Point3 pa = a.origin, pb = b.origin;
  double da = best, db = best;
  for (const Point3& p : a_samples) {
    const double d = b.outside_distance(p);
    if (d < da) da = d, pa = p;
  }
  for (const Point3& p : b_samples) {
    const double d = a.outside_distance(p);
    if (d < db) db = d, pb = p;
  }
  best = std::min(da, db);
  if (best == 0.0) return 0.0;
  best = std::min(best, alternate(a, b, pa));
  best = std::min(best, alternate(b, a, pb));
  best = std::min(best, alternate(a, b, b.origin));
  return best;
}

// Composite answers compare margins in units of their own band.
double ratio(const OracleAnswer& a) { return a.band > 0.0 ? a.margin / a.band : a.margin; }

OracleAnswer negate(OracleAnswer a) {
  a.holds = !a.holds;
  return a;
}

OracleAnswer all_of(std::span<const OracleAnswer> parts, double band) {
  if (parts.empty()) return {true, kCertain, band};
  const bool holds = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.holds; });
  const OracleAnswer* pick = nullptr;
  for (const OracleAnswer& p : parts) {
    if (holds) {
      if (!pick || ratio(p) < ratio(*pick)) pick = &p;
    } else if (!p.holds && (!pick || ratio(p) > ratio(*pick))) {
      pick = &p;
    }
  }
  return {holds, pick->margin, pick->band};
}

OracleAnswer any_of(std::span<const OracleAnswer> parts, double band) {
  std::vector<OracleAnswer> flipped(parts.begin(), parts.end());
  for (auto& p : flipped) p = negate(p);
  return negate(all_of(flipped, band));
}

// Literal CBB extents: rotate the corners by the smallest aligning rotation
// and read them off in the contextualised frame.
Region cbb_region(const OrientedBox& box, double fc_yaw) {
  const double rel = wrap(box.yaw() - fc_yaw);
  double theta = std::numeric_limits<double>::infinity();
  for (int k = -4; k <= 4; ++k) {
    const double t = k * kQuarter - rel;
    if (std::abs(t) < std::abs(theta) - 1e-6 ||
        (std::abs(std::abs(t) - std::abs(theta)) <= 1e-6 && t > theta))
      theta = t;
  }
  const Region min_box = Region::of(box);
  const double ct = std::cos(theta), st = std::sin(theta);
  Region out;
  out.origin = box.center();
  out.yaw = fc_yaw;
  out.lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            min_box.lo[2]};
  out.hi = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            min_box.hi[2]};
  for (const Point3& c : min_box.corners()) {
    const double dx = c.x - out.origin.x, dy = c.y - out.origin.y;
    const Point3 rotated{out.origin.x + ct * dx - st * dy, out.origin.y + st * dx + ct * dy, c.z};
    const Point3 l = out.to_local(rotated);
    out.lo[0] = std::min(out.lo[0], l.x);
    out.hi[0] = std::max(out.hi[0], l.x);
    out.lo[1] = std::min(out.lo[1], l.y);
    out.hi[1] = std::max(out.hi[1], l.y);
  }
  return out;
}

class PairOracle {
 public:
  PairOracle(const SceneObject& figure, const SceneObject& reference, const RobotPose& pose,
             const EngineConfig& cfg, std::size_t n, std::uint64_t seed,
             std::span<const SceneObject> scene)
      : f_(figure),
        r_(reference),
        pose_(pose),
        cfg_(cfg),
        n_(n),
        seed_(seed),
        scene_(scene),
        band_(std::max(cfg.relations.touch_eps, 1e-3)),
        fig_(Region::of(figure.box)),
        ref_(Region::of(reference.box)),
        fig_samples_(fig_, n, mix(seed, 1)) {}

  OracleAnswer answer(const Query& q) {
    const double s = cfg_.relations.halfspace_scale_s;
    const double fc = viewpoint_yaw(pose_, r_.box.center());
    switch (q.relation) {
      case RelationName::Touches: return within(cfg_.relations.touch_eps);
      case RelationName::Near: return within(cfg_.relations.closeness_T);
      case RelationName::Intersects: return overlaps(ref_, ref_samples(), nullptr);
      case RelationName::Above: return region_hit("Z+", vertical_region(r_.box, true, s));
      case RelationName::Below: return region_hit("Z-", vertical_region(r_.box, false, s));
      case RelationName::LeftOf: return region_hit("c:Y+", lateral_region(r_.box, fc, 1, true, s));
      case RelationName::RightOf:
        return region_hit("c:Y-", lateral_region(r_.box, fc, 1, false, s));
      case RelationName::InFrontOf:
        return region_hit("c:X-", lateral_region(r_.box, fc, 0, false, s));
      case RelationName::Behind: return region_hit("c:X+", lateral_region(r_.box, fc, 0, true, s));
      case RelationName::East: return cardinal("o:X+", 0, true, s, q.strictness);
      case RelationName::West: return cardinal("o:X-", 0, false, s, q.strictness);
      case RelationName::North: return cardinal("o:Y+", 1, true, s, q.strictness);
      case RelationName::South: return cardinal("o:Y-", 1, false, s, q.strictness);
      case RelationName::Beside: {
        const std::array parts{answer({RelationName::LeftOf}), answer({RelationName::RightOf})};
        return any_of(parts, band_);
      }
      case RelationName::OnTopOf: {
        const std::array parts{answer({RelationName::Above}), answer({RelationName::Touches})};
        return all_of(parts, band_);
      }
      case RelationName::LeansOn: return leans_on();
      case RelationName::AffixedOn: return affixed_on();
      case RelationName::Inside: return contained_in(ref_);
      case RelationName::PartIn: return part_in();
    }
    return {};
  }

 private:
  const std::vector<Point3>& ref_samples() {
    if (!ref_samples_) ref_samples_ = std::make_unique<SampledRegion>(ref_, n_, mix(seed_, 2));
    return ref_samples_->samples;
  }

  // Int(figure, region): some sample of one lies in the other. The margin is
  // the deepest common point found, or the gap when there is none.
  OracleAnswer overlaps(const Region& region, const std::vector<Point3>& region_samples,
                        double* gap_out) {
    bool hit = false;
    double best = -std::numeric_limits<double>::infinity();
    for (const Point3& p : fig_samples_.samples) {
      if (region.contains(p)) {
        hit = true;
        best = std::max(best, std::min(fig_.depth(p), region.depth(p)));
      }
    }
    for (const Point3& p : region_samples) {
      if (fig_.contains(p)) {
        hit = true;
        best = std::max(best, std::min(fig_.depth(p), region.depth(p)));
      }
    }
    if (hit) {
      if (gap_out) *gap_out = -std::max(best, 0.0);
      return {true, std::max(best, 0.0), band_};
    }
    const double gap = region_distance(fig_, fig_samples_.samples, region, region_samples);
    if (gap_out) *gap_out = gap;
    return {false, gap, band_};
  }

  const SampledRegion& region_samples(const std::string& key, const Region& region) {
    auto it = regions_.find(key);
    if (it == regions_.end())
      it = regions_
               .emplace(key, std::make_unique<SampledRegion>(region, n_,
                                                             mix(seed_, 10 + regions_.size())))
               .first;
    return *it->second;
  }

  OracleAnswer region_hit(const std::string& key, const Region& region) {
    const SampledRegion& sr = region_samples(key, region);
    return overlaps(sr.source, sr.samples, nullptr);
  }

  // Signed gap: negative values are a lower bound on the penetration depth.
  double signed_gap() {
    if (!gap_) {
      double g = 0.0;
      overlaps(ref_, ref_samples(), &g);
      gap_ = g;
    }
    return *gap_;
  }

  OracleAnswer within(double threshold) {
    const double g = signed_gap();
    const double d = std::max(g, 0.0);
    // Overlapping boxes stay within the threshold until separated by the
    // penetration depth plus the threshold.
    const double margin = g < 0.0 ? threshold - g : std::abs(threshold - d);
    return {d <= threshold, margin, band_};
  }

  // ComplCont(container, figure): share of the figure's samples inside.
  OracleAnswer contained_in(const Region& container) {
    std::size_t inside = 0;
    for (const Point3& p : fig_samples_.samples) inside += container.contains(p) ? 1 : 0;
    const double share = static_cast<double>(inside) / static_cast<double>(n_);
    const double threshold = 1.0 - cfg_.relations.containment_tol;
    double margin = std::abs(share - threshold);
    double corner_depth = std::numeric_limits<double>::infinity();
    for (const Point3& c : fig_.corners()) corner_depth = std::min(corner_depth, container.depth(c));
    // A convex figure with every corner inside is contained outright.
    if (corner_depth >= 0.0) return {true, std::max(margin, corner_depth), band_};
    return {share >= threshold, margin, band_};
  }

  OracleAnswer cardinal(const std::string& key, int axis, bool positive, double s,
                        Strictness strictness) {
    const Region region = lateral_region(r_.box, std::nullopt, axis, positive, s);
    if (strictness == Strictness::Strict) return contained_in(region);
    return region_hit(key, region);
  }

  PairOracle& other(const SceneObject& figure, const SceneObject& reference) {
    const std::string key = figure.id + "\x1f" + reference.id;
    auto it = others_.find(key);
    if (it == others_.end())
      it = others_
               .emplace(key, std::make_unique<PairOracle>(figure, reference, pose_, cfg_, n_,
                                                          mix(seed_, 100 + others_.size()),
                                                          scene_))
               .first;
    return *it->second;
  }

  bool is_third(const SceneObject& o) const { return o.id != f_.id && o.id != r_.id; }

  OracleAnswer leans_on() {
    std::vector<OracleAnswer> parts{answer({RelationName::Touches}),
                                    negate(answer({RelationName::Above})),
                                    negate(answer({RelationName::Below}))};
    std::vector<OracleAnswer> supports;
    for (const SceneObject& o3 : scene_) {
      if (!is_third(o3)) continue;
      PairOracle& p = other(o3, f_);  // reference is the leaning object
      const std::array both{p.answer({RelationName::Touches}), p.answer({RelationName::Below})};
      supports.push_back(all_of(both, band_));
    }
    parts.push_back(supports.empty() ? OracleAnswer{false, kCertain, band_}
                                     : any_of(supports, band_));
    return all_of(parts, band_);
  }

  OracleAnswer affixed_on() {
    std::vector<OracleAnswer> parts{answer({RelationName::Touches}),
                                    negate(answer({RelationName::Above}))};
    for (const SceneObject& o3 : scene_) {
      if (!is_third(o3)) continue;
      parts.push_back(negate(other(o3, f_).answer({RelationName::Touches})));
    }
    return all_of(parts, band_);
  }

  // Shell counts around the common region: which object owns more of the
  // layer just outside it.
  OracleAnswer part_in() {
    const Aabb box = overlap(aabb_of(fig_), aabb_of(ref_));
    if (box.empty()) return {false, 0.0, band_};
    const double z_mid = 0.5 * (box.lo.z + box.hi.z);
    constexpr int kGrid = 800;
    const double cx = (box.hi.x - box.lo.x) / kGrid, cy = (box.hi.y - box.lo.y) / kGrid;
    double sx = 0.0, sy = 0.0;
    std::size_t cells = 0;
    Aabb hit;
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const Point3 p{box.lo.x + (i + 0.5) * cx, box.lo.y + (j + 0.5) * cy, z_mid};
        if (fig_.contains(p) && ref_.contains(p)) {
          sx += p.x;
          sy += p.y;
          ++cells;
          hit.add(p);
        }
      }
    }
    if (cells == 0) return {false, 0.0, band_};
    const Point3 c{sx / cells, sy / cells, z_mid};
    const double grow = 1.0 + cfg_.relations.adjacency_delta;
    // Uniform shell samples are images of uniform samples of the common
    // region under the growth map; only those landing outside it count.
    std::mt19937_64 rng(mix(seed_, 3));
    const Point3 lo{hit.lo.x - cx, hit.lo.y - cy, box.lo.z};
    const Point3 hi{hit.hi.x + cx, hit.hi.y + cy, box.hi.z};
    std::size_t accepted = 0, first = 0, second = 0;
    const std::size_t max_draws = 100 * n_;
    for (std::size_t draw = 0; draw < max_draws && accepted < n_; ++draw) {
      const Point3 q{uniform(rng, lo.x, hi.x), uniform(rng, lo.y, hi.y), uniform(rng, lo.z, hi.z)};
      if (!(fig_.contains(q) && ref_.contains(q))) continue;
      ++accepted;
      const Point3 p{c.x + grow * (q.x - c.x), c.y + grow * (q.y - c.y), c.z + grow * (q.z - c.z)};
      const bool in_f = fig_.contains(p), in_r = ref_.contains(p);
      if (in_f && in_r) continue;
      first += in_f ? 1 : 0;
      second += in_r ? 1 : 0;
    }
    const double total = static_cast<double>(first + second);
    if (total == 0.0) return {false, 0.0, band_};
    const double margin = std::abs(static_cast<double>(second) - static_cast<double>(first)) / total;
    // Counting noise of the difference is about sqrt(total).
    const double band = std::max(band_, 5.0 / std::sqrt(total));
    return {first < second, margin, band};
  }

  const SceneObject& f_;
  const SceneObject& r_;
  RobotPose pose_;
  const EngineConfig& cfg_;
  std::size_t n_;
  std::uint64_t seed_;
  std::span<const SceneObject> scene_;
  double band_;
  Region fig_, ref_;
  SampledRegion fig_samples_;
  std::unique_ptr<SampledRegion> ref_samples_;
  std::map<std::string, std::unique_ptr<SampledRegion>> regions_;
  std::map<std::string, std::unique_ptr<PairOracle>> others_;
  std::optional<double> gap_;
};

}  // namespace

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

Region Region::of(const OrientedBox& box) {
  const HalfExtents h = box.half_extents();
  Region r;
  r.origin = box.center();
  r.yaw = box.yaw();
  r.lo = {-h.x, -h.y, -h.z};
  r.hi = {h.x, h.y, h.z};
  return r;
}

namespace {
void refresh(const Region& r) {
  if (r.trig_yaw == r.yaw) return;
  r.cos_yaw = std::cos(r.yaw);
  r.sin_yaw = std::sin(r.yaw);
  r.trig_yaw = r.yaw;
}
}  // namespace

Point3 Region::to_local(Point3 p) const {
  refresh(*this);
  const double c = cos_yaw, s = sin_yaw;
  const double dx = p.x - origin.x, dy = p.y - origin.y;
  return {c * dx + s * dy, -s * dx + c * dy, p.z - origin.z};
}

Point3 Region::to_global(Point3 l) const {
  refresh(*this);
  const double c = cos_yaw, s = sin_yaw;
  return {origin.x + c * l.x - s * l.y, origin.y + s * l.x + c * l.y, origin.z + l.z};
}

bool Region::contains(Point3 p) const {
  const Point3 l = to_local(p);
  return l.x >= lo[0] && l.x <= hi[0] && l.y >= lo[1] && l.y <= hi[1] && l.z >= lo[2] &&
         l.z <= hi[2];
}

double Region::depth(Point3 p) const {
  const Point3 l = to_local(p);
  const std::array<double, 3> v{l.x, l.y, l.z};
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) d = std::min({d, v[i] - lo[i], hi[i] - v[i]});
  return d;
}

double Region::outside_distance(Point3 p) const {
  const Point3 l = to_local(p);
  const std::array<double, 3> v{l.x, l.y, l.z};
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double e = std::max({lo[i] - v[i], v[i] - hi[i], 0.0});
    sum += e * e;
  }
  return std::sqrt(sum);
}

Point3 Region::project(Point3 p) const {
  const Point3 l = to_local(p);
  return to_global({std::clamp(l.x, lo[0], hi[0]), std::clamp(l.y, lo[1], hi[1]),
                    std::clamp(l.z, lo[2], hi[2])});
}

double Region::volume() const { return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]); }

std::array<Point3, 8> Region::corners() const {
  std::array<Point3, 8> out;
  for (int i = 0; i < 8; ++i)
    out[i] = to_global({(i & 1) ? hi[0] : lo[0], (i & 2) ? hi[1] : lo[1], (i & 4) ? hi[2] : lo[2]});
  return out;
}

Point3 Region::sample(std::mt19937_64& rng) const {
  const double x = uniform(rng, lo[0], hi[0]);
  const double y = uniform(rng, lo[1], hi[1]);
  const double z = uniform(rng, lo[2], hi[2]);
  return to_global({x, y, z});
}

Point3 Region::sample_surface(std::mt19937_64& rng) const {
  const double ex = hi[0] - lo[0], ey = hi[1] - lo[1], ez = hi[2] - lo[2];
  const std::array<double, 3> area{ey * ez, ex * ez, ex * ey};  // faces normal to x, y, z
  const double pick = uniform(rng, 0.0, area[0] + area[1] + area[2]);
  const int axis = pick < area[0] ? 0 : (pick < area[0] + area[1] ? 1 : 2);
  std::array<double, 3> l{uniform(rng, lo[0], hi[0]), uniform(rng, lo[1], hi[1]),
                          uniform(rng, lo[2], hi[2])};
  l[axis] = (rng() & 1) ? hi[axis] : lo[axis];
  return to_global({l[0], l[1], l[2]});
}

SampledRegion::SampledRegion(const Region& region, std::size_t n, std::uint64_t s)
    : source(region), seed(s) {
  std::mt19937_64 rng(s);
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) samples.push_back(source.sample(rng));
}

bool SampledRegion::verify() const {
  // Rounding in the frame change may put a sample a hair outside a face.
  return std::all_of(samples.begin(), samples.end(),
                     [&](const Point3& p) { return source.outside_distance(p) <= 1e-9; });
}

Region vertical_region(const OrientedBox& box, bool up, double s) {
  Region r = Region::of(box);
  const double height = r.hi[2] - r.lo[2];
  if (up) {
    r.lo[2] = r.hi[2];
    r.hi[2] = r.hi[2] + s * height;
  } else {
    r.hi[2] = r.lo[2];
    r.lo[2] = r.lo[2] - s * height;
  }
  return r;
}

Region lateral_region(const OrientedBox& box, std::optional<double> fc_yaw, int axis, bool positive,
                      double s) {
  Region r = fc_yaw ? cbb_region(box, *fc_yaw) : Region::of(box);
  const auto a = static_cast<std::size_t>(axis);
  const double full = r.hi[a] - r.lo[a];
  if (positive) {
    r.lo[a] = r.hi[a];
    r.hi[a] = r.hi[a] + s * full;
  } else {
    r.hi[a] = r.lo[a];
    r.lo[a] = r.lo[a] - s * full;
  }
  return r;
}

double viewpoint_yaw(const RobotPose& pose, Point3 target) {
  const double dx = target.x - pose.position.x, dy = target.y - pose.position.y;
  if (std::hypot(dx, dy) < 1e-6) return pose.heading;
  return std::atan2(dy, dx);
}

namespace {

std::vector<Point3> surface_points(const Region& r, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point3> pts;
  pts.reserve(n + 8);
  for (const Point3& c : r.corners()) pts.push_back(c);
  // A tenth of the budget goes to the edges, where closest points of two
  // boxes usually sit.
  const std::size_t edge_budget = n / 10;
  for (int axis = 0; axis < 3; ++axis) {
    for (int k = 0; k < 4; ++k) {
      std::array<double, 3> l{};
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      l[u] = (k & 1) ? r.hi[u] : r.lo[u];
      l[v] = (k & 2) ? r.hi[v] : r.lo[v];
      for (std::size_t i = 0; i < edge_budget / 12; ++i) {
        l[axis] = uniform(rng, r.lo[axis], r.hi[axis]);
        pts.push_back(r.to_global({l[0], l[1], l[2]}));
      }
    }
  }
  while (pts.size() < n + 8) pts.push_back(r.sample_surface(rng));
  return pts;
}

}  // namespace

double sampled_distance(const OrientedBox& a, const OrientedBox& b, std::size_t n,
                        std::uint64_t seed) {
  const Region ra = Region::of(a), rb = Region::of(b);
  double best = std::numeric_limits<double>::infinity();
  for (const Point3& p : surface_points(ra, n, mix(seed, 1))) best = std::min(best, rb.outside_distance(p));
  for (const Point3& p : surface_points(rb, n, mix(seed, 2))) best = std::min(best, ra.outside_distance(p));
  return best;
}

double monte_carlo_intersection_volume(const OrientedBox& a, const OrientedBox& b, std::size_t n,
                                       std::uint64_t seed) {
  const Region ra = Region::of(a), rb = Region::of(b);
  const Aabb box = overlap(aabb_of(ra), aabb_of(rb));
  if (box.empty()) return 0.0;
  std::mt19937_64 rng(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point3 p{uniform(rng, box.lo.x, box.hi.x), uniform(rng, box.lo.y, box.hi.y),
                   uniform(rng, box.lo.z, box.hi.z)};
    if (ra.contains(p) && rb.contains(p)) ++hits;
  }
  const double domain = (box.hi.x - box.lo.x) * (box.hi.y - box.lo.y) * (box.hi.z - box.lo.z);
  return domain * static_cast<double>(hits) / static_cast<double>(n);
}

std::string to_string(const Query& q) {
  std::string s(qsr::to_string(q.relation));
  const bool cardinal = q.relation == RelationName::East || q.relation == RelationName::West ||
                        q.relation == RelationName::North || q.relation == RelationName::South;
  if (cardinal) s += q.strictness == Strictness::Strict ? "[strict]" : "[relaxed]";
  return s;
}

std::vector<Query> all_queries() {
  std::vector<Query> out;
  for (RelationName r : all_relation_names()) {
    out.push_back({r, Strictness::Relaxed});
    if (r == RelationName::East || r == RelationName::West || r == RelationName::North ||
        r == RelationName::South)
      out.push_back({r, Strictness::Strict});
  }
  return out;
}

OracleAnswer oracle_relation(const SceneObject& figure, const SceneObject& reference,
                             const Query& query, const RobotPose& pose, const EngineConfig& cfg,
                             std::size_t n, std::uint64_t seed,
                             std::span<const SceneObject> scene) {
  if (n < kMinSamples)
    throw std::invalid_argument("oracle needs at least " + std::to_string(kMinSamples) +
                                " samples");
  PairOracle oracle(figure, reference, pose, cfg, n, seed, scene);
  return oracle.answer(query);
}

std::optional<bool> engine_relation(const SceneObject& f, const SceneObject& r, const Query& q,
                                    const RobotPose& pose, const EngineConfig& cfg,
                                    std::span<const SceneObject> scene) {
  const RelationConfig& rc = cfg.relations;
  auto view = [&] { return make_view_context(r.box, pose, rc); };
  auto fo = [&](Cardinal c) {
    return directional_fo(f, r, intrinsic_frame(r.box), c, q.strictness, rc);
  };
  switch (q.relation) {
    case RelationName::Touches: return touches(f, r, rc);
    case RelationName::Near: return is_close(f, r, rc);
    case RelationName::Intersects: return intersects(f, r);
    case RelationName::Above: return directional_fc(f.box, view(), ViewRelation::Above);
    case RelationName::Below: return directional_fc(f.box, view(), ViewRelation::Below);
    case RelationName::LeftOf: return directional_fc(f.box, view(), ViewRelation::LeftOf);
    case RelationName::RightOf: return directional_fc(f.box, view(), ViewRelation::RightOf);
    case RelationName::InFrontOf: return directional_fc(f.box, view(), ViewRelation::InFrontOf);
    case RelationName::Behind: return directional_fc(f.box, view(), ViewRelation::Behind);
    case RelationName::Beside: return beside(f, r, view()).holds;
    case RelationName::OnTopOf: return on_top_of(f, r, view(), rc).holds;
    case RelationName::LeansOn: return leans_on(f, r, view(), rc, scene).holds;
    case RelationName::AffixedOn: return affixed_on(f, r, view(), rc, scene).holds;
    case RelationName::Inside: return inside(f, r, rc).holds;
    case RelationName::PartIn:
      if (!intersects(f, r)) return std::nullopt;
      return part_in(f, r, rc).holds;
    case RelationName::East: return fo(Cardinal::East);
    case RelationName::West: return fo(Cardinal::West);
    case RelationName::North: return fo(Cardinal::North);
    case RelationName::South: return fo(Cardinal::South);
  }
  return std::nullopt;
}

Scene random_pair_scene(std::mt19937_64& rng) {
  auto U = [&](double lo, double hi) { return uniform(rng, lo, hi); };
  auto half = [&] { return HalfExtents{U(0.05, 1.0), U(0.05, 1.0), U(0.05, 1.0)}; };
  auto local = [](const OrientedBox& box, double x, double y) {
    const double c = std::cos(box.yaw()), s = std::sin(box.yaw());
    return Vec2{box.center().x + c * x - s * y, box.center().y + s * x + c * y};
  };
  auto gap = [&](double far) {
    switch (rng() % 4) {
      case 0: return 0.0;
      case 1: return U(0.0, 0.02);
      case 2: return U(0.02, 0.1);
      default: return U(0.1, far);
    }
  };

  const HalfExtents ha = half();
  const double ya = U(-kPi, kPi);
  OrientedBox a({U(-1.0, 1.0), U(-1.0, 1.0), ha.z + U(0.0, 0.5)}, ha, ya);
  OrientedBox b;
  SurfaceKind a_kind = SurfaceKind::Solid;
  std::vector<Point3> a_polygon;

  switch (rng() % 8) {
    case 0: {  // free placement, possibly overlapping
      const HalfExtents hb = half();
      const double phi = U(-kPi, kPi), r = U(0.0, 2.5);
      b = OrientedBox({a.center().x + r * std::cos(phi), a.center().y + r * std::sin(phi),
                       a.center().z + U(-1.0, 1.0)},
                      hb, U(-kPi, kPi));
      break;
    }
    case 1: {  // face to face, aligned
      const HalfExtents hb = half();
      const bool along_x = rng() & 1;
      const double side = (rng() & 1) ? 1.0 : -1.0;
      const double g = gap(0.6);
      const Vec2 c = along_x ? local(a, side * (ha.x + hb.x + g), U(-ha.y, ha.y))
                             : local(a, U(-ha.x, ha.x), side * (ha.y + hb.y + g));
      b = OrientedBox({c.x, c.y, a.center().z + U(-ha.z, ha.z)}, hb,
                      ya + static_cast<double>(rng() % 4) * kHalfPi);
      break;
    }
    case 2: {  // stacked
      const HalfExtents hb = half();
      const Vec2 c = local(a, U(-ha.x, ha.x), U(-ha.y, ha.y));
      b = OrientedBox({c.x, c.y, a.z_max() + hb.z + gap(0.4)}, hb, U(-kPi, kPi));
      break;
    }
    case 3: {  // overlapping
      const HalfExtents hb = half();
      const Vec2 c = local(a, U(-ha.x, ha.x), U(-ha.y, ha.y));
      b = OrientedBox({c.x, c.y, a.center().z + U(-ha.z, ha.z)}, hb, U(-kPi, kPi));
      break;
    }
    case 4: {  // nested
      const double r = std::min(ha.x, ha.y);
      const HalfExtents hb{U(0.05, 0.3) * r, U(0.05, 0.3) * r, U(0.1, 0.5) * ha.z};
      const Vec2 c = local(a, U(-(ha.x - 0.5 * r), ha.x - 0.5 * r), U(-(ha.y - 0.5 * r), ha.y - 0.5 * r));
      b = OrientedBox({c.x, c.y, a.center().z + U(-0.5, 0.5) * (ha.z - hb.z)}, hb, U(-kPi, kPi));
      break;
    }
    case 5: {  // box on a floor
      const double fx = U(2.0, 4.0), fy = U(2.0, 4.0);
      a = OrientedBox({0.0, 0.0, 0.0}, {fx, fy, 0.01}, 0.0);
      a_kind = SurfaceKind::Floor;
      a_polygon = {{-fx, -fy, 0.0}, {fx, -fy, 0.0}, {fx, fy, 0.0}, {-fx, fy, 0.0}};
      const HalfExtents hb = half();
      b = OrientedBox({U(-1.5, 1.5), U(-1.5, 1.5), 0.01 + hb.z + gap(0.5)}, hb, U(-kPi, kPi));
      break;
    }
    case 6: {  // small box in one of a's side halfspaces
      const double r = 0.25 * std::min({ha.x, ha.y, ha.z});
      const HalfExtents hb{U(0.2, 1.0) * r, U(0.2, 1.0) * r, U(0.2, 1.0) * r};
      const bool along_x = rng() & 1;
      const double side = (rng() & 1) ? 1.0 : -1.0;
      const double reach = along_x ? ha.x : ha.y;
      const double depth = reach * U(1.4, 4.6);
      const Vec2 c = along_x ? local(a, side * depth, U(-0.3, 0.3) * ha.y)
                             : local(a, U(-0.3, 0.3) * ha.x, side * depth);
      b = OrientedBox({c.x, c.y, a.center().z + U(-0.5, 0.5) * ha.z}, hb, U(-kPi, kPi));
      break;
    }
    default: {  // box against a wall
      const double wy = U(2.0, 4.0), wz = U(1.0, 1.5);
      a = OrientedBox({0.0, 0.0, wz}, {0.01, wy, wz}, 0.0);
      a_kind = SurfaceKind::Wall;
      a_polygon = {{0.0, -wy, 0.0}, {0.0, wy, 0.0}, {0.0, wy, 2 * wz}, {0.0, -wy, 2 * wz}};
      const HalfExtents hb = half();
      const double side = (rng() & 1) ? 1.0 : -1.0;
      b = OrientedBox({side * (0.01 + hb.x + gap(0.5)), U(-1.5, 1.5), hb.z + U(0.0, 1.0)}, hb, 0.0);
      break;
    }
  }

  Scene scene;
  const double phi = U(-kPi, kPi), radius = U(3.0, 8.0);
  scene.robot = RobotPose({radius * std::cos(phi), radius * std::sin(phi), 0.0}, U(-kPi, kPi));

  SceneObject oa;
  oa.box = a;
  oa.surface = a_kind;
  if (a_kind != SurfaceKind::Solid) {
    oa.source = GeometrySource::Surface;
    oa.polygon = a_polygon;
  }
  SceneObject ob;
  ob.box = b;
  const bool swap_ids = rng() & 1;
  oa.id = swap_ids ? "o2" : "o1";
  ob.id = swap_ids ? "o1" : "o2";
  oa.labels = {{a_kind == SurfaceKind::Solid ? "box" : std::string(to_string(a_kind)), 1.0}};
  ob.labels = {{"box", 1.0}};
  scene.objects = {oa, ob};
  return scene;
}

std::vector<Scene> random_pair_scenes(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Scene> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_pair_scene(rng));
  return out;
}

AgreementReport check_agreement(std::span<const Scene> scenes, const EngineConfig& cfg,
                                const AgreementOptions& options) {
  if (options.samples < kMinSamples)
    throw std::invalid_argument("oracle needs at least " + std::to_string(kMinSamples) +
                                " samples");
  const auto start = std::chrono::steady_clock::now();
  AgreementReport report;
  report.seed = options.seed;
  report.scenes = scenes.size();
  report.samples = options.samples;

  std::vector<Query> queries;
  for (const Query& q : all_queries()) {
    if (options.relations.empty() ||
        std::find(options.relations.begin(), options.relations.end(), q.relation) !=
            options.relations.end())
      queries.push_back(q);
  }

  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const Scene& scene = scenes[i];
    std::uint64_t pair_index = 0;
    for (const SceneObject& f : scene.objects) {
      if (f.is_plane()) continue;
      for (const SceneObject& r : scene.objects) {
        if (&f == &r) continue;
        PairOracle oracle(f, r, scene.robot, cfg, options.samples,
                          mix(options.seed, (i << 16) + pair_index++), scene.objects);
        for (const Query& q : queries) {
          const std::optional<bool> engine = engine_relation(f, r, q, scene.robot, cfg, scene.objects);
          if (!engine) continue;
          const OracleAnswer o = oracle.answer(q);
          ++report.checks;
          if (!o.decisive()) ++report.inconclusive;
          if (*engine == o.holds) {
            ++report.agreements;
            continue;
          }
          CheckRecord rec{i, f.id, r.id, to_string(q), *engine, o.holds, o.margin, o.band};
          (o.decisive() ? report.out_of_band_disagreements : report.in_band_disagreements)
              .push_back(std::move(rec));
        }
      }
    }
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string AgreementReport::to_json() const {
  using nlohmann::ordered_json;
  auto records = [](const std::vector<CheckRecord>& list) {
    ordered_json arr = ordered_json::array();
    for (const CheckRecord& r : list) {
      arr.push_back({{"scene", r.scene},
                     {"figure", r.figure},
                     {"reference", r.reference},
                     {"relation", r.query},
                     {"engine", r.engine},
                     {"oracle", r.oracle},
                     {"margin", std::min(r.margin, kCertain)},
                     {"band", r.band}});
    }
    return arr;
  };
  ordered_json j;
  j["seed"] = seed;
  j["scenes"] = scenes;
  j["samples"] = samples;
  j["checks"] = checks;
  j["agreements"] = agreements;
  j["inconclusive"] = inconclusive;
  j["passed"] = passed();
  j["out_of_band_disagreements"] = records(out_of_band_disagreements);
  j["in_band_disagreements"] = records(in_band_disagreements);
  return j.dump(2) + "\n";
}

}  // namespace qsr::oracle
