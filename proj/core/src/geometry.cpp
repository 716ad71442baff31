#include "qsr/geometry.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace qsr {

namespace {

// Vertex cleanup tolerance for clip results; far below kGeomEps so clipped
// areas are not disturbed.
constexpr double kCleanEps = 1e-10;

double point_line_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len = norm(ab);
  if (len == 0.0) return norm(p - a);
  return std::abs(cross(ab, p - a)) / len;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return norm(p - a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

OrientedRect rect_at_yaw(std::span<const Vec2> pts, double yaw) {
  const Vec2 u{std::cos(yaw), std::sin(yaw)};
  const Vec2 v{-u.y, u.x};
  double umin = std::numeric_limits<double>::infinity(), umax = -umin;
  double vmin = umin, vmax = -umin;
  for (const Vec2& p : pts) {
    const double pu = dot(p, u), pv = dot(p, v);
    umin = std::min(umin, pu);
    umax = std::max(umax, pu);
    vmin = std::min(vmin, pv);
    vmax = std::max(vmax, pv);
  }
  OrientedRect r;
  r.center = 0.5 * (umin + umax) * u + 0.5 * (vmin + vmax) * v;
  r.half_x = 0.5 * (umax - umin);
  r.half_y = 0.5 * (vmax - vmin);
  r.yaw = yaw;
  return r;
}

// Direction angle folded into [0, π/2).
double quarter_yaw(Vec2 dir) {
  double yaw = std::fmod(std::atan2(dir.y, dir.x), kHalfPi);
  if (yaw < 0.0) yaw += kHalfPi;
  if (yaw >= kHalfPi - 1e-12) yaw = 0.0;
  return yaw;
}

auto box_key(const OrientedBox& b) {
  const Point3 c = b.center();
  const HalfExtents h = b.half_extents();
  return std::make_tuple(c.x, c.y, c.z, h.x, h.y, h.z, b.yaw());
}

}  // namespace

double normalize_angle(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double signed_angle(double radians) {
  double r = normalize_angle(radians);
  if (r > kPi) r -= kTwoPi;
  return r;
}

// ---------------------------------------------------------------------------
// ConvexPolygon2D

ConvexPolygon2D ConvexPolygon2D::from_ccw(std::vector<Vec2> vertices) {
  ConvexPolygon2D poly;
  bool changed = true;
  while (changed && vertices.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < vertices.size() && vertices.size() >= 3; ++i) {
      const std::size_t n = vertices.size();
      const Vec2 prev = vertices[(i + n - 1) % n];
      const Vec2 cur = vertices[i];
      const Vec2 next = vertices[(i + 1) % n];
      if (norm(cur - prev) < kCleanEps || point_line_distance(cur, prev, next) < kCleanEps) {
        vertices.erase(vertices.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (vertices.size() >= 3) poly.vertices_ = std::move(vertices);
  if (!poly.empty() && poly.area() <= 0.0) poly.vertices_.clear();
  return poly;
}

double ConvexPolygon2D::area() const {
  if (empty()) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0, n = vertices_.size(); i < n; ++i)
    twice += cross(vertices_[i], vertices_[(i + 1) % n]);
  return 0.5 * twice;
}

Vec2 ConvexPolygon2D::centroid() const {
  if (empty()) {
    Vec2 sum;
    for (const Vec2& v : vertices_) sum = sum + v;
    return vertices_.empty() ? sum : (1.0 / static_cast<double>(vertices_.size())) * sum;
  }
  // Fan triangulation from the first vertex keeps the terms well conditioned.
  const Vec2 o = vertices_.front();
  double twice_area = 0.0;
  Vec2 acc;
  for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
    const Vec2 a = vertices_[i] - o, b = vertices_[i + 1] - o;
    const double w = cross(a, b);
    twice_area += w;
    acc = acc + (w / 3.0) * (a + b);
  }
  return o + (1.0 / twice_area) * acc;
}

bool ConvexPolygon2D::contains(Vec2 p, double eps) const {
  if (empty()) return false;
  for (std::size_t i = 0, n = vertices_.size(); i < n; ++i) {
    const Vec2 a = vertices_[i], b = vertices_[(i + 1) % n];
    const Vec2 ab = b - a;
    if (cross(ab, p - a) < -eps * norm(ab)) return false;
  }
  return true;
}

ConvexPolygon2D convex_hull_2d(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DegenerateInput("convex hull needs at least 3 distinct points");

  // Monotone chain; a vertex within kGeomEps of the chord is dropped.
  auto turns_left = [](Vec2 o, Vec2 a, Vec2 b) {
    const Vec2 ob = b - o;
    const double len = norm(ob);
    return cross(a - o, ob) > kGeomEps * len;
  };
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2 p = pts[i];
    while (k >= lower && !turns_left(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  hull.resize(k > 0 ? k - 1 : 0);
  if (hull.size() < 3) throw DegenerateInput("points are collinear");
  ConvexPolygon2D poly = ConvexPolygon2D::from_ccw(std::move(hull));
  if (poly.empty()) throw DegenerateInput("points are collinear");
  return poly;
}

ConvexPolygon2D clip_polygon(const ConvexPolygon2D& subject, const ConvexPolygon2D& clip) {
  if (subject.empty() || clip.empty()) return {};
  std::vector<Vec2> output = subject.vertices();
  const auto& cv = clip.vertices();
  for (std::size_t i = 0, n = cv.size(); i < n && !output.empty(); ++i) {
    const Vec2 a = cv[i], b = cv[(i + 1) % n];
    const Vec2 edge = b - a;
    auto side = [&](Vec2 p) { return cross(edge, p - a); };
    std::vector<Vec2> input;
    input.swap(output);
    for (std::size_t j = 0, m = input.size(); j < m; ++j) {
      const Vec2 p = input[j], q = input[(j + 1) % m];
      const double sp = side(p), sq = side(q);
      if (sp >= 0.0) output.push_back(p);
      if ((sp >= 0.0) != (sq >= 0.0)) {
        const double t = sp / (sp - sq);
        output.push_back(p + t * (q - p));
      }
    }
  }
  return ConvexPolygon2D::from_ccw(std::move(output));
}

double polygon_distance(const ConvexPolygon2D& a, const ConvexPolygon2D& b) {
  // Separating-axis test over the edge normals of both polygons.
  auto separated_along = [](const ConvexPolygon2D& p, const ConvexPolygon2D& q) {
    const auto& pv = p.vertices();
    for (std::size_t i = 0, n = pv.size(); i < n; ++i) {
      const Vec2 e = pv[(i + 1) % n] - pv[i];
      const Vec2 normal{e.y, -e.x};  // outward for CCW
      double pmax = -std::numeric_limits<double>::infinity();
      for (const Vec2& v : pv) pmax = std::max(pmax, dot(v, normal));
      double qmin = std::numeric_limits<double>::infinity();
      for (const Vec2& v : q.vertices()) qmin = std::min(qmin, dot(v, normal));
      if (qmin > pmax) return true;
    }
    return false;
  };
  if (!separated_along(a, b) && !separated_along(b, a)) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  auto scan = [&best](const ConvexPolygon2D& p, const ConvexPolygon2D& q) {
    const auto& qv = q.vertices();
    for (const Vec2& v : p.vertices())
      for (std::size_t i = 0, n = qv.size(); i < n; ++i)
        best = std::min(best, point_segment_distance(v, qv[i], qv[(i + 1) % n]));
  };
  scan(a, b);
  scan(b, a);
  return best;
}

OrientedRect min_oriented_rect(const ConvexPolygon2D& poly) {
  const auto& v = poly.vertices();
  if (poly.empty()) throw DegenerateInput("min_oriented_rect needs a non-empty polygon");
  OrientedRect best;
  bool have = false;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const double yaw = quarter_yaw(v[(i + 1) % n] - v[i]);
    const OrientedRect r = rect_at_yaw(v, yaw);
    const double area = r.area();
    if (!have) {
      best = r;
      have = true;
      continue;
    }
    const double best_area = best.area();
    const double tie = 1e-9 * best_area;
    if (area < best_area - tie || (area <= best_area + tie && r.yaw < best.yaw)) best = r;
  }
  return best;
}

// ---------------------------------------------------------------------------
// ConvexPrism

Point3 ConvexPrism::centroid() const {
  const Vec2 c = footprint.centroid();
  return {c.x, c.y, 0.5 * (z_min + z_max)};
}

ConvexPrism ConvexPrism::scaled(double factor) const {
  const Point3 c = centroid();
  std::vector<Vec2> verts;
  verts.reserve(footprint.size());
  const Vec2 c2 = c.xy();
  for (const Vec2& v : footprint.vertices()) verts.push_back(c2 + factor * (v - c2));
  ConvexPrism out;
  out.footprint = ConvexPolygon2D::from_ccw(std::move(verts));
  const double half = 0.5 * (z_max - z_min) * factor;
  out.z_min = c.z - half;
  out.z_max = c.z + half;
  return out;
}

ConvexPrism intersect(const ConvexPrism& a, const ConvexPrism& b) {
  ConvexPrism out;
  out.z_min = std::max(a.z_min, b.z_min);
  out.z_max = std::min(a.z_max, b.z_max);
  if (out.z_max <= out.z_min) {
    out.z_max = out.z_min;
    return out;
  }
  out.footprint = clip_polygon(a.footprint, b.footprint);
  return out;
}

// ---------------------------------------------------------------------------
// OrientedBox

OrientedBox::OrientedBox(Point3 center, HalfExtents half_extents, double yaw)
    : center_(center), half_(half_extents), yaw_(normalize_angle(yaw)) {
  if (!center.is_finite() || !std::isfinite(yaw))
    throw std::invalid_argument("OrientedBox: non-finite center or yaw");
  if (!(half_.x > 0.0 && half_.y > 0.0 && half_.z > 0.0) || !std::isfinite(half_.x) ||
      !std::isfinite(half_.y) || !std::isfinite(half_.z))
    throw std::invalid_argument("OrientedBox: half extents must be finite and positive");
}

OrientedBox OrientedBox::from_bounds(Point3 lo, Point3 hi) {
  return OrientedBox(0.5 * (lo + hi),
                     {0.5 * (hi.x - lo.x), 0.5 * (hi.y - lo.y), 0.5 * (hi.z - lo.z)}, 0.0);
}

std::array<Point3, 8> OrientedBox::corners() const {
  const Vec2 u = axis_x(), v = axis_y();
  constexpr double sx[4] = {-1, 1, 1, -1};
  constexpr double sy[4] = {-1, -1, 1, 1};
  std::array<Point3, 8> out;
  for (int i = 0; i < 4; ++i) {
    const Vec2 p = center_.xy() + (sx[i] * half_.x) * u + (sy[i] * half_.y) * v;
    out[i] = {p.x, p.y, z_min()};
    out[i + 4] = {p.x, p.y, z_max()};
  }
  return out;
}

ConvexPolygon2D OrientedBox::footprint() const {
  const auto c = corners();
  return ConvexPolygon2D::from_ccw({c[0].xy(), c[1].xy(), c[2].xy(), c[3].xy()});
}

ConvexPrism OrientedBox::to_prism() const { return {footprint(), z_min(), z_max()}; }

Point3 OrientedBox::to_local(Point3 p) const {
  const Vec2 d = p.xy() - center_.xy();
  return {dot(d, axis_x()), dot(d, axis_y()), p.z - center_.z};
}

bool OrientedBox::contains(Point3 p, double eps) const {
  const Point3 l = to_local(p);
  return std::abs(l.x) <= half_.x + eps && std::abs(l.y) <= half_.y + eps &&
         std::abs(l.z) <= half_.z + eps;
}

bool same_solid(const OrientedBox& a, const OrientedBox& b, double eps) {
  const auto ca = a.corners(), cb = b.corners();
  auto covered = [eps](const std::array<Point3, 8>& from, const std::array<Point3, 8>& to) {
    return std::all_of(from.begin(), from.end(), [&](Point3 p) {
      return std::any_of(to.begin(), to.end(), [&](Point3 q) { return distance(p, q) <= eps; });
    });
  };
  return covered(ca, cb) && covered(cb, ca);
}

OrientedBox fit_min_oriented_box(std::span<const Point3> points) {
  if (points.empty()) throw std::invalid_argument("fit_min_oriented_box: no points");
  std::vector<Vec2> xy;
  xy.reserve(points.size());
  double zmin = std::numeric_limits<double>::infinity(), zmax = -zmin;
  for (const Point3& p : points) {
    if (!p.is_finite()) throw std::invalid_argument("fit_min_oriented_box: non-finite point");
    xy.push_back(p.xy());
    zmin = std::min(zmin, p.z);
    zmax = std::max(zmax, p.z);
  }

  OrientedRect rect;
  try {
    rect = min_oriented_rect(convex_hull_2d(xy));
  } catch (const DegenerateInput&) {
    const auto [lo, hi] = std::minmax_element(xy.begin(), xy.end(), [](Vec2 a, Vec2 b) {
      return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    const Vec2 dir = *hi - *lo;
    const double yaw = norm(dir) < kGeomEps ? 0.0 : quarter_yaw(dir);
    rect = rect_at_yaw(xy, yaw);
  }
  const HalfExtents half{std::max(rect.half_x, kMinHalfExtent),
                         std::max(rect.half_y, kMinHalfExtent),
                         std::max(0.5 * (zmax - zmin), kMinHalfExtent)};
  return OrientedBox({rect.center.x, rect.center.y, 0.5 * (zmin + zmax)}, half, rect.yaw);
}

double box_distance(const OrientedBox& a, const OrientedBox& b) {
  // One evaluation order per unordered pair keeps the result exactly symmetric.
  if (box_key(b) < box_key(a)) return box_distance(b, a);
  const double dxy = polygon_distance(a.footprint(), b.footprint());
  const double dz = std::max({0.0, a.z_min() - b.z_max(), b.z_min() - a.z_max()});
  return std::hypot(dxy, dz);
}

ConvexPrism box_intersection(const OrientedBox& a, const OrientedBox& b) {
  if (box_key(b) < box_key(a)) return box_intersection(b, a);
  return intersect(a.to_prism(), b.to_prism());
}

double box_intersection_volume(const OrientedBox& a, const OrientedBox& b) {
  return box_intersection(a, b).volume();
}

OrientedBox rotate_box_about_axis(const OrientedBox& b, Point3 origin, double theta) {
  if (theta == 0.0) return b;
  const Vec2 c = origin.xy() + rotate(b.center().xy() - origin.xy(), theta);
  return OrientedBox({c.x, c.y, b.center().z}, b.half_extents(), b.yaw() + theta);
}

}  // namespace qsr
