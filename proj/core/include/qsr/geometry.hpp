#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsr {

/// Tolerance for geometric identity (meters, and radians for angle checks).
inline constexpr double kGeomEps = 1e-6;
/// Volumes below this are treated as zero (cubic meters).
inline constexpr double kVolumeEps = 1e-9;
/// Extent given to axes a degenerate point cloud does not span.
inline constexpr double kMinHalfExtent = 1e-3;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wraps an angle into [0, 2π).
double normalize_angle(double radians);

/// Wraps an angle into (-π, π].
double signed_angle(double radians);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 rotate(Vec2 v, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// A geometrical point; coordinates are meters in whatever frame the caller
/// states. All library values are expressed in the global frame unless a
/// function says otherwise.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  [[nodiscard]] bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
  [[nodiscard]] Vec2 xy() const { return {x, y}; }

  friend Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(Point3, Point3) = default;
};

inline double distance(Point3 a, Point3 b) {
  const Point3 d = a - b;
  return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

struct HalfExtents {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(HalfExtents, HalfExtents) = default;
};

/// Convex polygon in the XY plane, counterclockwise, without repeated or
/// collinear vertices. May be empty when produced by a clip.
class ConvexPolygon2D {
 public:
  ConvexPolygon2D() = default;

  /// Takes vertices already known to be convex and CCW. Near-duplicate and
  /// collinear vertices are dropped; fewer than 3 survivors leave it empty.
  static ConvexPolygon2D from_ccw(std::vector<Vec2> vertices);

  [[nodiscard]] const std::vector<Vec2>& vertices() const { return vertices_; }
  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] bool empty() const { return vertices_.size() < 3; }
  [[nodiscard]] double area() const;
  [[nodiscard]] Vec2 centroid() const;
  /// Inclusive membership with tolerance `eps` (meters).
  [[nodiscard]] bool contains(Vec2 p, double eps = kGeomEps) const;

 private:
  std::vector<Vec2> vertices_;
};

/// 2D convex hull, CCW, minimal vertex set.
/// Throws DegenerateInput when fewer than 3 non-collinear points are given.
ConvexPolygon2D convex_hull_2d(std::span<const Vec2> points);

/// Intersection of two convex polygons (possibly empty).
ConvexPolygon2D clip_polygon(const ConvexPolygon2D& subject, const ConvexPolygon2D& clip);

/// Minimum Euclidean distance between two convex polygons; 0 when they
/// overlap or touch.
double polygon_distance(const ConvexPolygon2D& a, const ConvexPolygon2D& b);

struct OrientedRect {
  Vec2 center;
  double half_x = 0.0;  ///< along the rectangle's local X, i.e. (cos yaw, sin yaw)
  double half_y = 0.0;
  double yaw = 0.0;     ///< in [0, π/2)

  [[nodiscard]] double area() const { return 4.0 * half_x * half_y; }
};

/// Minimum-area enclosing rectangle of a convex polygon (rotating calipers).
/// Among equal-area candidates the smallest yaw wins.
OrientedRect min_oriented_rect(const ConvexPolygon2D& poly);

/// Convex right prism: a convex XY footprint extruded over [z_min, z_max].
/// Every region the engine builds (boxes, halfspaces, intersections, shells)
/// is one of these, so all regions are convex and internally connected.
struct ConvexPrism {
  ConvexPolygon2D footprint;
  double z_min = 0.0;
  double z_max = 0.0;

  [[nodiscard]] bool empty() const { return footprint.empty() || z_max <= z_min; }
  [[nodiscard]] double volume() const {
    return empty() ? 0.0 : footprint.area() * (z_max - z_min);
  }
  [[nodiscard]] Point3 centroid() const;
  /// Uniform scaling about the centroid by `factor` in all three axes.
  [[nodiscard]] ConvexPrism scaled(double factor) const;
};

ConvexPrism intersect(const ConvexPrism& a, const ConvexPrism& b);

/// A box whose base is parallel to the global XY plane, rotated by `yaw`
/// about the vertical axis through its center.
class OrientedBox {
 public:
  OrientedBox() = default;
  /// Throws std::invalid_argument for non-finite input or non-positive extents.
  OrientedBox(Point3 center, HalfExtents half_extents, double yaw);

  /// Axis-aligned box spanning [lo, hi].
  static OrientedBox from_bounds(Point3 lo, Point3 hi);

  [[nodiscard]] Point3 center() const { return center_; }
  [[nodiscard]] HalfExtents half_extents() const { return half_; }
  [[nodiscard]] double yaw() const { return yaw_; }

  [[nodiscard]] double volume() const { return 8.0 * half_.x * half_.y * half_.z; }
  [[nodiscard]] double z_min() const { return center_.z - half_.z; }
  [[nodiscard]] double z_max() const { return center_.z + half_.z; }
  [[nodiscard]] Vec2 axis_x() const { return {std::cos(yaw_), std::sin(yaw_)}; }
  [[nodiscard]] Vec2 axis_y() const { return {-std::sin(yaw_), std::cos(yaw_)}; }
  /// Largest distance between two points of the box.
  [[nodiscard]] double diameter() const {
    return 2.0 * std::sqrt(half_.x * half_.x + half_.y * half_.y + half_.z * half_.z);
  }

  /// Corners: bottom face CCW, then top face CCW.
  [[nodiscard]] std::array<Point3, 8> corners() const;
  [[nodiscard]] ConvexPolygon2D footprint() const;
  [[nodiscard]] ConvexPrism to_prism() const;
  /// Coordinates of `p` in the box's own frame (origin at center).
  [[nodiscard]] Point3 to_local(Point3 p) const;
  [[nodiscard]] bool contains(Point3 p, double eps = kGeomEps) const;

 private:
  Point3 center_;
  HalfExtents half_{kMinHalfExtent, kMinHalfExtent, kMinHalfExtent};
  double yaw_ = 0.0;
};

/// True when both boxes describe the same solid: corner sets match within eps.
bool same_solid(const OrientedBox& a, const OrientedBox& b, double eps = kGeomEps);

/// Minimum-area XY rectangle extruded from the lowest to the highest point.
/// Axes the cloud does not span are inflated to kMinHalfExtent.
OrientedBox fit_min_oriented_box(std::span<const Point3> points);

double box_distance(const OrientedBox& a, const OrientedBox& b);
double box_intersection_volume(const OrientedBox& a, const OrientedBox& b);
ConvexPrism box_intersection(const OrientedBox& a, const OrientedBox& b);

/// Rigid rotation by `theta` about the vertical line through `origin`.
OrientedBox rotate_box_about_axis(const OrientedBox& b, Point3 origin, double theta);

}  // namespace qsr
