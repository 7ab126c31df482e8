#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace cheeger {

// Absolute coincidence tolerance in domain units, used by every closure and
// vertex-merge check.
inline constexpr double kGeomTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 perp_ccw(Vec2 a) { return {-a.y, a.x}; }

struct Measures {
  double area = 0.0;
  double perimeter = 0.0;
};

struct Disk {
  Vec2 center;
  double radius = 0.0;
};

// A convex polygon (counter-clockwise, strictly convex turns) or a disk.
// Construct through the factories, which validate and normalise input.
class ConvexBody {
public:
  // Merges duplicate and collinear vertices, reorients clockwise input and
  // rejects non-convex or self-intersecting rings.
  static ConvexBody polygon(std::vector<Vec2> vertices);
  static ConvexBody disk(Vec2 center, double radius);
  // Degenerate zero-radius disk; only meaningful as a Minkowski-sum operand.
  static ConvexBody point(Vec2 p);

  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }
  const std::vector<Vec2>& vertices() const { return std::get<std::vector<Vec2>>(shape_); }
  const Disk& as_disk() const { return std::get<Disk>(shape_); }

  ConvexBody scaled(double factor) const;
  ConvexBody translated(Vec2 offset) const;

private:
  explicit ConvexBody(std::variant<std::vector<Vec2>, Disk> s) : shape_(std::move(s)) {}
  std::variant<std::vector<Vec2>, Disk> shape_;
};

Measures polygon_measures(const ConvexBody& body);

// Signed shoelace area of an arbitrary ring (positive when counter-clockwise).
double signed_area(std::span<const Vec2> ring);
double ring_perimeter(std::span<const Vec2> ring);

// True iff all consecutive edge cross products share one sign. Throws
// invalid_body for fewer than three points or a self-intersecting ring.
bool is_convex(std::span<const Vec2> vertices);

bool ring_is_simple(std::span<const Vec2> ring);

// Points at distance > r from the boundary. std::nullopt once r reaches the
// inradius.
std::optional<ConvexBody> inner_parallel_body(const ConvexBody& body, double r);

// Area of the eroded body without building it; 0 once r reaches the inradius.
double eroded_area(const ConvexBody& body, double r);

// Radius of the largest inscribed disk, located as the smallest r at which
// the eroded body becomes empty.
double inradius(const ConvexBody& body);

bool contains(const ConvexBody& body, Vec2 p, double tol = kGeomTol);

struct Segment {
  Vec2 p0;
  Vec2 p1;
};

// Circular arc from angle `start` to `end`; for counter-clockwise arcs
// end > start and the sweep is end - start.
struct Arc {
  Vec2 center;
  double radius = 0.0;
  double start = 0.0;
  double end = 0.0;
  bool ccw = true;

  double sweep() const { return std::abs(end - start); }
  Vec2 point_at(double angle) const {
    return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
  }
  Vec2 first() const { return point_at(start); }
  Vec2 last() const { return point_at(end); }
};

using BoundaryElement = std::variant<Segment, Arc>;

Vec2 start_point(const BoundaryElement& e);
Vec2 end_point(const BoundaryElement& e);

// Closed boundary made of segments and circular arcs.
class RoundedRegion {
public:
  // Throws invalid_region unless consecutive elements join within kGeomTol.
  explicit RoundedRegion(std::vector<BoundaryElement> boundary);

  const std::vector<BoundaryElement>& boundary() const { return boundary_; }
  double area() const { return measures_.area; }
  double perimeter() const { return measures_.perimeter; }

  std::size_t segment_count() const;
  std::size_t arc_count() const;

  // Even-odd point membership, boundary counted as inside within tol.
  bool contains(Vec2 p, double tol = kGeomTol) const;

  // Flattened ring approximating the boundary; arcs split so that the chord
  // deviation is below `max_chord_error`.
  std::vector<Vec2> polyline(double max_chord_error = 1e-4) const;

private:
  std::vector<BoundaryElement> boundary_;
  Measures measures_;
};

// Exact area (Green's theorem) and length. Throws invalid_region on an open
// boundary.
Measures region_measures(std::span<const BoundaryElement> boundary);
inline Measures region_measures(const RoundedRegion& region) {
  return {region.area(), region.perimeter()};
}

// A full circle as two half-circle arcs, keeping every arc sweep <= pi.
RoundedRegion circle_region(Vec2 center, double radius);
RoundedRegion polygon_region(std::span<const Vec2> ring);

// body + B(0, r): edges pushed out by r joined by vertex arcs of radius r.
RoundedRegion minkowski_disk_sum(const ConvexBody& body, double r);

}  // namespace cheeger
