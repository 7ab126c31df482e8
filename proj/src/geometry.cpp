#include "cheeger/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "cheeger/error.hpp"

namespace cheeger {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_body: return "invalid-body";
    case Errc::invalid_region: return "invalid-region";
    case Errc::not_convex: return "not-convex";
    case Errc::resolution_too_coarse: return "resolution-too-coarse";
    case Errc::domain_violation: return "domain-violation";
    case Errc::unsupported_order: return "unsupported-order";
    case Errc::convergence_failure: return "convergence-failure";
    case Errc::curvature_violation: return "curvature-violation";
    case Errc::crossing: return "crossing";
    case Errc::unknown_example: return "unknown-example";
    case Errc::parse_error: return "parse-error";
    case Errc::io_error: return "io-error";
  }
  return "error";
}

namespace {

constexpr double kPi = std::numbers::pi;

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({norm(b - a), norm(c - a), 1.0});
  if (std::abs(v) <= 1e-14 * scale * scale) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) - kGeomTol <= p.x && p.x <= std::max(a.x, b.x) + kGeomTol &&
         std::min(a.y, b.y) - kGeomTol <= p.y && p.y <= std::max(a.y, b.y) + kGeomTol;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

// Drops repeated points and vertices lying on the segment joining their
// neighbours, until the ring is stable.
std::vector<Vec2> merge_degenerate(std::vector<Vec2> ring) {
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < ring.size() && ring.size() >= 3; ++i) {
      const std::size_t n = ring.size();
      const Vec2 prev = ring[(i + n - 1) % n];
      const Vec2 cur = ring[i];
      const Vec2 next = ring[(i + 1) % n];
      const double span = norm(next - prev);
      const bool duplicate = norm(cur - prev) <= kGeomTol;
      const bool collinear = span > kGeomTol && std::abs(cross(next - prev, cur - prev)) / span <= kGeomTol &&
                             dot(cur - prev, next - cur) >= 0.0;
      if (duplicate || collinear) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
  return ring;
}

// Sutherland-Hodgman clip of a convex ring against {x : dot(x - p, n) >= 0}.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& ring, Vec2 p, Vec2 n) {
  std::vector<Vec2> out;
  out.reserve(ring.size() + 1);
  const std::size_t m = ring.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[(i + 1) % m];
    const double da = dot(a - p, n);
    const double db = dot(b - p, n);
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

std::vector<Vec2> eroded_ring(const std::vector<Vec2>& vertices, double r) {
  std::vector<Vec2> ring = vertices;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n && ring.size() >= 3; ++i) {
    const Vec2 a = vertices[i];
    const Vec2 b = vertices[(i + 1) % n];
    const Vec2 inward = perp_ccw(b - a) / norm(b - a);
    ring = clip_halfplane(ring, a + r * inward, inward);
  }
  return ring;
}

}  // namespace

double eroded_area(const ConvexBody& body, double r) {
  if (body.is_disk()) {
    const double rr = body.as_disk().radius - r;
    return rr > 0.0 ? kPi * rr * rr : 0.0;
  }
  if (r <= 0.0) return signed_area(body.vertices());
  const auto ring = eroded_ring(body.vertices(), r);
  if (ring.size() < 3) return 0.0;
  return std::max(0.0, signed_area(ring));
}

double signed_area(std::span<const Vec2> ring) {
  double twice = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross(ring[i], ring[(i + 1) % n]);
  return 0.5 * twice;
}

double ring_perimeter(std::span<const Vec2> ring) {
  double len = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) len += norm(ring[(i + 1) % n] - ring[i]);
  return len;
}

bool ring_is_simple(std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[(i + 1) % n];
    if (norm(b - a) <= kGeomTol) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 c = ring[j];
      const Vec2 d = ring[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges may only share their common endpoint: reject a
        // fold-back onto the previous edge.
        const Vec2 shared = (j == i + 1) ? b : a;
        const Vec2 u = (j == i + 1) ? a : b;
        const Vec2 w = (j == i + 1) ? d : c;
        if (orientation(u, shared, w) == 0 && dot(u - shared, w - shared) > 0.0) return false;
        continue;
      }
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

bool is_convex(std::span<const Vec2> vertices) {
  if (vertices.size() < 3) throw Error(Errc::invalid_body, "a polygon needs at least 3 vertices");
  if (!ring_is_simple(vertices)) throw Error(Errc::invalid_body, "polygon is self-intersecting");
  const std::size_t n = vertices.size();
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices[i];
    const Vec2 b = vertices[(i + 1) % n];
    const Vec2 c = vertices[(i + 2) % n];
    const double z = cross(b - a, c - b);
    if (z == 0.0) continue;
    const int s = z > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    else if (s != sign) return false;
  }
  return sign != 0;
}

ConvexBody ConvexBody::polygon(std::vector<Vec2> vertices) {
  if (vertices.size() < 3) throw Error(Errc::invalid_body, "a polygon needs at least 3 vertices");
  for (const auto& v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw Error(Errc::invalid_body, "non-finite vertex");
  }
  auto ring = merge_degenerate(std::move(vertices));
  if (ring.size() < 3) throw Error(Errc::invalid_body, "polygon collapses to fewer than 3 vertices");
  if (!ring_is_simple(ring)) throw Error(Errc::invalid_body, "polygon is self-intersecting");
  const double area = signed_area(ring);
  if (std::abs(area) <= kGeomTol * kGeomTol) throw Error(Errc::invalid_body, "polygon has zero area");
  if (area < 0) std::reverse(ring.begin(), ring.end());
  if (!is_convex(ring)) throw Error(Errc::not_convex, "polygon has a reflex vertex");
  return ConvexBody(std::move(ring));
}

ConvexBody ConvexBody::disk(Vec2 center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(Errc::invalid_body, "disk radius must be positive");
  return ConvexBody(Disk{center, radius});
}

ConvexBody ConvexBody::point(Vec2 p) { return ConvexBody(Disk{p, 0.0}); }

ConvexBody ConvexBody::scaled(double factor) const {
  if (is_disk()) {
    const auto& d = as_disk();
    return ConvexBody(Disk{factor * d.center, factor * d.radius});
  }
  std::vector<Vec2> v = vertices();
  for (auto& p : v) p = factor * p;
  return ConvexBody(std::move(v));
}

ConvexBody ConvexBody::translated(Vec2 offset) const {
  if (is_disk()) {
    const auto& d = as_disk();
    return ConvexBody(Disk{d.center + offset, d.radius});
  }
  std::vector<Vec2> v = vertices();
  for (auto& p : v) p += offset;
  return ConvexBody(std::move(v));
}

Measures polygon_measures(const ConvexBody& body) {
  if (body.is_disk()) {
    const double r = body.as_disk().radius;
    if (r <= 0.0) throw Error(Errc::invalid_body, "degenerate disk has zero area");
    return {kPi * r * r, 2.0 * kPi * r};
  }
  const auto& v = body.vertices();
  const double area = signed_area(v);
  if (area <= 0.0) throw Error(Errc::invalid_body, "polygon has zero area");
  return {area, ring_perimeter(v)};
}

std::optional<ConvexBody> inner_parallel_body(const ConvexBody& body, double r) {
  if (r < 0.0) throw Error(Errc::invalid_body, "erosion radius must be non-negative");
  if (body.is_disk()) {
    const auto& d = body.as_disk();
    if (r >= d.radius) return std::nullopt;
    return ConvexBody::disk(d.center, d.radius - r);
  }
  if (r == 0.0) return body;
  auto ring = eroded_ring(body.vertices(), r);
  if (ring.size() < 3 || signed_area(ring) <= 0.0) return std::nullopt;
  try {
    return ConvexBody::polygon(std::move(ring));
  } catch (const Error&) {
    // Sliver below the coincidence tolerance: numerically empty.
    return std::nullopt;
  }
}

double inradius(const ConvexBody& body) {
  if (body.is_disk()) return body.as_disk().radius;
  double lo = 0.0;
  double hi = ring_perimeter(body.vertices());
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    // Emptiness from the clipped ring itself: its area drops below rounding
    // level well before the ring vanishes.
    if (eroded_ring(body.vertices(), mid).size() >= 3) lo = mid;
    else hi = mid;
  }
  return hi;
}

bool contains(const ConvexBody& body, Vec2 p, double tol) {
  if (body.is_disk()) {
    const auto& d = body.as_disk();
    return norm(p - d.center) <= d.radius + tol;
  }
  const auto& v = body.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = v[(i + 1) % n] - v[i];
    if (cross(e, p - v[i]) < -tol * norm(e)) return false;
  }
  return true;
}

Vec2 start_point(const BoundaryElement& e) {
  return std::visit([](const auto& el) -> Vec2 {
    using T = std::decay_t<decltype(el)>;
    if constexpr (std::is_same_v<T, Segment>) return el.p0;
    else return el.first();
  }, e);
}

Vec2 end_point(const BoundaryElement& e) {
  return std::visit([](const auto& el) -> Vec2 {
    using T = std::decay_t<decltype(el)>;
    if constexpr (std::is_same_v<T, Segment>) return el.p1;
    else return el.last();
  }, e);
}

Measures region_measures(std::span<const BoundaryElement> boundary) {
  if (boundary.empty()) throw Error(Errc::invalid_region, "empty boundary");
  const std::size_t n = boundary.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double gap = norm(end_point(boundary[i]) - start_point(boundary[(i + 1) % n]));
    if (gap > kGeomTol) {
      std::ostringstream msg;
      msg << "boundary is open after element " << i << " (gap " << gap << ")";
      throw Error(Errc::invalid_region, msg.str());
    }
  }
  double twice_area = 0.0;
  double length = 0.0;
  for (const auto& e : boundary) {
    if (const auto* s = std::get_if<Segment>(&e)) {
      twice_area += cross(s->p0, s->p1);
      length += norm(s->p1 - s->p0);
    } else {
      const auto& a = std::get<Arc>(e);
      const double R = a.radius;
      twice_area += R * R * (a.end - a.start) +
                    R * (a.center.x * (std::sin(a.end) - std::sin(a.start)) -
                         a.center.y * (std::cos(a.end) - std::cos(a.start)));
      length += R * a.sweep();
    }
  }
  return {0.5 * twice_area, length};
}

RoundedRegion::RoundedRegion(std::vector<BoundaryElement> boundary) : boundary_(std::move(boundary)) {
  measures_ = region_measures(boundary_);
  if (!(measures_.area > 0.0)) throw Error(Errc::invalid_region, "boundary must enclose positive area counter-clockwise");
}

std::size_t RoundedRegion::segment_count() const {
  return static_cast<std::size_t>(std::count_if(boundary_.begin(), boundary_.end(),
                                                [](const auto& e) { return std::holds_alternative<Segment>(e); }));
}

std::size_t RoundedRegion::arc_count() const { return boundary_.size() - segment_count(); }

namespace {

double angle_in_sweep(const Arc& a, double theta) {
  // Returns the parameter offset of theta from a.start along the arc
  // direction in [0, 2pi).
  double d = a.ccw ? theta - a.start : a.start - theta;
  d = std::fmod(d, 2.0 * kPi);
  if (d < 0) d += 2.0 * kPi;
  return d;
}

double distance_to_element(const BoundaryElement& e, Vec2 p) {
  if (const auto* s = std::get_if<Segment>(&e)) {
    const Vec2 d = s->p1 - s->p0;
    const double len2 = dot(d, d);
    const double t = len2 > 0 ? std::clamp(dot(p - s->p0, d) / len2, 0.0, 1.0) : 0.0;
    return norm(p - (s->p0 + t * d));
  }
  const auto& a = std::get<Arc>(e);
  const double theta = std::atan2(p.y - a.center.y, p.x - a.center.x);
  if (angle_in_sweep(a, theta) <= a.sweep()) return std::abs(norm(p - a.center) - a.radius);
  return std::min(norm(p - a.first()), norm(p - a.last()));
}

}  // namespace

bool RoundedRegion::contains(Vec2 p, double tol) const {
  for (const auto& e : boundary_) {
    if (distance_to_element(e, p) <= tol) return true;
  }
  // Ray to +x; count crossings with half-open rules to avoid double counts.
  int crossings = 0;
  for (const auto& e : boundary_) {
    if (const auto* s = std::get_if<Segment>(&e)) {
      const Vec2 a = s->p0;
      const Vec2 b = s->p1;
      if ((a.y > p.y) != (b.y > p.y)) {
        const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (x > p.x) ++crossings;
      }
      continue;
    }
    const auto& a = std::get<Arc>(e);
    const double dy = p.y - a.center.y;
    if (std::abs(dy) >= a.radius) continue;
    const double dx = std::sqrt(a.radius * a.radius - dy * dy);
    for (const double sx : {-dx, dx}) {
      const double x = a.center.x + sx;
      if (x <= p.x) continue;
      const double theta = std::atan2(dy, sx);
      const double off = angle_in_sweep(a, theta);
      if (off < a.sweep()) ++crossings;
    }
  }
  return (crossings % 2) == 1;
}

std::vector<Vec2> RoundedRegion::polyline(double max_chord_error) const {
  std::vector<Vec2> out;
  for (const auto& e : boundary_) {
    if (const auto* s = std::get_if<Segment>(&e)) {
      out.push_back(s->p0);
      continue;
    }
    const auto& a = std::get<Arc>(e);
    // Chord sagitta R(1 - cos(dphi/2)) <= err.
    const double ratio = std::clamp(1.0 - max_chord_error / std::max(a.radius, 1e-300), -1.0, 1.0);
    const double max_step = std::max(2.0 * std::acos(ratio), 1e-3);
    const int pieces = std::max(1, static_cast<int>(std::ceil(a.sweep() / max_step)));
    for (int k = 0; k < pieces; ++k) {
      out.push_back(a.point_at(a.start + (a.end - a.start) * k / pieces));
    }
  }
  return out;
}

RoundedRegion circle_region(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw Error(Errc::invalid_region, "circle radius must be positive");
  return RoundedRegion({Arc{center, radius, -kPi / 2, kPi / 2, true}, Arc{center, radius, kPi / 2, 3 * kPi / 2, true}});
}

RoundedRegion polygon_region(std::span<const Vec2> ring) {
  std::vector<BoundaryElement> elems;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) elems.emplace_back(Segment{ring[i], ring[(i + 1) % n]});
  return RoundedRegion(std::move(elems));
}

RoundedRegion minkowski_disk_sum(const ConvexBody& body, double r) {
  if (r < 0.0) throw Error(Errc::invalid_region, "dilation radius must be non-negative");
  if (body.is_disk()) {
    const auto& d = body.as_disk();
    return circle_region(d.center, d.radius + r);
  }
  const auto& v = body.vertices();
  if (r == 0.0) return polygon_region(v);
  const std::size_t n = v.size();
  std::vector<Vec2> outward(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = v[(i + 1) % n] - v[i];
    outward[i] = -perp_ccw(e) / norm(e);
  }
  std::vector<BoundaryElement> elems;
  elems.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    elems.emplace_back(Segment{v[i] + r * outward[i], v[j] + r * outward[i]});
    const double a0 = std::atan2(outward[i].y, outward[i].x);
    double a1 = std::atan2(outward[j].y, outward[j].x);
    while (a1 <= a0) a1 += 2.0 * kPi;
    elems.emplace_back(Arc{v[j], r, a0, a1, true});
  }
  return RoundedRegion(std::move(elems));
}

}  // namespace cheeger
