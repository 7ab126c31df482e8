#include "cheeger/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cheeger/error.hpp"
#include "cheeger/grid_cheeger.hpp"
#include "cheeger/strips.hpp"

namespace cheeger {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

constexpr double kPi = std::numbers::pi;

// Half-angles subtended at each center by the chord joining the two circle
// intersection points.
std::pair<double, double> lens_half_angles(const Disk& a, const Disk& b) {
  const double d = norm(b.center - a.center);
  const double ca = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d * a.radius);
  const double cb = (d * d + b.radius * b.radius - a.radius * a.radius) / (2.0 * d * b.radius);
  return {std::acos(std::clamp(ca, -1.0, 1.0)), std::acos(std::clamp(cb, -1.0, 1.0))};
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::convex_exact: return "convex_exact";
    case Method::grid_dinkelbach: return "grid_dinkelbach";
    case Method::strip_inner: return "strip_inner";
  }
  return "unknown";
}

const char* variant_name(const DomainSpec& spec) {
  return std::visit(overloaded{[](const PolygonShape&) { return "polygon"; },
                               [](const DisksShape&) { return "disks"; },
                               [](const StripShape&) { return "strip"; },
                               [](const MaskShape&) { return "mask"; }},
                    spec.shape);
}

void validate(const DomainSpec& spec) {
  if (const auto* p = std::get_if<PolygonShape>(&spec.shape)) {
    if (p->vertices.size() < 3) throw Error(Errc::invalid_body, "polygon needs at least 3 vertices");
    for (const auto& v : p->vertices) {
      if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw Error(Errc::invalid_body, "non-finite polygon vertex");
    }
    if (!ring_is_simple(p->vertices)) throw Error(Errc::invalid_body, "polygon is self-intersecting");
    if (std::abs(signed_area(p->vertices)) <= kGeomTol) throw Error(Errc::invalid_body, "polygon has zero area");
  } else if (const auto* d = std::get_if<DisksShape>(&spec.shape)) {
    const auto& disks = d->disks;
    if (disks.empty()) throw Error(Errc::invalid_body, "disk union needs at least one disk");
    for (const auto& disk : disks) {
      if (!(disk.radius > 0.0) || !std::isfinite(disk.radius) || !std::isfinite(disk.center.x) ||
          !std::isfinite(disk.center.y)) {
        throw Error(Errc::invalid_body, "disk radius must be positive and finite");
      }
    }
    for (std::size_t i = 0; i < disks.size(); ++i) {
      for (std::size_t j = i + 1; j < disks.size(); ++j) {
        const double dist = norm(disks[i].center - disks[j].center);
        const bool disjoint = dist >= disks[i].radius + disks[j].radius - kGeomTol;
        if (disjoint) continue;
        std::ostringstream msg;
        if (disks.size() > 2) {
          msg << "disks " << i << " and " << j << " overlap; only a pair of disks may overlap";
          throw Error(Errc::invalid_body, msg.str());
        }
        if (dist <= std::abs(disks[i].radius - disks[j].radius) + kGeomTol) {
          msg << "disk " << (disks[i].radius < disks[j].radius ? i : j) << " lies inside the other";
          throw Error(Errc::invalid_body, msg.str());
        }
      }
    }
  } else if (const auto* s = std::get_if<StripShape>(&spec.shape)) {
    build_strip(s->spine, s->halfwidth);
  }
}

BoundingBox bounding_box(const DomainSpec& spec) {
  auto grow = [](BoundingBox& b, Vec2 p) {
    b.min = {std::min(b.min.x, p.x), std::min(b.min.y, p.y)};
    b.max = {std::max(b.max.x, p.x), std::max(b.max.y, p.y)};
  };
  return std::visit(
      overloaded{
          [&](const PolygonShape& p) {
            BoundingBox b{p.vertices.front(), p.vertices.front()};
            for (const auto& v : p.vertices) grow(b, v);
            return b;
          },
          [&](const DisksShape& d) {
            const auto& f = d.disks.front();
            BoundingBox b{f.center, f.center};
            for (const auto& disk : d.disks) {
              grow(b, disk.center - Vec2{disk.radius, disk.radius});
              grow(b, disk.center + Vec2{disk.radius, disk.radius});
            }
            return b;
          },
          [&](const StripShape& s) {
            const Strip strip = build_strip(s.spine, s.halfwidth);
            const auto ring = strip.outline();
            BoundingBox b{strip.scale() * ring.front(), strip.scale() * ring.front()};
            for (const auto& v : ring) grow(b, strip.scale() * v);
            return b;
          },
          [&](const MaskShape& m) {
            const auto& g = m.grid;
            return BoundingBox{g.origin(), g.origin() + g.spacing() * Vec2{double(g.width()), double(g.height())}};
          }},
      spec.shape);
}

Measures domain_measures(const DomainSpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{
          [](const PolygonShape& p) {
            return Measures{std::abs(signed_area(p.vertices)), ring_perimeter(p.vertices)};
          },
          [](const DisksShape& d) {
            const auto& disks = d.disks;
            if (disks.size() == 2) {
              const double dist = norm(disks[1].center - disks[0].center);
              if (dist < disks[0].radius + disks[1].radius) {
                const auto [a0, a1] = lens_half_angles(disks[0], disks[1]);
                const double r0 = disks[0].radius, r1 = disks[1].radius;
                const double lens = r0 * r0 * (a0 - std::sin(a0) * std::cos(a0)) +
                                    r1 * r1 * (a1 - std::sin(a1) * std::cos(a1));
                return Measures{kPi * (r0 * r0 + r1 * r1) - lens, 2.0 * r0 * (kPi - a0) + 2.0 * r1 * (kPi - a1)};
              }
            }
            Measures m;
            for (const auto& disk : disks) {
              m.area += kPi * disk.radius * disk.radius;
              m.perimeter += 2.0 * kPi * disk.radius;
            }
            return m;
          },
          [](const StripShape& s) {
            const Strip strip = build_strip(s.spine, s.halfwidth);
            const Measures m = strip_measures(strip);
            return Measures{m.area * strip.scale() * strip.scale(), m.perimeter * strip.scale()};
          },
          [](const MaskShape& m) {
            const auto w = neighborhood_weights(16, m.grid.spacing());
            return discrete_measures(m.grid.mask(), m.grid, w);
          }},
      spec.shape);
}

std::optional<ConvexBody> as_convex_body(const DomainSpec& spec) {
  if (const auto* p = std::get_if<PolygonShape>(&spec.shape)) {
    if (!is_convex(p->vertices)) return std::nullopt;
    return ConvexBody::polygon(p->vertices);
  }
  if (const auto* d = std::get_if<DisksShape>(&spec.shape)) {
    if (d->disks.size() == 1) return ConvexBody::disk(d->disks.front().center, d->disks.front().radius);
  }
  return std::nullopt;
}

}  // namespace cheeger
