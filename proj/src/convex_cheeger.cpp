#include "cheeger/convex_cheeger.hpp"

#include <cmath>
#include <numbers>

#include "cheeger/error.hpp"

namespace cheeger {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRadiusTol = 1e-13;
constexpr int kMaxBisection = 200;

}  // namespace

double inner_area_profile(const ConvexBody& body, double r) {
  if (r < 0.0) throw Error(Errc::invalid_body, "erosion radius must be non-negative");
  return eroded_area(body, r);
}

CheegerRadius cheeger_radius(const ConvexBody& body) {
  CheegerRadius out;
  if (body.is_disk()) {
    const double R = body.as_disk().radius;
    if (!(R > 0.0)) throw Error(Errc::invalid_body, "a point has no Cheeger constant");
    out.r = 0.5 * R;
    out.h = 1.0 / out.r;
    return out;
  }
  const double area = polygon_measures(body).area;
  auto phi = [&](double r) { return eroded_area(body, r) - kPi * r * r; };
  double lo = 0.0;
  double hi = inradius(body);
  while (hi - lo > kRadiusTol && out.iterations < kMaxBisection) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) > 0.0) lo = mid;
    else hi = mid;
    ++out.iterations;
  }
  out.r = 0.5 * (lo + hi);
  out.h = 1.0 / out.r;
  out.residual = phi(out.r);
  // phi has slope of order -P near the root, so the r tolerance bounds the
  // residual well below 1e-12 |Omega| for bodies of moderate aspect.
  if (!(std::abs(out.residual) <= 1e-12 * area + 4.0 * kRadiusTol * polygon_measures(body).perimeter)) {
    throw ConvergenceError("inner Cheeger equation did not converge", out.residual, out.iterations);
  }
  return out;
}

CheegerResult cheeger_set(const ConvexBody& body) {
  const CheegerRadius root = cheeger_radius(body);
  CheegerResult result;
  result.method = Method::convex_exact;
  result.r = root.r;
  result.h = root.h;

  RoundedRegion set = [&] {
    if (body.is_disk()) return circle_region(body.as_disk().center, body.as_disk().radius);
    const auto inner = inner_parallel_body(body, root.r);
    if (inner) return minkowski_disk_sum(*inner, root.r);
    // The root sits at the inradius to within tolerance: E_r is a point.
    return minkowski_disk_sum(ConvexBody::point(Vec2{}), root.r);
  }();
  if (body.is_disk()) {
    result.inner_set = circle_region(body.as_disk().center, root.r);
  } else if (const auto inner = inner_parallel_body(body, root.r)) {
    result.inner_set = polygon_region(inner->vertices());
  }
  result.set_area = set.area();
  result.set_perimeter = set.perimeter();
  result.set = std::move(set);

  auto& diag = result.diagnostics;
  diag["iterations"] = root.iterations;
  diag["residual"] = root.residual;
  diag["ratio"] = result.set_perimeter / result.set_area;
  diag["ratio_error"] = std::abs(diag["ratio"] - result.h) / result.h;
  return result;
}

}  // namespace cheeger
