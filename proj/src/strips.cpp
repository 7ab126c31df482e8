#include "cheeger/strips.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cheeger/error.hpp"
#include "cheeger/grid_cheeger.hpp"

namespace cheeger {

namespace {

constexpr double kPi = std::numbers::pi;

// Natural cubic spline of one coordinate over knots s.
class CubicSpline {
public:
  CubicSpline(std::vector<double> s, std::vector<double> y) : s_(std::move(s)), y_(std::move(y)) {
    const std::size_t n = s_.size();
    m_.assign(n, 0.0);
    if (n < 3) return;
    // Thomas algorithm for the second derivatives with m_0 = m_{n-1} = 0.
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = s_[i] - s_[i - 1];
      const double h1 = s_[i + 1] - s_[i];
      const double a = h0;
      const double b = 2.0 * (h0 + h1);
      const double cc = h1;
      const double rhs = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
      const double denom = b - a * c[i - 1];
      c[i] = cc / denom;
      d[i] = (rhs - a * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = d[i] - c[i] * m_[i + 1];
      if (i == 1) break;
    }
  }

  std::size_t interval(double s) const {
    const auto it = std::upper_bound(s_.begin(), s_.end(), s);
    std::size_t k = it == s_.begin() ? 0 : static_cast<std::size_t>(it - s_.begin()) - 1;
    return std::min(k, s_.size() - 2);
  }

  double value(double s) const {
    const std::size_t k = interval(s);
    const double h = s_[k + 1] - s_[k];
    const double a = (s_[k + 1] - s) / h;
    const double b = (s - s_[k]) / h;
    return a * y_[k] + b * y_[k + 1] + ((a * a * a - a) * m_[k] + (b * b * b - b) * m_[k + 1]) * h * h / 6.0;
  }

  double derivative(double s) const {
    const std::size_t k = interval(s);
    const double h = s_[k + 1] - s_[k];
    const double a = (s_[k + 1] - s) / h;
    const double b = (s - s_[k]) / h;
    return (y_[k + 1] - y_[k]) / h + (-(3 * a * a - 1) * m_[k] + (3 * b * b - 1) * m_[k + 1]) * h / 6.0;
  }

private:
  std::vector<double> s_;
  std::vector<double> y_;
  std::vector<double> m_;
};

struct SegmentBox {
  double xmin;
  double xmax;
  std::size_t index;
};

int orient(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool closed_segments_meet(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  auto on = [](Vec2 p, Vec2 q, Vec2 x) {
    return std::min(p.x, q.x) <= x.x && x.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= x.y &&
           x.y <= std::max(p.y, q.y);
  };
  return (o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) || (o3 == 0 && on(c, d, a)) ||
         (o4 == 0 && on(c, d, b));
}

}  // namespace

Strip build_strip(std::span<const Vec2> spine, double halfwidth) {
  if (!(halfwidth > 0.0) || !std::isfinite(halfwidth)) throw Error(Errc::invalid_body, "strip half-width must be positive");
  std::vector<Vec2> pts;
  for (const auto& p : spine) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(Errc::invalid_body, "non-finite spine point");
    const Vec2 q = p / halfwidth;
    if (pts.empty() || norm(q - pts.back()) > kGeomTol) pts.push_back(q);
  }
  if (pts.size() < 2) throw Error(Errc::invalid_body, "spine needs at least 2 distinct points");

  std::vector<double> knots(pts.size(), 0.0), xs(pts.size()), ys(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) knots[i] = knots[i - 1] + norm(pts[i] - pts[i - 1]);
    xs[i] = pts[i].x;
    ys[i] = pts[i].y;
  }
  const CubicSpline sx(knots, xs);
  const CubicSpline sy(knots, ys);
  auto speed = [&](double s) { return std::hypot(sx.derivative(s), sy.derivative(s)); };

  // Arc-length table over a fine parameter subdivision (5-point Gauss).
  static constexpr std::array<double, 5> gx = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                                0.9061798459386640};
  static constexpr std::array<double, 5> gw = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                0.4786286704993665, 0.2369268850561891};
  std::vector<double> param{0.0};
  std::vector<double> arclen{0.0};
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double span = knots[k + 1] - knots[k];
    const int pieces = std::max(4, static_cast<int>(std::ceil(span / 0.002)));
    for (int p = 0; p < pieces; ++p) {
      const double a = knots[k] + span * p / pieces;
      const double b = knots[k] + span * (p + 1) / pieces;
      double len = 0.0;
      for (std::size_t g = 0; g < gx.size(); ++g) len += gw[g] * speed(0.5 * (a + b) + 0.5 * (b - a) * gx[g]);
      param.push_back(b);
      arclen.push_back(arclen.back() + 0.5 * (b - a) * len);
    }
  }

  Strip strip;
  strip.scale_ = halfwidth;
  strip.length_ = arclen.back();
  const auto intervals = static_cast<std::size_t>(std::ceil(strip.length_ / kMaxSpineSpacing - 1e-9));
  strip.spacing_ = strip.length_ / static_cast<double>(intervals);
  const std::size_t n = intervals + 1;
  strip.points_.resize(n);
  strip.tangents_.resize(n);
  strip.normals_.resize(n);
  strip.curvature_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = std::min(strip.length_, strip.spacing_ * static_cast<double>(i));
    const auto it = std::lower_bound(arclen.begin(), arclen.end(), target);
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - arclen.begin()));
    k = std::min(k, arclen.size() - 1);
    const double frac = (target - arclen[k - 1]) / (arclen[k] - arclen[k - 1]);
    const double s = param[k - 1] + frac * (param[k] - param[k - 1]);
    strip.points_[i] = {sx.value(s), sy.value(s)};
    Vec2 tan{sx.derivative(s), sy.derivative(s)};
    tan = tan / norm(tan);
    strip.tangents_[i] = tan;
    strip.normals_[i] = perp_ccw(tan);
  }

  // Curvature from centred differences of the chord angle.
  std::vector<double> chord_angle(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vec2 d = strip.points_[i + 1] - strip.points_[i];
    chord_angle[i] = std::atan2(d.y, d.x);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double turn = chord_angle[i] - chord_angle[i - 1];
    while (turn > kPi) turn -= 2 * kPi;
    while (turn <= -kPi) turn += 2 * kPi;
    strip.curvature_[i] = turn / strip.spacing_;
  }
  if (n >= 3) {
    strip.curvature_[0] = strip.curvature_[1];
    strip.curvature_[n - 1] = strip.curvature_[n - 2];
  }

  std::size_t worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(strip.curvature_[i]) > std::abs(strip.curvature_[worst])) worst = i;
  }
  if (std::abs(strip.curvature_[worst]) > 1.0 - kCurvatureMargin) {
    std::ostringstream msg;
    msg << "|curvature| = " << std::abs(strip.curvature_[worst]) << " exceeds " << 1.0 - kCurvatureMargin
        << " at t = " << strip.t(worst) << " (normalised units)";
    throw Error(Errc::curvature_violation, msg.str());
  }

  // No-crossing: sweep over cross-section x-extents.
  std::vector<SegmentBox> boxes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = strip.psi(i, -1.0);
    const Vec2 b = strip.psi(i, 1.0);
    boxes[i] = {std::min(a.x, b.x), std::max(a.x, b.x), i};
  }
  std::sort(boxes.begin(), boxes.end(), [](const SegmentBox& l, const SegmentBox& r) {
    return l.xmin < r.xmin || (l.xmin == r.xmin && l.index < r.index);
  });
  std::vector<SegmentBox> active;
  for (const auto& box : boxes) {
    std::erase_if(active, [&](const SegmentBox& a) { return a.xmax < box.xmin; });
    const Vec2 a = strip.psi(box.index, -1.0);
    const Vec2 b = strip.psi(box.index, 1.0);
    for (const auto& other : active) {
      const Vec2 c = strip.psi(other.index, -1.0);
      const Vec2 d = strip.psi(other.index, 1.0);
      if (closed_segments_meet(a, b, c, d)) {
        std::ostringstream msg;
        msg << "cross-sections at t = " << strip.t(std::min(box.index, other.index)) << " and t = "
            << strip.t(std::max(box.index, other.index)) << " intersect";
        throw Error(Errc::crossing, msg.str());
      }
    }
    active.push_back(box);
  }
  return strip;
}

Vec2 Strip::psi(double t, double u) const {
  const double pos = std::clamp(t / spacing_, 0.0, static_cast<double>(points_.size() - 1));
  const std::size_t i = std::min(static_cast<std::size_t>(pos), points_.size() - 2);
  const double f = pos - static_cast<double>(i);
  const Vec2 p = (1.0 - f) * points_[i] + f * points_[i + 1];
  Vec2 nu = (1.0 - f) * normals_[i] + f * normals_[i + 1];
  nu = nu / norm(nu);
  return p + u * nu;
}

std::vector<Vec2> Strip::outline() const {
  std::vector<Vec2> ring;
  ring.reserve(2 * points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) ring.push_back(psi(i, -1.0));
  for (std::size_t i = points_.size(); i-- > 0;) ring.push_back(psi(i, 1.0));
  return ring;
}

Measures strip_measures(const Strip& strip) {
  // Trapezoid in t; the Jacobian 1 - u*kappa is linear in u, so the
  // two-point Gauss rule in u is exact.
  const double gu = 1.0 / std::sqrt(3.0);
  double area = 0.0;
  double lateral = 0.0;
  const std::size_t n = strip.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 * strip.spacing() : strip.spacing();
    const double k = strip.curvature()[i];
    area += w * ((1.0 - gu * k) + (1.0 + gu * k));
    lateral += w * ((1.0 - k) + (1.0 + k));
  }
  return {area, lateral + 4.0};
}

StripBounds strip_bounds(double length) {
  if (!(length > 0.0)) throw Error(Errc::invalid_body, "strip length must be positive");
  return {1.0 + 1.0 / (400.0 * length), 1.0 + 2.0 / length, 1.0 + kPi / (2.0 * length)};
}

double superlevel_area(const ScalarField& dist, double r) {
  const double cell = dist.spacing * dist.spacing;
  const double inv = 1.0 / dist.spacing;
  double sum = 0.0;
  for (const double d : dist.values) {
    if (d <= 0.0) continue;
    const double f = (d - r) * inv + 0.5;
    if (f >= 1.0) sum += 1.0;
    else if (f > 0.0) sum += f;
  }
  return sum * cell;
}

namespace {

// Cells of the complement that cannot reach the lattice border through
// 8-connected complement cells.
std::size_t count_hole_cells(const std::vector<std::uint8_t>& set, int width, int height) {
  const int w = width + 2;
  const int h = height + 2;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
  auto in_set = [&](int i, int j) {
    if (i < 1 || j < 1 || i > width || j > height) return false;
    return set[static_cast<std::size_t>(j - 1) * width + (i - 1)] != 0;
  };
  std::vector<std::pair<int, int>> stack{{0, 0}};
  seen[0] = 1;
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const int ni = i + di, nj = j + dj;
        if (ni < 0 || nj < 0 || ni >= w || nj >= h) continue;
        auto& s = seen[static_cast<std::size_t>(nj) * w + ni];
        if (s || in_set(ni, nj)) continue;
        s = 1;
        stack.emplace_back(ni, nj);
      }
    }
  }
  std::size_t holes = 0;
  for (int j = 1; j <= height; ++j) {
    for (int i = 1; i <= width; ++i) {
      if (!in_set(i, j) && !seen[static_cast<std::size_t>(j) * w + i]) ++holes;
    }
  }
  return holes;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  const double s = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + s * ab));
}

// Distance from inside cell centres to the strip boundary: 1 - |u| for the
// two offset curves (exact while |kappa| < 1), or the distance to an end
// cross-section if smaller. |u| is the distance to the spine polyline.
ScalarField boundary_distance(const Strip& strip, const GridDomain& grid) {
  ScalarField dist = ScalarField::zeros_like(grid);
  const int width = grid.width();
  const int height = grid.height();
  const double spacing = grid.spacing();
  const Vec2 lo = grid.origin();
  std::vector<double> spine(dist.values.size(), 1.0);
  const auto& pts = strip.points();
  // Each segment visits the slab of cells projecting onto it (padded by two
  // cells so the wedges at polyline joints are covered), row- or
  // column-wise along its dominant axis.
  const double pad = 2.0 * spacing;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Vec2 a = pts[k];
    const Vec2 b = pts[k + 1];
    const double len = norm(b - a);
    if (len <= 0.0) continue;
    const Vec2 d = (b - a) / len;
    const bool rows = std::abs(d.x) >= std::abs(d.y);
    // Sweep coordinate q runs across the dominant axis, p along it.
    const double qa = rows ? a.y : a.x, qb = rows ? b.y : b.x;
    const double pa = rows ? a.x : a.y;
    const double dp = rows ? d.x : d.y, dq = rows ? d.y : d.x;
    const double qlo = rows ? lo.y : lo.x, plo = rows ? lo.x : lo.y;
    const int qcount = rows ? height : width, pcount = rows ? width : height;
    const int q0 = std::max(0, static_cast<int>(std::floor((std::min(qa, qb) - 1.0 - qlo) / spacing)));
    const int q1 = std::min(qcount - 1, static_cast<int>(std::ceil((std::max(qa, qb) + 1.0 - qlo) / spacing)));
    for (int q = q0; q <= q1; ++q) {
      const double qc = qlo + (q + 0.5) * spacing;
      // (p - pa) dp + (qc - qa) dq in [-pad, len + pad].
      const double e0 = (-pad - (qc - qa) * dq) / dp;
      const double e1 = (len + pad - (qc - qa) * dq) / dp;
      const double pmin = pa + std::min(e0, e1), pmax = pa + std::max(e0, e1);
      const int p0 = std::max(0, static_cast<int>(std::floor((pmin - plo) / spacing - 0.5)));
      const int p1 = std::min(pcount - 1, static_cast<int>(std::ceil((pmax - plo) / spacing - 0.5)));
      for (int pc = p0; pc <= p1; ++pc) {
        const int i = rows ? pc : q;
        const int j = rows ? q : pc;
        const std::size_t c = grid.index(i, j);
        if (!grid.mask()[c]) continue;
        spine[c] = std::min(spine[c], point_segment_distance(grid.center(i, j), a, b));
      }
    }
  }
  const std::size_t last = strip.size() - 1;
  const Vec2 e0a = strip.psi(std::size_t{0}, -1.0), e0b = strip.psi(std::size_t{0}, 1.0);
  const Vec2 e1a = strip.psi(last, -1.0), e1b = strip.psi(last, 1.0);
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const std::size_t c = grid.index(i, j);
      if (!grid.mask()[c]) continue;
      const Vec2 p = grid.center(i, j);
      const double d = std::min({1.0 - spine[c], point_segment_distance(p, e0a, e0b), point_segment_distance(p, e1a, e1b)});
      dist.values[c] = std::max(d, 0.0);
    }
  }
  return dist;
}

}  // namespace

CheegerResult strip_cheeger(const Strip& strip, int cells_across) {
  if (cells_across < 64) throw Error(Errc::resolution_too_coarse, "strip solver needs at least 64 cells across the width");
  const double spacing = 2.0 / cells_across;
  const double L = strip.length();

  const auto ring = strip.outline();
  Vec2 lo = ring.front(), hi = ring.front();
  for (const auto& p : ring) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const int width = static_cast<int>(std::ceil((hi.x - lo.x) / spacing - 1e-9));
  const int height = static_cast<int>(std::ceil((hi.y - lo.y) / spacing - 1e-9));
  const GridDomain grid(width, height, spacing, lo, fill_ring(ring, width, height, spacing, lo));
  const ScalarField dist = boundary_distance(strip, grid);

  auto phi = [&](double r) { return superlevel_area(dist, r) - kPi * r * r; };
  double a = 0.0, b = 1.0;
  int iterations = 0;
  while (b - a > 1e-13 && iterations < 200) {
    const double mid = 0.5 * (a + b);
    if (phi(mid) > 0.0) a = mid;
    else b = mid;
    ++iterations;
  }
  const double r = 0.5 * (a + b);
  const double h = 1.0 / r;

  // Inner set E_r and its r-dilation E, clipped to the strip.
  std::vector<std::uint8_t> inner(grid.mask().size(), 0);
  for (std::size_t k = 0; k < inner.size(); ++k) inner[k] = grid.mask()[k] && dist.values[k] >= r ? 1 : 0;
  const auto to_inner = squared_distance_to_sites(inner, width, height, false);
  const double rc = r / spacing;
  // E = union of B(c, dist(c)) over c in E_r, since dist is 1-Lipschitz. The
  // r-dilation between cell centres covers all but the annuli r < |p - c| <=
  // dist(c), which matter along straight sides whenever the first inner
  // centre sits deeper than r. Only inner cells next to the complement can
  // add cells there.
  std::vector<std::uint8_t> set(inner.size(), 0);
  for (std::size_t k = 0; k < set.size(); ++k) set[k] = grid.mask()[k] && to_inner[k] <= rc * rc ? 1 : 0;
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const std::size_t c = grid.index(i, j);
      if (!inner[c]) continue;
      bool edge = false;
      for (int dj = -1; dj <= 1 && !edge; ++dj) {
        for (int di = -1; di <= 1 && !edge; ++di) {
          const int ni = i + di, nj = j + dj;
          edge = ni < 0 || nj < 0 || ni >= width || nj >= height || !inner[grid.index(ni, nj)];
        }
      }
      if (!edge) continue;
      const double R = dist.values[c] / spacing;
      if (R <= rc) continue;
      const int reach = static_cast<int>(std::floor(R));
      for (int dj = -reach; dj <= reach; ++dj) {
        const int nj = j + dj;
        if (nj < 0 || nj >= height) continue;
        const double outer2 = R * R - dj * dj;
        const double inner2 = rc * rc - dj * dj;
        const int hi = static_cast<int>(std::floor(std::sqrt(outer2)));
        const int lo = inner2 < 0.0 ? 0 : static_cast<int>(std::floor(std::sqrt(inner2)));
        for (int di = lo; di <= hi; ++di) {
          if (di * di + dj * dj > R * R) break;
          for (const int ni : {i - di, i + di}) {
            if (ni < 0 || ni >= width) continue;
            const std::size_t n = grid.index(ni, nj);
            if (grid.mask()[n]) set[n] = 1;
          }
        }
      }
    }
  }

  CheegerResult result;
  result.method = Method::strip_inner;
  result.h = h;
  result.r = r;

  // Profiles rho-/rho+ per spine sample.
  StripProfiles profiles;
  bool graph_ok = true;
  const double du = spacing / 4.0;
  const int usteps = static_cast<int>(std::ceil(2.0 / du));
  for (std::size_t i = 0; i < strip.size(); ++i) {
    const double t = std::clamp(strip.t(i), 0.5 * spacing, L - 0.5 * spacing);
    int runs = 0;
    bool prev = false;
    double first = 0.0, last = 0.0;
    for (int s = 0; s <= usteps; ++s) {
      const double u = -1.0 + 2.0 * s / usteps;
      const Vec2 p = strip.psi(t, u);
      const int ci = static_cast<int>(std::floor((p.x - lo.x) / spacing));
      const int cj = static_cast<int>(std::floor((p.y - lo.y) / spacing));
      const bool in = ci >= 0 && cj >= 0 && ci < width && cj < height &&
                      set[static_cast<std::size_t>(cj) * width + ci] != 0;
      if (in && !prev) {
        ++runs;
        if (runs == 1) first = u;
      }
      if (in) last = u;
      prev = in;
    }
    // Slices within r of an end cut the rounded caps at a grazing angle, so
    // the graph property is checked on the interior slices only.
    const bool cap = strip.t(i) < r || strip.t(i) > L - r;
    if (runs != 1 && !cap) graph_ok = false;
    profiles.t.push_back(strip.t(i));
    profiles.lower.push_back(runs ? first : 0.0);
    profiles.upper.push_back(runs ? last : 0.0);
  }

  int components = 0;
  label_components(set, width, height, &components);
  const std::size_t holes = count_hole_cells(set, width, height);

  // Reach check: eroding E by r must give back E_r up to a cell layer.
  std::vector<std::uint8_t> outside_set(set.size());
  for (std::size_t k = 0; k < set.size(); ++k) outside_set[k] = set[k] ? 0 : 1;
  const auto to_outside = squared_distance_to_sites(outside_set, width, height, true);
  std::vector<std::uint8_t> not_inner(inner.size());
  for (std::size_t k = 0; k < inner.size(); ++k) not_inner[k] = inner[k] ? 0 : 1;
  const auto to_not_inner = squared_distance_to_sites(not_inner, width, height, true);
  std::size_t reach_mismatch = 0;
  const double layer = 1.5;
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (!set[k]) continue;
    const bool eroded = std::sqrt(to_outside[k]) - 0.5 >= rc;
    const bool near_inner = std::sqrt(to_inner[k]) <= layer;
    const bool deep_inner = std::sqrt(to_not_inner[k]) > layer;
    if ((eroded && !near_inner) || (deep_inner && !eroded)) ++reach_mismatch;
  }

  const auto weights = neighborhood_weights(16, spacing);
  const GridDomain set_grid = grid.with_mask(set);
  const auto set_measures = discrete_measures(set, grid, weights);
  result.set_area = set_measures.area;
  result.set_perimeter = set_measures.perimeter;
  result.set = StripSet{std::move(profiles), set_grid};
  if (std::any_of(inner.begin(), inner.end(), [](std::uint8_t c) { return c != 0; })) {
    result.inner_set = grid.with_mask(inner);
  }

  const double s = strip.scale();
  auto& diag = result.diagnostics;
  diag["length"] = L;
  diag["h_input"] = h / s;
  diag["r_input"] = r * s;
  diag["bisection_iterations"] = iterations;
  diag["phi_residual"] = phi(r);
  diag["inner_area"] = superlevel_area(dist, r);
  diag["cells_across"] = cells_across;
  diag["graph_structure_ok"] = graph_ok ? 1.0 : 0.0;
  diag["components"] = components;
  diag["hole_cells"] = static_cast<double>(holes);
  diag["reach_mismatch_cells"] = static_cast<double>(reach_mismatch);
  const StripBounds bounds = strip_bounds(L);
  diag["bound_lower"] = bounds.lower;
  diag["bound_upper"] = bounds.upper;
  diag["asymptotic"] = bounds.asymptotic;
  diag["bounds_ok"] = (h >= bounds.lower && h <= bounds.upper) ? 1.0 : 0.0;
  if (L >= 4.5 * kPi) {
    const double mid = kPi * r * r;
    diag["sandwich_lower"] = 2.0 * (L - 9.0 * kPi) * (1.0 - r);
    diag["sandwich_mid"] = mid;
    diag["sandwich_upper"] = 2.0 * L * (1.0 - r);
    diag["sandwich_ok"] = (diag["sandwich_lower"] <= mid && mid <= diag["sandwich_upper"]) ? 1.0 : 0.0;
  } else {
    result.notes.emplace_back("structure-theorem-unverified");
  }
  return result;
}

}  // namespace cheeger
