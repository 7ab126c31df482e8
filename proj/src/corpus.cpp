#include "cheeger/corpus.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cheeger/convex_cheeger.hpp"
#include "cheeger/error.hpp"
#include "cheeger/grid_cheeger.hpp"

namespace cheeger {

namespace {

constexpr double kPi = std::numbers::pi;

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < kPi / 2)) {
    std::ostringstream msg;
    msg << "theta = " << theta << " is outside (0, pi/2)";
    throw Error(Errc::invalid_body, msg.str());
  }
}

const ConvexBody& triangle_body() {
  static const ConvexBody body = ConvexBody::polygon({{0.0, -0.5}, {std::sqrt(3.0) / 2, 0.0}, {0.0, 0.5}});
  return body;
}

// "name(arg)" -> {name, arg}; a bare name gives nullopt.
std::pair<std::string_view, std::optional<double>> split_call(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos) return {text, std::nullopt};
  if (text.back() != ')') throw Error(Errc::unknown_example, "malformed example name: " + std::string(text));
  const std::string_view arg = text.substr(open + 1, text.size() - open - 2);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
  if (ec != std::errc() || ptr != arg.data() + arg.size()) {
    throw Error(Errc::unknown_example, "bad numeric argument in: " + std::string(text));
  }
  return {text.substr(0, open), value};
}

}  // namespace

DomainSpec two_disks() {
  return {"two_disks", DisksShape{{{{0.0, 0.0}, 1.0}, {{2.2, 0.0}, 2.0 / 3.0}}}, {{"ratio", 30.0 / 13.0}, {"h", 2.0}}};
}

DomainSpec unit_triangle() {
  return {"triangle", PolygonShape{triangle_body().vertices()}, {}};
}

double bowtie_cut() {
  const CheegerRadius cr = cheeger_radius(triangle_body());
  const auto inner = inner_parallel_body(triangle_body(), cr.r);
  double x = inner->vertices().front().x;
  for (const auto& v : inner->vertices()) x = std::max(x, v.x);
  return x + cr.r;
}

DomainSpec bowtie() {
  const double c = bowtie_cut();
  const double half = 0.5 * (1.0 - c / (std::sqrt(3.0) / 2));
  return {"bowtie",
          PolygonShape{{{0.0, -0.5}, {c, -half}, {2 * c, -0.5}, {2 * c, 0.5}, {c, half}, {0.0, 0.5}}},
          {{"h_triangle", cheeger_radius(triangle_body()).h}}};
}

DomainSpec loose_bowtie(double alpha) {
  const double c = bowtie_cut();
  if (!(alpha > std::atan(2 * c) && alpha < kPi / 2)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " must lie in (" << std::atan(2 * c) << ", pi/2)";
    throw Error(Errc::invalid_body, msg.str());
  }
  const double half = 0.5 - c / std::tan(alpha);
  return {"loose_bowtie",
          PolygonShape{{{0.0, -0.5}, {c, -half}, {2 * c, -0.5}, {2 * c, 0.5}, {c, half}, {0.0, 0.5}}},
          {{"alpha", alpha}}};
}

DomainSpec two_squares_bridge(double w, double length) {
  if (!(w > 0.0 && w < 1.0) || !(length > 0.0)) {
    throw Error(Errc::invalid_body, "bridge width must lie in (0, 1) and length must be positive");
  }
  const double lo = 0.5 - 0.5 * w, hi = 0.5 + 0.5 * w;
  const double x1 = 1.0 + length, x2 = 2.0 + length;
  const double h = 2.0 + std::sqrt(kPi);
  return {"two_squares_bridge",
          PolygonShape{{{0, 0}, {1, 0}, {1, lo}, {x1, lo}, {x1, 0}, {x2, 0},
                        {x2, 1}, {x1, 1}, {x1, hi}, {1, hi}, {1, 1}, {0, 1}}},
          {{"h", h}}};
}

double pinocchio_perimeter(double theta) {
  check_theta(theta);
  return 2.0 * (kPi - theta) + kPi * std::sin(theta);
}

double pinocchio_area(double theta) {
  check_theta(theta);
  const double s = std::sin(theta);
  return (kPi - theta) + s * std::cos(theta) + 0.5 * kPi * s * s;
}

DomainSpec pinocchio(double theta) {
  check_theta(theta);
  return {"pinocchio",
          DisksShape{{{{0.0, 0.0}, 1.0}, {{std::cos(theta), 0.0}, std::sin(theta)}}},
          {{"theta", theta}, {"ratio", pinocchio_perimeter(theta) / pinocchio_area(theta)}}};
}

DomainSpec pinocchio_elongated(double theta, double t, double resolution) {
  check_theta(theta);
  if (!(t >= 0.0)) throw Error(Errc::invalid_body, "nose elongation must be non-negative");
  if (!(resolution >= 4.0)) throw Error(Errc::resolution_too_coarse, "resolution must be at least 4 cells per unit");
  const double s = std::sin(theta);
  const Vec2 nose{std::cos(theta), 0.0};
  const double spacing = 1.0 / resolution;
  const Vec2 lo{-1.0, -1.0};
  const double xmax = std::max(1.0, nose.x + t + s);
  const int width = static_cast<int>(std::ceil((xmax - lo.x) / spacing - 1e-9));
  const int height = static_cast<int>(std::ceil(2.0 / spacing - 1e-9));
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(width) * height, 0);
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const Vec2 p{lo.x + (i + 0.5) * spacing, lo.y + (j + 0.5) * spacing};
      const Vec2 q{std::clamp(p.x, nose.x, nose.x + t), 0.0};
      if (norm(p) < 1.0 || norm(p - q) < s) mask[static_cast<std::size_t>(j) * width + i] = 1;
    }
  }
  std::ostringstream source;
  source << "pinocchio_elongated(" << theta << ", " << t << ")";
  return {"pinocchio_elongated", MaskShape{GridDomain(width, height, spacing, lo, std::move(mask)), source.str()},
          {{"theta", theta}, {"t", t}, {"ratio", 1.0 / s}}};
}

std::vector<std::string> example_names() {
  return {"two_disks", "triangle", "bowtie", "loose_bowtie(1.2)", "two_squares_bridge(0.05)", "pinocchio"};
}

DomainSpec builtin_example(std::string_view name) {
  const auto [base, arg] = split_call(name);
  if (base == "two_disks" && !arg) return two_disks();
  if (base == "triangle" && !arg) return unit_triangle();
  if (base == "bowtie" && !arg) return bowtie();
  if (base == "loose_bowtie" && arg) return loose_bowtie(*arg);
  if (base == "two_squares_bridge") return two_squares_bridge(arg.value_or(0.05));
  if (base == "pinocchio") {
    if (arg) return pinocchio(*arg);
    const double theta = solve_pinocchio_theta().theta;
    DomainSpec spec = pinocchio(theta);
    spec.expected["h"] = 1.0 / std::sin(theta);
    return spec;
  }
  throw Error(Errc::unknown_example, "unknown example: " + std::string(name));
}

double pinocchio_equation(double theta) {
  const double s = std::sin(theta);
  return 2.0 * (kPi - theta) * s + 0.5 * kPi * s * s - (kPi - theta) - 0.5 * std::sin(2.0 * theta);
}

PinocchioRoot solve_pinocchio_theta() {
  // f(0) = -pi < 0 < pi = f(pi/2).
  double a = 0.0, b = kPi / 2;
  PinocchioRoot root;
  while (b - a > 4 * std::numeric_limits<double>::epsilon() && root.iterations < 200) {
    const double mid = 0.5 * (a + b);
    if (pinocchio_equation(mid) < 0.0) a = mid;
    else b = mid;
    ++root.iterations;
  }
  root.theta = 0.5 * (a + b);
  root.residual = pinocchio_equation(root.theta);
  return root;
}

double loose_bowtie_area(double alpha, double r) {
  return (2.0 * alpha + std::sin(2.0 * alpha)) * r * r;
}

EigenvalueReport eigenvalue_bound_check(const GridDomain& grid, int p, std::optional<double> h) {
  if (p < 1) throw Error(Errc::invalid_body, "p must be at least 1");
  EigenvalueReport report;
  report.p = p;
  report.h = h ? *h : dinkelbach(grid, neighborhood_weights(16, grid.spacing())).h;
  report.bound = std::pow(report.h, p) / std::pow(static_cast<double>(p), p);
  if (p != 2) {
    report.eigenvalue = std::numeric_limits<double>::quiet_NaN();
    return report;
  }

  const int width = grid.width();
  const int height = grid.height();
  std::vector<int> id(static_cast<std::size_t>(width) * height, -1);
  int n = 0;
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      if (grid.inside(i, j)) id[grid.index(i, j)] = n++;
    }
  }
  // Dirichlet on the cell faces: an outside neighbour is the ghost value -u,
  // so u vanishes halfway between the two centres.
  const double inv = 1.0 / (grid.spacing() * grid.spacing());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(n) * 5);
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const int row = id[grid.index(i, j)];
      if (row < 0) continue;
      double diagonal = 4.0;
      const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& q : nb) {
        if (grid.inside(q[0], q[1])) entries.emplace_back(row, id[grid.index(q[0], q[1])], -inv);
        else diagonal += 1.0;
      }
      entries.emplace_back(row, row, diagonal * inv);
    }
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success) throw Error(Errc::convergence_failure, "Laplacian factorisation failed");

  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  x.normalize();
  double mu = x.dot(A * x);
  constexpr int kMaxIterations = 500;
  double change = 1.0;
  for (int it = 1; it <= kMaxIterations; ++it) {
    x = solver.solve(x);
    x.normalize();
    const double next = x.dot(A * x);
    change = std::abs(next - mu) / next;
    mu = next;
    report.iterations = it;
    if (change <= 1e-8) break;
  }
  if (change > 1e-8) throw ConvergenceError("inverse iteration did not converge", change, report.iterations);
  report.eigenvalue = mu;
  report.holds = mu >= report.bound;
  return report;
}

const char* to_string(Solvability s) {
  switch (s) {
    case Solvability::subcritical: return "subcritical";
    case Solvability::critical: return "critical";
    case Solvability::supercritical: return "supercritical";
  }
  return "?";
}

Solvability curvature_solvability(double H, double h) {
  if (!(H >= 0.0) || !(h > 0.0)) throw Error(Errc::invalid_body, "need H >= 0 and h > 0");
  if (std::abs(H - h) <= 1e-12) return Solvability::critical;
  return H < h ? Solvability::subcritical : Solvability::supercritical;
}

bool CheckReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

CheckReport verify_result(const CheegerResult& result, const DomainSpec& domain) {
  // Relative tolerance on measured quantities: exact for the convex solver
  // and for grid ratios; the strip set is a dilated mask whose discrete
  // perimeter carries the lattice bias.
  const double tol = result.method == Method::strip_inner ? 2e-2 : 1e-9;
  CheckReport report;
  auto lower = [&](std::string name, double value, double threshold) {
    report.checks.push_back({std::move(name), value >= threshold, value, threshold, value - threshold});
  };
  auto upper = [&](std::string name, double value, double threshold) {
    report.checks.push_back({std::move(name), value <= threshold, value, threshold, threshold - value});
  };
  auto within = [&](std::string name, double value, double target, double slack) {
    const double err = std::abs(value - target);
    report.checks.push_back({std::move(name), err <= slack, value, target, slack - err});
  };

  const double h = result.h;
  within("hr_identity", h * result.r, 1.0, 1e-9);
  if (result.set_area > 0.0) {
    within("ratio_consistency", result.set_perimeter / result.set_area, h, tol * h);
    lower("volume_bound", result.set_area, 4.0 * kPi / (h * h) * (1.0 - tol));
  }
  const Measures m = domain_measures(domain);
  double h_input = h;
  if (const auto it = result.diagnostics.find("h_input"); it != result.diagnostics.end()) h_input = it->second;
  lower("isoperimetric_bound", h_input, 2.0 * std::sqrt(kPi / m.area) * (1.0 - tol));
  if (result.method == Method::strip_inner) {
    const auto& d = result.diagnostics;
    lower("strip_lower_bound", h, d.at("bound_lower"));
    upper("strip_upper_bound", h, d.at("bound_upper"));
  }
  return report;
}

std::size_t half_turn_defect(const GridDomain& grid, std::span<const std::uint8_t> F, Vec2 center) {
  const int width = grid.width();
  const int height = grid.height();
  auto value = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= width || j >= height) return std::uint8_t{0};
    return F[grid.index(i, j)];
  };
  std::size_t defect = 0;
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const Vec2 p = 2.0 * center - grid.center(i, j);
      const int ri = static_cast<int>(std::floor((p.x - grid.origin().x) / grid.spacing()));
      const int rj = static_cast<int>(std::floor((p.y - grid.origin().y) / grid.spacing()));
      const std::uint8_t v = F[grid.index(i, j)];
      if (value(ri, rj) == v) continue;
      bool near = false;
      for (int dj = -1; dj <= 1 && !near; ++dj) {
        for (int di = -1; di <= 1 && !near; ++di) near = value(ri + di, rj + dj) == v;
      }
      if (!near) ++defect;
    }
  }
  return defect;
}

}  // namespace cheeger
