#include "cheeger/rof.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cheeger/error.hpp"

namespace cheeger {

namespace {

// The lattice the dual iteration runs on: for a zero exterior, the field
// plus one ring of cells pinned at u = 0.
struct WorkLattice {
  int width = 0;
  int height = 0;
  int ring = 0;
  std::vector<double> g;
  std::vector<std::uint8_t> free;

  std::size_t at(int i, int j) const { return static_cast<std::size_t>(j) * width + i; }
};

WorkLattice make_lattice(const ScalarField& g, RofBoundary boundary) {
  WorkLattice lat;
  lat.ring = boundary == RofBoundary::zero_exterior ? 1 : 0;
  lat.width = g.width + 2 * lat.ring;
  lat.height = g.height + 2 * lat.ring;
  lat.g.assign(static_cast<std::size_t>(lat.width) * lat.height, 0.0);
  lat.free.assign(lat.g.size(), 0);
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      lat.g[lat.at(i + lat.ring, j + lat.ring)] = g.at(i, j);
      lat.free[lat.at(i + lat.ring, j + lat.ring)] = 1;
    }
  }
  return lat;
}

void divergence(const WorkLattice& lat, const std::vector<double>& px, const std::vector<double>& py,
                std::vector<double>& div) {
  for (int j = 0; j < lat.height; ++j) {
    for (int i = 0; i < lat.width; ++i) {
      const std::size_t c = lat.at(i, j);
      double d = 0.0;
      if (i < lat.width - 1) d += px[c];
      if (i > 0) d -= px[c - 1];
      if (j < lat.height - 1) d += py[c];
      if (j > 0) d -= py[c - lat.width];
      div[c] = d;
    }
  }
}

double tv_on(const std::vector<double>& u, int width, int height) {
  double tv = 0.0;
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const std::size_t c = static_cast<std::size_t>(j) * width + i;
      const double dx = i < width - 1 ? u[c + 1] - u[c] : 0.0;
      const double dy = j < height - 1 ? u[c + width] - u[c] : 0.0;
      tv += std::hypot(dx, dy);
    }
  }
  return tv;
}

double lattice_energy(const WorkLattice& lat, const std::vector<double>& u, double spacing, double lambda) {
  double fidelity = 0.0;
  for (std::size_t c = 0; c < u.size(); ++c) {
    if (lat.free[c]) fidelity += (u[c] - lat.g[c]) * (u[c] - lat.g[c]);
  }
  return spacing * tv_on(u, lat.width, lat.height) + spacing * spacing * fidelity / (2.0 * lambda);
}

// Bounds of the maximum principle for this datum.
std::pair<double, double> datum_range(const WorkLattice& lat) {
  double lo = lat.ring ? 0.0 : lat.g.front();
  double hi = lo;
  for (const double v : lat.g) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

void primal_from_dual(const WorkLattice& lat, const std::vector<double>& div, double mu, std::vector<double>& u) {
  const auto [lo, hi] = datum_range(lat);
  for (std::size_t c = 0; c < u.size(); ++c) u[c] = lat.free[c] ? std::clamp(lat.g[c] - mu * div[c], lo, hi) : 0.0;
}

struct DualState {
  std::vector<double> px;
  std::vector<double> py;
};

struct IterationStatus {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Projected gradient on the dual, optionally with Nesterov extrapolation (FGP).
IterationStatus iterate(const WorkLattice& lat, double mu, double spacing, double lambda, const RofOptions& opt,
                        double tolerance, DualState& p, std::vector<double>* energy_trace) {
  const std::size_t n = lat.g.size();
  std::vector<double> div(n), v(n), u(n);
  DualState r = p;
  double t = 1.0;
  IterationStatus status;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    divergence(lat, r.px, r.py, div);
    for (std::size_t c = 0; c < n; ++c) v[c] = lat.free[c] ? div[c] - lat.g[c] / mu : 0.0;
    const double t_next = opt.accelerated ? 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t)) : 1.0;
    const double beta = (t - 1.0) / t_next;
    double largest = 0.0;
    for (int j = 0; j < lat.height; ++j) {
      for (int i = 0; i < lat.width; ++i) {
        const std::size_t c = lat.at(i, j);
        const double gx = i < lat.width - 1 ? v[c + 1] - v[c] : 0.0;
        const double gy = j < lat.height - 1 ? v[c + lat.width] - v[c] : 0.0;
        double qx = r.px[c] + opt.tau * gx;
        double qy = r.py[c] + opt.tau * gy;
        const double norm = std::hypot(qx, qy);
        if (norm > 1.0) {
          qx /= norm;
          qy /= norm;
        }
        largest = std::max(largest, std::hypot(qx - p.px[c], qy - p.py[c]));
        r.px[c] = qx + beta * (qx - p.px[c]);
        r.py[c] = qy + beta * (qy - p.py[c]);
        p.px[c] = qx;
        p.py[c] = qy;
      }
    }
    t = t_next;
    status.iterations = it;
    status.residual = largest;
    if (energy_trace && it % 100 == 0) {
      divergence(lat, p.px, p.py, div);
      primal_from_dual(lat, div, mu, u);
      energy_trace->push_back(lattice_energy(lat, u, spacing, lambda));
    }
    if (largest < tolerance) {
      status.converged = true;
      break;
    }
  }
  return status;
}

ScalarField coarsen(const ScalarField& g, RofBoundary boundary) {
  ScalarField c;
  c.width = (g.width + 1) / 2;
  c.height = (g.height + 1) / 2;
  c.spacing = 2.0 * g.spacing;
  c.origin = g.origin;
  c.values.assign(static_cast<std::size_t>(c.width) * c.height, 0.0);
  for (int j = 0; j < c.height; ++j) {
    for (int i = 0; i < c.width; ++i) {
      double sum = 0.0;
      int count = 0;
      for (int dj = 0; dj < 2; ++dj) {
        for (int di = 0; di < 2; ++di) {
          const int fi = 2 * i + di, fj = 2 * j + dj;
          if (fi < g.width && fj < g.height) {
            sum += g.at(fi, fj);
            ++count;
          }
        }
      }
      // Cells past the edge are exterior zeros or, under Neumann, absent.
      c.at(i, j) = boundary == RofBoundary::zero_exterior ? sum / 4.0 : sum / count;
    }
  }
  return c;
}

DualState solve_level(const ScalarField& g, double lambda, RofBoundary boundary, const RofOptions& opt, bool finest,
                      RofSolution* out) {
  const WorkLattice lat = make_lattice(g, boundary);
  DualState p;
  p.px.assign(lat.g.size(), 0.0);
  p.py.assign(lat.g.size(), 0.0);

  if (opt.multilevel && std::min(g.width, g.height) >= 32) {
    const ScalarField coarse = coarsen(g, boundary);
    const DualState pc = solve_level(coarse, lambda, boundary, opt, false, nullptr);
    const int cw = coarse.width + 2 * lat.ring;
    const int ch = coarse.height + 2 * lat.ring;
    auto map = [&](int I, int extent) {
      if (lat.ring && I == 0) return 0;
      const int m = (I - lat.ring) / 2 + lat.ring;
      return std::clamp(m, 0, extent - 1);
    };
    for (int J = 0; J < lat.height; ++J) {
      for (int I = 0; I < lat.width; ++I) {
        const std::size_t src = static_cast<std::size_t>(map(J, ch)) * cw + map(I, cw);
        const std::size_t dst = lat.at(I, J);
        // Keep the edge components at zero where the forward difference vanishes.
        p.px[dst] = I < lat.width - 1 ? pc.px[src] : 0.0;
        p.py[dst] = J < lat.height - 1 ? pc.py[src] : 0.0;
      }
    }
  }

  const double mu = lambda / g.spacing;
  const double tolerance = finest ? opt.tolerance : std::max(opt.tolerance, 1e-4);
  const IterationStatus status =
      iterate(lat, mu, g.spacing, lambda, opt, tolerance, p, finest && out ? &out->energy_trace : nullptr);
  if (finest && out) {
    out->iterations = status.iterations;
    out->residual = status.residual;
    out->converged = status.converged;
    if (!status.converged && opt.require_convergence) {
      throw ConvergenceError("dual iteration did not reach the update tolerance", status.residual,
                             status.iterations);
    }
    std::vector<double> div(lat.g.size()), u(lat.g.size());
    divergence(lat, p.px, p.py, div);
    primal_from_dual(lat, div, mu, u);
    out->u = g;
    for (int j = 0; j < g.height; ++j) {
      for (int i = 0; i < g.width; ++i) out->u.at(i, j) = u[lat.at(i + lat.ring, j + lat.ring)];
    }
    double largest = 0.0;
    for (std::size_t c = 0; c < p.px.size(); ++c) largest = std::max(largest, std::hypot(p.px[c], p.py[c]));
    out->max_dual_norm = largest;
  }
  return p;
}

}  // namespace

double discrete_tv(const ScalarField& u) { return u.spacing * tv_on(u.values, u.width, u.height); }

double rof_energy(const ScalarField& u, const ScalarField& g, double lambda, RofBoundary boundary) {
  if (u.values.size() != g.values.size()) throw Error(Errc::invalid_body, "field sizes differ");
  WorkLattice lat = make_lattice(g, boundary);
  std::vector<double> w(lat.g.size(), 0.0);
  for (int j = 0; j < u.height; ++j) {
    for (int i = 0; i < u.width; ++i) w[lat.at(i + lat.ring, j + lat.ring)] = u.at(i, j);
  }
  return lattice_energy(lat, w, u.spacing, lambda);
}

RofSolution rof_solve(const RofProblem& problem, const RofOptions& options) {
  if (!(problem.lambda > 0.0) || !std::isfinite(problem.lambda)) {
    throw Error(Errc::invalid_body, "lambda must be positive");
  }
  const auto& g = problem.g;
  if (g.width <= 0 || g.height <= 0 || g.values.size() != static_cast<std::size_t>(g.width) * g.height) {
    throw Error(Errc::invalid_body, "datum field has inconsistent dimensions");
  }
  for (const double v : g.values) {
    if (!std::isfinite(v)) throw Error(Errc::invalid_body, "datum field has non-finite values");
  }
  RofSolution sol;
  solve_level(g, problem.lambda, problem.boundary, options, true, &sol);
  return sol;
}

CalibrabilityReport calibrability_test(const DomainSpec& domain, std::span<const double> lambdas, double resolution,
                                       int margin, const RofOptions& options) {
  const GridDomain grid = rasterize(domain, resolution);
  const Measures m = domain_measures(domain);
  const ScalarField dist = distance_transform(grid);
  CalibrabilityReport report;
  report.ratio = m.perimeter / m.area;

  ScalarField g;
  g.width = grid.width() + 2 * margin;
  g.height = grid.height() + 2 * margin;
  g.spacing = grid.spacing();
  g.origin = grid.origin() - margin * grid.spacing() * Vec2{1.0, 1.0};
  g.values.assign(static_cast<std::size_t>(g.width) * g.height, 0.0);
  std::vector<std::size_t> interior;
  const double depth = (kBoundaryLayers - 0.5) * grid.spacing();
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      if (!grid.inside(i, j)) continue;
      g.at(i + margin, j + margin) = 1.0;
      if (dist.at(i, j) > depth) interior.push_back(static_cast<std::size_t>(j + margin) * g.width + i + margin);
    }
  }
  if (interior.empty()) throw Error(Errc::resolution_too_coarse, "no interior cells for the calibrability fit");

  report.consistent = true;
  for (const double lambda : lambdas) {
    const RofSolution sol = rof_solve({g, lambda, RofBoundary::zero_exterior}, options);
    CalibrabilityEntry e;
    e.lambda = lambda;
    e.iterations = sol.iterations;
    e.solver_residual = sol.residual;
    e.converged = sol.converged;
    e.predicted = std::max(0.0, 1.0 - report.ratio * lambda);
    double sum = 0.0;
    for (const std::size_t c : interior) sum += sol.u.values[c];
    e.fitted = sum / static_cast<double>(interior.size());
    for (const std::size_t c : interior) {
      e.residual = std::max(e.residual, std::abs(sol.u.values[c] - e.fitted));
      e.deviation = std::max(e.deviation, std::abs(sol.u.values[c] - e.predicted));
    }
    for (const double v : sol.u.values) {
      e.sup_norm = std::max(e.sup_norm, std::abs(v));
      e.min_value = std::min(e.min_value, v);
    }
    if (!(e.residual <= kCalibrableResidual)) report.consistent = false;
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace cheeger
