#pragma once

#include <span>
#include <vector>

#include "cheeger/domain.hpp"
#include "cheeger/grid.hpp"

namespace cheeger {

// Neumann: forward differences vanish at the lattice edge (mass preserving).
// ZeroExterior: u is held at 0 on a ring of cells around the lattice, which
// models the problem on the whole plane for data supported inside.
enum class RofBoundary { neumann, zero_exterior };

struct RofProblem {
  ScalarField g;
  double lambda = 0.0;
  RofBoundary boundary = RofBoundary::neumann;
};

struct RofOptions {
  double tau = 0.125;
  double tolerance = 1e-6;
  int max_iterations = 20000;
  // Warm start from a solve on 2x coarser lattices.
  bool multilevel = true;
  // Nesterov extrapolation of the dual iterate. Much faster, but the primal
  // energy along the iteration is no longer monotone.
  bool accelerated = false;
  // When false, the last iterate is returned instead of throwing.
  bool require_convergence = true;
};

struct RofSolution {
  ScalarField u;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  double max_dual_norm = 0.0;
  // Primal energy every 100 iterations on the finest lattice.
  std::vector<double> energy_trace;
};

// sum over cells of spacing * |forward difference|, Neumann at the edge.
double discrete_tv(const ScalarField& u);

// TV(u) + (1/(2 lambda)) sum spacing^2 (u - g)^2 under the given boundary.
double rof_energy(const ScalarField& u, const ScalarField& g, double lambda, RofBoundary boundary);

// Projected dual iteration p <- P(p + tau grad(div p - g/mu)), u = g - mu div p,
// with mu = lambda / spacing. The returned u is clipped to the range of the
// datum (and 0 under a zero exterior); clipping lowers both energy terms.
// Throws ConvergenceError after max_iterations.
RofSolution rof_solve(const RofProblem& problem, const RofOptions& options = {});

struct CalibrabilityEntry {
  double lambda = 0.0;
  double predicted = 0.0;   // (1 - (P/|Omega|) lambda)^+
  double fitted = 0.0;      // least-squares c in u ~ c chi over interior cells
  double residual = 0.0;    // max |u - fitted| over interior cells
  double deviation = 0.0;   // max |u - predicted| over interior cells
  double sup_norm = 0.0;    // max |u| over the whole lattice
  double min_value = 0.0;
  int iterations = 0;
  double solver_residual = 0.0;
  bool converged = false;
};

struct CalibrabilityReport {
  double ratio = 0.0;  // P(Omega)/|Omega|
  std::vector<CalibrabilityEntry> entries;
  bool consistent = false;  // residual <= 0.02 for every lambda
};

inline constexpr double kCalibrableResidual = 0.02;
// Cells of Omega at least this many layers from the complement are interior;
// the discrete jump is smeared over the layers in between.
inline constexpr int kBoundaryLayers = 8;

// Fixed budget without throwing: the fitted level settles long before the
// dual update reaches the default tolerance.
inline RofOptions calibrability_options() {
  RofOptions o;
  o.max_iterations = 1500;
  o.accelerated = true;
  o.require_convergence = false;
  return o;
}

// Solves ROF with g = chi_Omega rasterised at `resolution` cells per unit,
// `margin` empty cells around the domain and a zero exterior.
CalibrabilityReport calibrability_test(const DomainSpec& domain, std::span<const double> lambdas,
                                       double resolution = 256.0, int margin = 4,
                                       const RofOptions& options = calibrability_options());

}  // namespace cheeger
