#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cheeger/geometry.hpp"
#include "cheeger/grid.hpp"
#include "cheeger/maxflow.hpp"
#include "cheeger/result.hpp"

namespace cheeger {

// Cauchy-Crofton pair weights for a 4-, 8- or 16-neighbourhood. Offsets are
// closed under negation; weights are lengths for the given spacing and are
// rescaled when applied to a grid with a different spacing.
struct NeighborhoodWeights {
  int order = 16;
  double spacing = 1.0;
  std::vector<Offset> offsets;
  std::vector<double> weights;

  int reach() const;
};

// w_k proportional to dphi_k / |e_k|, normalised so that an axis-aligned
// straight cut of length l measures exactly l.
NeighborhoodWeights neighborhood_weights(int order, double spacing);

// Absolute perimeter (pairs leaving the lattice count) and area of F.
Measures discrete_measures(std::span<const std::uint8_t> F, const GridDomain& grid, const NeighborhoodWeights& w);

struct CutSolution {
  std::vector<std::uint8_t> F;
  double perimeter = 0.0;
  double area = 0.0;
  double objective = 0.0;
};

enum class SourceSide { maximal, minimal };

// Minimiser of P(F) - h|F| over F inside the grid mask.
CutSolution mincut_subproblem(const GridDomain& grid, const NeighborhoodWeights& w, double h,
                              SourceSide side = SourceSide::maximal);

struct DinkelbachTrace {
  double h = 0.0;
  std::vector<double> sequence;
  // Maximal minimiser of the ratio (union of all minimisers).
  std::vector<std::uint8_t> maximal;
  // Smallest minimiser of the last productive cut (also a ratio minimiser);
  // equal to `maximal` unless requested.
  std::vector<std::uint8_t> minimal;
  int component = 0;
  int components = 0;
};

// Exact minimum of the discrete ratio P(F)/|F|, solved per connected
// component (connectivity given by the neighbourhood offsets).
DinkelbachTrace dinkelbach(const GridDomain& grid, const NeighborhoodWeights& w, bool want_minimal = false);

CheegerResult dinkelbach_solve(const GridDomain& grid, const NeighborhoodWeights& w);

}  // namespace cheeger
