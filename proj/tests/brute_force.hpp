#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "cheeger/grid.hpp"
#include "cheeger/grid_cheeger.hpp"

namespace testing {

using cheeger::GridDomain;
using cheeger::NeighborhoodWeights;
using Mask = std::vector<std::uint8_t>;

// Every pair (a in F, b not in F) along an offset pays that offset's weight;
// cells beyond the lattice are outside.
inline double perimeter_of(const Mask& F, int width, int height, const NeighborhoodWeights& w) {
  double p = 0.0;
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      if (!F[static_cast<std::size_t>(j) * width + i]) continue;
      for (std::size_t k = 0; k < w.offsets.size(); ++k) {
        const int a = i + w.offsets[k].dx;
        const int b = j + w.offsets[k].dy;
        if (a < 0 || b < 0 || a >= width || b >= height || !F[static_cast<std::size_t>(b) * width + a]) p += w.weights[k];
      }
    }
  }
  return p;
}

inline double ratio_of(const Mask& F, const GridDomain& g, const NeighborhoodWeights& w) {
  std::size_t n = 0;
  for (const auto c : F) n += c;
  return perimeter_of(F, g.width(), g.height(), w) / (static_cast<double>(n) * g.cell_area());
}

// Exhaustive minimum of P/|F| over nonempty subsets of the mask.
inline double brute_force_h(const GridDomain& g, const NeighborhoodWeights& w) {
  std::vector<std::size_t> cells;
  for (std::size_t k = 0; k < g.mask().size(); ++k)
    if (g.mask()[k]) cells.push_back(k);
  double best = std::numeric_limits<double>::infinity();
  Mask F(g.mask().size(), 0);
  for (std::uint32_t bits = 1; bits < (1u << cells.size()); ++bits) {
    for (std::size_t b = 0; b < cells.size(); ++b) F[cells[b]] = (bits >> b) & 1u;
    best = std::min(best, ratio_of(F, g, w));
  }
  return best;
}

}  // namespace testing
