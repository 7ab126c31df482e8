#include "cheeger/grid_cheeger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cheeger/error.hpp"

namespace cheeger {

int NeighborhoodWeights::reach() const {
  int r = 0;
  for (const auto& o : offsets) r = std::max({r, std::abs(o.dx), std::abs(o.dy)});
  return r;
}

NeighborhoodWeights neighborhood_weights(int order, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw Error(Errc::invalid_body, "spacing must be positive");
  std::vector<Offset> half;
  switch (order) {
    case 16:
      half.insert(half.end(), {{1, 2}, {2, 1}, {2, -1}, {1, -2}});
      [[fallthrough]];
    case 8:
      half.insert(half.end(), {{1, 1}, {1, -1}});
      [[fallthrough]];
    case 4:
      half.insert(half.end(), {{1, 0}, {0, 1}});
      break;
    default:
      throw Error(Errc::unsupported_order, "neighbourhood order must be 4, 8 or 16, got " + std::to_string(order));
  }
  NeighborhoodWeights w;
  w.order = order;
  w.spacing = spacing;
  for (const auto& o : half) w.offsets.push_back(o);
  for (const auto& o : half) w.offsets.push_back({-o.dx, -o.dy});

  const std::size_t n = w.offsets.size();
  std::vector<double> angle(n);
  for (std::size_t k = 0; k < n; ++k) angle[k] = std::atan2(double(w.offsets[k].dy), double(w.offsets[k].dx));
  std::vector<std::size_t> order_idx(n);
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });

  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> raw(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t k = order_idx[s];
    double prev = angle[order_idx[(s + n - 1) % n]];
    double next = angle[order_idx[(s + 1) % n]];
    if (prev > angle[k]) prev -= two_pi;
    if (next < angle[k]) next += two_pi;
    const double len = std::hypot(double(w.offsets[k].dx), double(w.offsets[k].dy));
    raw[k] = 0.5 * (next - prev) / (2.0 * len);
  }
  // Opposite offsets share one weight exactly.
  for (std::size_t k = 0; k < n / 2; ++k) raw[k + n / 2] = raw[k];
  // Pairs crossing one vertical grid line per row: sum of dx * w over dx > 0.
  double per_row = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (w.offsets[k].dx > 0) per_row += w.offsets[k].dx * raw[k];
  }
  w.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) w.weights[k] = spacing * raw[k] / per_row;
  return w;
}

namespace {

struct Lattice {
  int width;
  int height;
  std::vector<std::uint8_t> mask;
};

double weight_scale(const GridDomain& grid, const NeighborhoodWeights& w) { return grid.spacing() / w.spacing; }

Measures lattice_measures(const std::vector<std::uint8_t>& F, int width, int height, const NeighborhoodWeights& w,
                          double wscale, double cell_area) {
  double perimeter = 0.0;
  std::size_t count = 0;
  const std::size_t K = w.offsets.size();
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      if (!F[static_cast<std::size_t>(j) * width + i]) continue;
      ++count;
      for (std::size_t k = 0; k < K; ++k) {
        const int ni = i + w.offsets[k].dx;
        const int nj = j + w.offsets[k].dy;
        const bool in = ni >= 0 && nj >= 0 && ni < width && nj < height &&
                        F[static_cast<std::size_t>(nj) * width + ni];
        if (!in) perimeter += w.weights[k];
      }
    }
  }
  return {static_cast<double>(count) * cell_area, perimeter * wscale};
}

// Largest minimiser of P(F) - h|F|. The smallest one is the complement of
// the largest sink side, i.e. of the largest source side of the problem
// with terminals swapped (arcs are symmetric).
std::vector<std::uint8_t> solve_cut(const Lattice& lat, const NeighborhoodWeights& w, double wscale, double cell_area,
                                    double h, SourceSide side) {
  const int pad = w.reach();
  const int W = lat.width + 2 * pad;
  const int H = lat.height + 2 * pad;
  GridMaxflow graph(W, H, w.offsets);
  const std::size_t K = w.offsets.size();
  auto inside = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < lat.width && j < lat.height && lat.mask[static_cast<std::size_t>(j) * lat.width + i];
  };
  for (int j = 0; j < lat.height; ++j) {
    for (int i = 0; i < lat.width; ++i) {
      if (!inside(i, j)) continue;
      const int n = graph.node(i + pad, j + pad);
      double to_sink = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        const double cap = w.weights[k] * wscale;
        if (inside(i + w.offsets[k].dx, j + w.offsets[k].dy)) graph.set_arc(n, static_cast<int>(k), cap);
        else to_sink += cap;
      }
      if (side == SourceSide::maximal) graph.add_terminal(n, h * cell_area, to_sink);
      else graph.add_terminal(n, to_sink, h * cell_area);
    }
  }
  graph.solve();
  const auto source_side = graph.maximal_source_side();
  std::vector<std::uint8_t> F(lat.mask.size(), 0);
  for (int j = 0; j < lat.height; ++j) {
    for (int i = 0; i < lat.width; ++i) {
      const std::size_t c = static_cast<std::size_t>(j) * lat.width + i;
      if (!lat.mask[c]) continue;
      const bool in = source_side[graph.node(i + pad, j + pad)] != 0;
      F[c] = (side == SourceSide::maximal) == in ? 1 : 0;
    }
  }
  return F;
}

bool empty(const std::vector<std::uint8_t>& F) {
  return std::none_of(F.begin(), F.end(), [](std::uint8_t c) { return c != 0; });
}

std::vector<int> label_by_offsets(const GridDomain& grid, const NeighborhoodWeights& w, int* count) {
  const int width = grid.width();
  std::vector<int> labels(grid.mask().size(), 0);
  std::vector<std::size_t> stack;
  int next = 0;
  for (std::size_t start = 0; start < labels.size(); ++start) {
    if (!grid.mask()[start] || labels[start]) continue;
    labels[start] = ++next;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(c % width);
      const int j = static_cast<int>(c / width);
      for (const auto& o : w.offsets) {
        if (!grid.inside(i + o.dx, j + o.dy)) continue;
        const std::size_t nc = static_cast<std::size_t>(j + o.dy) * width + (i + o.dx);
        if (!labels[nc]) {
          labels[nc] = next;
          stack.push_back(nc);
        }
      }
    }
  }
  *count = next;
  return labels;
}

}  // namespace

Measures discrete_measures(std::span<const std::uint8_t> F, const GridDomain& grid, const NeighborhoodWeights& w) {
  if (F.size() != grid.mask().size()) throw Error(Errc::domain_violation, "set and grid sizes differ");
  std::vector<std::uint8_t> set(F.size(), 0);
  for (std::size_t k = 0; k < F.size(); ++k) {
    if (!F[k]) continue;
    if (!grid.mask()[k]) {
      throw Error(Errc::domain_violation, "set cell " + std::to_string(k) + " lies outside the domain");
    }
    set[k] = 1;
  }
  return lattice_measures(set, grid.width(), grid.height(), w, weight_scale(grid, w), grid.cell_area());
}

CutSolution mincut_subproblem(const GridDomain& grid, const NeighborhoodWeights& w, double h, SourceSide side) {
  if (!(h >= 0.0)) throw Error(Errc::invalid_body, "h must be non-negative");
  const Lattice lat{grid.width(), grid.height(), grid.mask()};
  const double wscale = weight_scale(grid, w);
  CutSolution sol;
  sol.F = solve_cut(lat, w, wscale, grid.cell_area(), h, side);
  const Measures m = lattice_measures(sol.F, lat.width, lat.height, w, wscale, grid.cell_area());
  sol.perimeter = m.perimeter;
  sol.area = m.area;
  sol.objective = m.perimeter - h * m.area;
  return sol;
}

DinkelbachTrace dinkelbach(const GridDomain& grid, const NeighborhoodWeights& w, bool want_minimal) {
  const double wscale = weight_scale(grid, w);
  const double cell_area = grid.cell_area();
  const double tol = 1e-9 * grid.area();
  int ncomp = 0;
  const auto labels = label_by_offsets(grid, w, &ncomp);

  DinkelbachTrace best;
  best.components = ncomp;
  for (int c = 1; c <= ncomp; ++c) {
    int i0 = grid.width(), j0 = grid.height(), i1 = -1, j1 = -1;
    for (int j = 0; j < grid.height(); ++j) {
      for (int i = 0; i < grid.width(); ++i) {
        if (labels[static_cast<std::size_t>(j) * grid.width() + i] != c) continue;
        i0 = std::min(i0, i);
        j0 = std::min(j0, j);
        i1 = std::max(i1, i);
        j1 = std::max(j1, j);
      }
    }
    Lattice lat{i1 - i0 + 1, j1 - j0 + 1, {}};
    lat.mask.assign(static_cast<std::size_t>(lat.width) * lat.height, 0);
    for (int j = 0; j < lat.height; ++j) {
      for (int i = 0; i < lat.width; ++i) {
        lat.mask[static_cast<std::size_t>(j) * lat.width + i] =
            labels[static_cast<std::size_t>(j + j0) * grid.width() + (i + i0)] == c ? 1 : 0;
      }
    }

    auto measure = [&](const std::vector<std::uint8_t>& F) {
      return lattice_measures(F, lat.width, lat.height, w, wscale, cell_area);
    };
    std::vector<std::uint8_t> F = lat.mask;
    Measures m = measure(F);
    double h = m.perimeter / m.area;
    double productive_h = -1.0;
    std::vector<double> sequence{h};
    // Cuts are taken at h(1 + 1e-12): minimisers of the ratio then have a
    // strictly negative objective, so the largest source side is the union
    // of all of them rather than a rounding-dependent choice.
    for (int iter = 0; iter < 10000; ++iter) {
      const double hc = h * (1.0 + 1e-12);
      auto cut = solve_cut(lat, w, wscale, cell_area, hc, SourceSide::maximal);
      if (empty(cut)) break;
      const Measures mk = measure(cut);
      const double next = mk.perimeter / mk.area;
      if (mk.perimeter - h * mk.area >= -tol || !(next < h)) {
        if (std::abs(next - h) <= 1e-9 * h) F = std::move(cut);
        break;
      }
      productive_h = hc;
      h = next;
      sequence.push_back(h);
      F = std::move(cut);
    }
    std::vector<std::uint8_t> minimal = F;
    if (want_minimal && productive_h > 0.0) {
      auto cut = solve_cut(lat, w, wscale, cell_area, productive_h, SourceSide::minimal);
      if (!empty(cut)) {
        const Measures mm = measure(cut);
        if (std::abs(mm.perimeter / mm.area - h) <= 1e-9 * h) minimal = std::move(cut);
      }
    }

    if (c == 1 || h < best.h) {
      best.h = h;
      best.sequence = sequence;
      best.component = c;
      best.maximal.assign(grid.mask().size(), 0);
      best.minimal.assign(grid.mask().size(), 0);
      for (int j = 0; j < lat.height; ++j) {
        for (int i = 0; i < lat.width; ++i) {
          const std::size_t lc = static_cast<std::size_t>(j) * lat.width + i;
          const std::size_t gc = static_cast<std::size_t>(j + j0) * grid.width() + (i + i0);
          best.maximal[gc] = F[lc];
          best.minimal[gc] = minimal[lc];
        }
      }
    }
  }
  return best;
}

CheegerResult dinkelbach_solve(const GridDomain& grid, const NeighborhoodWeights& w) {
  DinkelbachTrace trace = dinkelbach(grid, w);
  CheegerResult result;
  result.method = Method::grid_dinkelbach;
  result.h = trace.h;
  result.r = 1.0 / trace.h;
  const Measures m = discrete_measures(trace.maximal, grid, w);
  const Measures dom = discrete_measures(grid.mask(), grid, w);
  result.set_area = m.area;
  result.set_perimeter = m.perimeter;
  result.set = grid.with_mask(std::move(trace.maximal));

  auto& diag = result.diagnostics;
  diag["order"] = w.order;
  diag["spacing"] = grid.spacing();
  diag["iterations"] = static_cast<double>(trace.sequence.size() - 1);
  for (std::size_t k = 0; k < trace.sequence.size(); ++k) diag["h_iter_" + std::to_string(k)] = trace.sequence[k];
  diag["component"] = trace.component;
  diag["components"] = trace.components;
  diag["domain_area"] = dom.area;
  diag["domain_perimeter"] = dom.perimeter;
  return result;
}

}  // namespace cheeger
