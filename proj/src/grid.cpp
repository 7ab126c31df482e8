#include "cheeger/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cheeger/domain.hpp"
#include "cheeger/error.hpp"
#include "cheeger/strips.hpp"

namespace cheeger {

GridDomain::GridDomain(int width, int height, double spacing, Vec2 origin, std::vector<std::uint8_t> mask)
    : width_(width), height_(height), spacing_(spacing), origin_(origin), mask_(std::move(mask)) {
  if (width <= 0 || height <= 0) throw Error(Errc::invalid_body, "grid dimensions must be positive");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw Error(Errc::invalid_body, "grid spacing must be positive");
  if (mask_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(Errc::invalid_body, "mask size does not match grid dimensions");
  }
  for (auto& m : mask_) m = m ? 1 : 0;
  count_ = static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
  if (count_ == 0) throw Error(Errc::resolution_too_coarse, "grid has no interior cell");
}

GridDomain GridDomain::with_mask(std::vector<std::uint8_t> mask) const {
  return GridDomain(width_, height_, spacing_, origin_, std::move(mask));
}

GridDomain GridDomain::scaled(double factor) const {
  return GridDomain(width_, height_, spacing_ * factor, factor * origin_, mask_);
}

std::vector<std::uint8_t> fill_ring(std::span<const Vec2> ring, int width, int height, double spacing, Vec2 origin) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(width) * height, 0);
  const std::size_t n = ring.size();
  if (n < 3) return mask;

  // Bucket edges by the rows whose center line they can cross.
  std::vector<std::vector<std::size_t>> rows(static_cast<std::size_t>(height));
  for (std::size_t e = 0; e < n; ++e) {
    const Vec2 a = ring[e];
    const Vec2 b = ring[(e + 1) % n];
    const double ylo = std::min(a.y, b.y);
    const double yhi = std::max(a.y, b.y);
    const int j0 = std::max(0, static_cast<int>(std::floor((ylo - origin.y) / spacing - 0.5)));
    const int j1 = std::min(height - 1, static_cast<int>(std::ceil((yhi - origin.y) / spacing - 0.5)));
    for (int j = j0; j <= j1; ++j) rows[static_cast<std::size_t>(j)].push_back(e);
  }

  std::vector<double> xs;
  for (int j = 0; j < height; ++j) {
    const double y = origin.y + (j + 0.5) * spacing;
    xs.clear();
    for (const std::size_t e : rows[static_cast<std::size_t>(j)]) {
      const Vec2 a = ring[e];
      const Vec2 b = ring[(e + 1) % n];
      if ((a.y > y) != (b.y > y)) xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // Cells whose center x lies strictly between the two crossings.
      const int i0 = std::max(0, static_cast<int>(std::ceil((xs[k] - origin.x) / spacing - 0.5)));
      const int i1 = std::min(width - 1, static_cast<int>(std::floor((xs[k + 1] - origin.x) / spacing - 0.5)));
      for (int i = i0; i <= i1; ++i) {
        const double cx = origin.x + (i + 0.5) * spacing;
        if (cx > xs[k] && cx < xs[k + 1]) mask[static_cast<std::size_t>(j) * width + i] = 1;
      }
    }
  }
  return mask;
}

namespace {

int cells_for(double extent, double spacing) {
  return std::max(1, static_cast<int>(std::ceil(extent / spacing - 1e-9)));
}

std::vector<std::uint8_t> fill_disks(std::span<const Disk> disks, int width, int height, double spacing, Vec2 origin) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(width) * height, 0);
  for (const auto& d : disks) {
    const int j0 = std::max(0, static_cast<int>(std::floor((d.center.y - d.radius - origin.y) / spacing)));
    const int j1 = std::min(height - 1, static_cast<int>(std::ceil((d.center.y + d.radius - origin.y) / spacing)));
    for (int j = j0; j <= j1; ++j) {
      const double dy = origin.y + (j + 0.5) * spacing - d.center.y;
      if (std::abs(dy) >= d.radius) continue;
      const double half = std::sqrt(d.radius * d.radius - dy * dy);
      const int i0 = std::max(0, static_cast<int>(std::floor((d.center.x - half - origin.x) / spacing)));
      const int i1 = std::min(width - 1, static_cast<int>(std::ceil((d.center.x + half - origin.x) / spacing)));
      for (int i = i0; i <= i1; ++i) {
        const double dx = origin.x + (i + 0.5) * spacing - d.center.x;
        if (dx * dx + dy * dy < d.radius * d.radius) mask[static_cast<std::size_t>(j) * width + i] = 1;
      }
    }
  }
  return mask;
}

// Lower envelope of parabolas (Felzenszwalb-Huttenlocher) for one line;
// infinite entries are not sites.
void edt_1d(const double* f, double* d, int n, std::vector<int>& v, std::vector<double>& z) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  v.resize(static_cast<std::size_t>(n));
  z.resize(static_cast<std::size_t>(n) + 1);
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == inf) continue;
    double s = -inf;
    while (k >= 0) {
      const int p = v[static_cast<std::size_t>(k)];
      s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s > z[static_cast<std::size_t>(k)]) break;
      --k;
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = k == 0 ? -inf : s;
    z[static_cast<std::size_t>(k) + 1] = inf;
  }
  if (k < 0) {
    std::fill(d, d + n, inf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[static_cast<std::size_t>(j) + 1] < q) ++j;
    const int p = v[static_cast<std::size_t>(j)];
    d[q] = double(q - p) * (q - p) + f[p];
  }
}

}  // namespace

std::vector<double> squared_distance_to_sites(std::span<const std::uint8_t> sites, int width, int height,
                                              bool border_is_site) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int pad = border_is_site ? 1 : 0;
  const int w = width + 2 * pad;
  const int h = height + 2 * pad;
  std::vector<double> grid(static_cast<std::size_t>(w) * h, border_is_site ? 0.0 : inf);
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      grid[static_cast<std::size_t>(j + pad) * w + (i + pad)] =
          sites[static_cast<std::size_t>(j) * width + i] ? 0.0 : inf;
    }
  }
  std::vector<int> v;
  std::vector<double> z;
  std::vector<double> line_in(static_cast<std::size_t>(std::max(w, h)));
  std::vector<double> line_out(static_cast<std::size_t>(std::max(w, h)));
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < h; ++j) line_in[static_cast<std::size_t>(j)] = grid[static_cast<std::size_t>(j) * w + i];
    edt_1d(line_in.data(), line_out.data(), h, v, z);
    for (int j = 0; j < h; ++j) grid[static_cast<std::size_t>(j) * w + i] = line_out[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < h; ++j) {
    double* row = grid.data() + static_cast<std::size_t>(j) * w;
    std::copy(row, row + w, line_in.begin());
    edt_1d(line_in.data(), row, w, v, z);
  }
  std::vector<double> out(static_cast<std::size_t>(width) * height);
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      out[static_cast<std::size_t>(j) * width + i] = grid[static_cast<std::size_t>(j + pad) * w + (i + pad)];
    }
  }
  return out;
}

ScalarField distance_transform(const GridDomain& grid) {
  std::vector<std::uint8_t> outside(grid.mask().size());
  for (std::size_t k = 0; k < outside.size(); ++k) outside[k] = grid.mask()[k] ? 0 : 1;
  const auto d2 = squared_distance_to_sites(outside, grid.width(), grid.height(), true);
  ScalarField field = ScalarField::zeros_like(grid);
  const double delta = grid.spacing();
  for (std::size_t k = 0; k < d2.size(); ++k) {
    if (grid.mask()[k]) field.values[k] = std::sqrt(d2[k]) * delta - 0.5 * delta;
  }
  return field;
}

std::vector<int> label_components(std::span<const std::uint8_t> mask, int width, int height, int* count) {
  std::vector<int> labels(mask.size(), 0);
  std::vector<std::size_t> stack;
  int next = 0;
  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (!mask[start] || labels[start]) continue;
    ++next;
    labels[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(k % width);
      const int j = static_cast<int>(k / width);
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ni = i + di[d];
        const int nj = j + dj[d];
        if (ni < 0 || nj < 0 || ni >= width || nj >= height) continue;
        const std::size_t nk = static_cast<std::size_t>(nj) * width + ni;
        if (mask[nk] && !labels[nk]) {
          labels[nk] = next;
          stack.push_back(nk);
        }
      }
    }
  }
  if (count) *count = next;
  return labels;
}

GridDomain rasterize(const DomainSpec& spec, double resolution) {
  if (const auto* m = std::get_if<MaskShape>(&spec.shape)) return m->grid;
  if (!(resolution >= 4.0)) throw Error(Errc::resolution_too_coarse, "resolution must be at least 4 cells per unit");
  validate(spec);
  const double spacing = 1.0 / resolution;
  const BoundingBox box = bounding_box(spec);
  const int width = cells_for(box.max.x - box.min.x, spacing);
  const int height = cells_for(box.max.y - box.min.y, spacing);

  std::vector<std::uint8_t> mask;
  if (const auto* p = std::get_if<PolygonShape>(&spec.shape)) {
    mask = fill_ring(p->vertices, width, height, spacing, box.min);
  } else if (const auto* d = std::get_if<DisksShape>(&spec.shape)) {
    mask = fill_disks(d->disks, width, height, spacing, box.min);
  } else if (const auto* s = std::get_if<StripShape>(&spec.shape)) {
    const Strip strip = build_strip(s->spine, s->halfwidth);
    auto ring = strip.outline();
    for (auto& v : ring) v = strip.scale() * v;
    mask = fill_ring(ring, width, height, spacing, box.min);
  }
  if (std::none_of(mask.begin(), mask.end(), [](std::uint8_t c) { return c != 0; })) {
    throw Error(Errc::resolution_too_coarse, "no cell center falls inside the domain");
  }
  return GridDomain(width, height, spacing, box.min, std::move(mask));
}

}  // namespace cheeger
