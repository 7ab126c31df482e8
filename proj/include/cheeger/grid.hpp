#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cheeger/geometry.hpp"

namespace cheeger {

struct DomainSpec;

// Binary occupancy mask on a uniform lattice. Cell (i, j) covers
// [origin + (i, j) * spacing, origin + (i + 1, j + 1) * spacing]; everything
// beyond the lattice counts as outside.
class GridDomain {
public:
  GridDomain(int width, int height, double spacing, Vec2 origin, std::vector<std::uint8_t> mask);

  int width() const { return width_; }
  int height() const { return height_; }
  double spacing() const { return spacing_; }
  Vec2 origin() const { return origin_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width_ + i; }
  bool inside(int i, int j) const {
    return i >= 0 && j >= 0 && i < width_ && j < height_ && mask_[index(i, j)] != 0;
  }
  Vec2 center(int i, int j) const {
    return {origin_.x + (i + 0.5) * spacing_, origin_.y + (j + 0.5) * spacing_};
  }
  std::size_t cell_count() const { return count_; }
  double cell_area() const { return spacing_ * spacing_; }
  double area() const { return static_cast<double>(count_) * cell_area(); }

  // Same lattice, new mask (which must also be non-empty).
  GridDomain with_mask(std::vector<std::uint8_t> mask) const;
  // Same mask and cell counts with spacing and origin multiplied by factor.
  GridDomain scaled(double factor) const;

private:
  int width_;
  int height_;
  double spacing_;
  Vec2 origin_;
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

// One real value per lattice cell.
struct ScalarField {
  int width = 0;
  int height = 0;
  double spacing = 1.0;
  Vec2 origin;
  std::vector<double> values;

  double& at(int i, int j) { return values[static_cast<std::size_t>(j) * width + i]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * width + i]; }

  static ScalarField zeros_like(const GridDomain& grid) {
    return {grid.width(), grid.height(), grid.spacing(), grid.origin(),
            std::vector<double>(static_cast<std::size_t>(grid.width()) * grid.height(), 0.0)};
  }
};

// Cell is inside iff its center is inside the domain. `resolution` is in
// cells per unit length and must be at least 4. Mask specs are returned as
// stored.
GridDomain rasterize(const DomainSpec& spec, double resolution);

// Even-odd scanline fill of a closed ring onto a lattice.
std::vector<std::uint8_t> fill_ring(std::span<const Vec2> ring, int width, int height, double spacing, Vec2 origin);

// Squared Euclidean distance (in cell units) from every cell center to the
// nearest site cell center. With `border_is_site` the ring of cells just
// outside the lattice also counts as sites.
std::vector<double> squared_distance_to_sites(std::span<const std::uint8_t> sites, int width, int height,
                                              bool border_is_site);

// Distance from each inside cell center to the nearest outside cell center,
// minus half a cell; zero outside.
ScalarField distance_transform(const GridDomain& grid);

// Connected components of the mask under 4-adjacency; labels are 1-based,
// 0 marks outside cells, numbered in raster order of first cell.
std::vector<int> label_components(std::span<const std::uint8_t> mask, int width, int height, int* count = nullptr);

}  // namespace cheeger
