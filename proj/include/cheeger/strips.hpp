#pragma once

#include <span>
#include <vector>

#include "cheeger/geometry.hpp"
#include "cheeger/result.hpp"

namespace cheeger {

inline constexpr double kCurvatureMargin = 1e-3;
inline constexpr double kMaxSpineSpacing = 0.01;

// Tubular neighbourhood of half-width 1 around an arc-length sampled spine,
// stored in normalised units (input lengths divided by the half-width).
class Strip {
public:
  double length() const { return length_; }
  double spacing() const { return spacing_; }
  // Input half-width; multiply normalised lengths by it to get input units.
  double scale() const { return scale_; }
  std::size_t size() const { return points_.size(); }

  double t(std::size_t i) const { return spacing_ * static_cast<double>(i); }
  const std::vector<Vec2>& points() const { return points_; }
  const std::vector<Vec2>& tangents() const { return tangents_; }
  const std::vector<Vec2>& normals() const { return normals_; }
  const std::vector<double>& curvature() const { return curvature_; }

  // Tube map gamma(t_i) + u * nu(t_i).
  Vec2 psi(std::size_t i, double u) const { return points_[i] + u * normals_[i]; }
  // Tube map at arbitrary t, interpolating between samples.
  Vec2 psi(double t, double u) const;

  // Counter-clockwise boundary ring: lower curve forward, upper curve back.
  std::vector<Vec2> outline() const;

private:
  friend Strip build_strip(std::span<const Vec2> spine, double halfwidth);
  double length_ = 0.0;
  double spacing_ = 0.0;
  double scale_ = 1.0;
  std::vector<Vec2> points_;
  std::vector<Vec2> tangents_;
  std::vector<Vec2> normals_;
  std::vector<double> curvature_;
};

// Interpolates the spine with a chord-length natural cubic spline, rescales
// to half-width 1 and resamples by arc length at spacing <= 0.01. Throws
// curvature_violation (|kappa| > 1 - 1e-3) or crossing (two cross-sections
// meet).
Strip build_strip(std::span<const Vec2> spine, double halfwidth);

// Area and perimeter in normalised units: (2L, 2L + 4) up to quadrature.
Measures strip_measures(const Strip& strip);

struct StripBounds {
  double lower;
  double upper;
  double asymptotic;
};

// (1 + 1/(400L), 1 + 2/L, 1 + pi/(2L)).
StripBounds strip_bounds(double length);

inline constexpr int kDefaultStripCells = 256;

// Cheeger constant of the strip from the inner Cheeger formula, with the
// boundary distance of every cell centre of a lattice with `cells_across`
// cells over the width 2.
// h and r are reported in normalised units; diagnostics carry the input-unit
// values as "h_input" and "r_input".
CheegerResult strip_cheeger(const Strip& strip, int cells_across = kDefaultStripCells);

// Sub-cell area of {dist >= r}: each cell contributes the fraction
// clamp((dist - r)/spacing + 1/2, 0, 1).
double superlevel_area(const ScalarField& dist, double r);

}  // namespace cheeger
