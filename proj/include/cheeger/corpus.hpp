#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cheeger/domain.hpp"
#include "cheeger/grid.hpp"
#include "cheeger/result.hpp"

namespace cheeger {

// Disjoint disks of radii 1 and 2/3.
DomainSpec two_disks();

// Unit-side equilateral triangle with a vertical left side and the opposite
// vertex on the positive x axis.
DomainSpec unit_triangle();

// The triangle cut by the vertical line tangent to its Cheeger set, with the
// left part reflected across that line. Symmetric under the half turn about
// (cut, 0).
DomainSpec bowtie();
// x coordinate of the cut line.
double bowtie_cut();

// Bow-tie whose concave corners are moved apart vertically so that the four
// inner edges make angle alpha with the cut line (the bow-tie itself has
// alpha = pi/3). Throws invalid_body unless atan(2 cut) < alpha < pi/2.
DomainSpec loose_bowtie(double alpha);

// Unit squares [0,1]^2 and [1+length, 2+length] x [0,1] joined by a
// horizontal bridge of width w centred at y = 1/2.
DomainSpec two_squares_bridge(double w = 0.05, double length = 0.3);

// Unit disk at the origin plus the disk of radius sin(theta) centred at
// (cos(theta), 0), theta in (0, pi/2).
DomainSpec pinocchio(double theta);
double pinocchio_perimeter(double theta);
double pinocchio_area(double theta);

// Pinocchio with the nose disk swept a distance t along +x, rasterised at
// `resolution` cells per unit.
DomainSpec pinocchio_elongated(double theta, double t, double resolution);

// Names accepted by builtin_example: two_disks, triangle, bowtie,
// loose_bowtie(alpha), two_squares_bridge(w), pinocchio(theta). pinocchio
// without an argument uses the root of solve_pinocchio_theta.
std::vector<std::string> example_names();
DomainSpec builtin_example(std::string_view name);

struct PinocchioRoot {
  double theta = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// 2(pi - t) sin t + (pi/2) sin^2 t - (pi - t) - sin(2t)/2.
double pinocchio_equation(double theta);
PinocchioRoot solve_pinocchio_theta();

// (2 alpha + sin 2 alpha) r^2.
double loose_bowtie_area(double alpha, double r);

struct EigenvalueReport {
  int p = 2;
  // Smallest Dirichlet eigenvalue of the 5-point Laplacian (zero on the
  // cell faces of the mask boundary); NaN unless p = 2.
  double eigenvalue = 0.0;
  double h = 0.0;
  double bound = 0.0;  // h^p / p^p
  bool holds = false;
  int iterations = 0;
};

// Inverse power iteration to relative tolerance 1e-8. h defaults to the
// 16-neighbour grid solver on the same lattice.
EigenvalueReport eigenvalue_bound_check(const GridDomain& grid, int p = 2, std::optional<double> h = {});

enum class Solvability { subcritical, critical, supercritical };
const char* to_string(Solvability s);
Solvability curvature_solvability(double H, double h);

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  // Signed distance to the threshold; positive means the check holds.
  double slack = 0.0;
};

struct CheckReport {
  std::vector<Check> checks;
  bool all_pass() const;
};

// Ratio and h*r consistency, volume lower bound, isoperimetric lower bound
// and, for strips, membership in the strip bounds.
CheckReport verify_result(const CheegerResult& result, const DomainSpec& domain);

// Cells of F whose image under the half turn about `center` disagrees with F
// and that are not within one cell of a disagreeing boundary.
std::size_t half_turn_defect(const GridDomain& grid, std::span<const std::uint8_t> F, Vec2 center);

}  // namespace cheeger
