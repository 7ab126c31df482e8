#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cheeger/convex_cheeger.hpp"
#include "cheeger/corpus.hpp"
#include "cheeger/domain.hpp"
#include "cheeger/error.hpp"
#include "cheeger/grid.hpp"
#include "cheeger/grid_cheeger.hpp"
#include "cheeger/strips.hpp"
#include "support.hpp"

using namespace cheeger;
using std::numbers::pi;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return Errc::io_error;
}

const std::vector<Vec2> kSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

// Cell-centred 5-point Laplacian with ghost value -u outside: sin(pi x) sin(pi y)
// sampled at the centres is an exact eigenvector of the discrete operator.
double discrete_square_eigenvalue(int n) {
  const double d = 1.0 / n;
  return 2 * 4 / (d * d) * std::pow(std::sin(pi * d / 2), 2);
}

}  // namespace

TEST_CASE("two disks") {
  const auto spec = builtin_example("two_disks");
  const auto m = domain_measures(spec);
  CHECK(std::abs(m.area - 13 * pi / 9) <= 1e-12);
  CHECK(std::abs(m.perimeter - 10 * pi / 3) <= 1e-12);
  CHECK(std::abs(m.perimeter / m.area - 30.0 / 13) <= 1e-12);
  CHECK(spec.expected.at("ratio") == 30.0 / 13);
  const auto& disks = std::get<DisksShape>(spec.shape).disks;
  REQUIRE(disks.size() == 2);
  CHECK(norm(disks[0].center - disks[1].center) > disks[0].radius + disks[1].radius);
}

TEST_CASE("pinocchio measures") {
  const double t = pi / 4;
  CHECK(std::abs(pinocchio_perimeter(t) - (3 * pi / 2 + pi * std::sqrt(2.0) / 2)) <= 1e-12);
  CHECK(std::abs(pinocchio_area(t) - (3 * pi / 4 + 0.5 + pi / 4)) <= 1e-12);
  // The nose disk meets the unit circle at angle +-theta, so the union is
  // measured exactly by the two-disk lens formula.
  for (const double theta : {0.2, pi / 4, 1.3}) {
    const auto m = domain_measures(pinocchio(theta));
    CHECK(testing::rel_err(m.area, pinocchio_area(theta)) <= 1e-12);
    CHECK(testing::rel_err(m.perimeter, pinocchio_perimeter(theta)) <= 1e-12);
  }
}

TEST_CASE("pinocchio angle") {
  CHECK(pinocchio_equation(0.5) < 0);
  CHECK(pinocchio_equation(0.6) > 0);
  const auto root = solve_pinocchio_theta();
  CHECK(root.theta > 0.5);
  CHECK(root.theta < 0.6);
  CHECK(root.theta == doctest::Approx(0.531).epsilon(1e-3));
  CHECK(std::abs(root.residual) <= 1e-12);
  CHECK(std::abs(pinocchio_equation(root.theta)) <= 1e-12);
  const double ratio = pinocchio_perimeter(root.theta) / pinocchio_area(root.theta);
  CHECK(std::abs(ratio * std::sin(root.theta) - 1) <= 1e-10);
  CHECK(1 / std::sin(root.theta) == doctest::Approx(1.974).epsilon(1e-3));

  const auto spec = builtin_example("pinocchio");
  CHECK(spec.expected.at("h") == 1 / std::sin(root.theta));
  CHECK(std::get<DisksShape>(spec.shape).disks[1].radius == std::sin(root.theta));
}

TEST_CASE("pinocchio on the grid at a coarse resolution") {
  const double theta = solve_pinocchio_theta().theta;
  const double exact = 1 / std::sin(theta);
  const auto base = dinkelbach(rasterize(pinocchio(theta), 64), neighborhood_weights(16, 1.0 / 64)).h;
  CHECK(testing::rel_err(base, exact) <= 0.03);
  for (const double t : {0.25, 0.5}) {
    const auto spec = pinocchio_elongated(theta, t, 64);
    CHECK(spec.expected.at("ratio") == exact);
    const auto& grid = std::get<MaskShape>(spec.shape).grid;
    const double h = dinkelbach(grid, neighborhood_weights(16, grid.spacing())).h;
    CHECK(testing::rel_err(h, exact) <= 0.03);
  }
}

TEST_CASE("bow-tie construction") {
  const double c = bowtie_cut();
  const auto triangle = ConvexBody::polygon(std::get<PolygonShape>(unit_triangle().shape).vertices);
  const auto set = cheeger_set(triangle);
  // The cut is tangent to the right-hand arc of the triangle's Cheeger set.
  double xmax = -1.0;
  for (const auto& e : std::get<RoundedRegion>(set.set).boundary()) {
    if (const auto* a = std::get_if<Arc>(&e)) xmax = std::max(xmax, a->center.x + a->radius);
  }
  CHECK(std::abs(c - xmax) <= 1e-12);
  CHECK(c < std::sqrt(3.0) / 2);

  const auto bow = bowtie();
  const auto& v = std::get<PolygonShape>(bow.shape).vertices;
  for (const auto& p : v) {
    const Vec2 q{2 * c - p.x, -p.y};
    bool found = false;
    for (const auto& u : v) found = found || norm(u - q) <= 1e-12;
    CHECK(found);
  }
  CHECK(bow.expected.at("h_triangle") == cheeger_radius(triangle).h);
  // The bow-tie is the triangle minus the tip, plus its mirror image.
  const double tip = std::pow(std::sqrt(3.0) / 2 - c, 2) / std::sqrt(3.0);
  CHECK(testing::rel_err(domain_measures(bow).area, 2 * (std::sqrt(3.0) / 4 - tip)) <= 1e-12);

  const auto loose = loose_bowtie(pi / 3);
  const auto& w = std::get<PolygonShape>(loose.shape).vertices;
  REQUIRE(w.size() == v.size());
  for (std::size_t k = 0; k < v.size(); ++k) CHECK(norm(v[k] - w[k]) <= 1e-12);
  CHECK(code_of([&] { loose_bowtie(std::atan(2 * c) - 0.01); }) == Errc::invalid_body);
  CHECK(code_of([] { loose_bowtie(pi / 2); }) == Errc::invalid_body);
}

TEST_CASE("bow-tie on the grid at a coarse resolution") {
  const auto bow = bowtie();
  const auto grid = rasterize(bow, 128);
  const auto trace = dinkelbach(grid, neighborhood_weights(16, grid.spacing()));
  const double ht = dinkelbach(rasterize(unit_triangle(), 128), neighborhood_weights(16, 1.0 / 128)).h;
  CHECK(trace.h < ht);
  CHECK(half_turn_defect(grid, grid.mask(), {bowtie_cut(), 0}) == 0);
  CHECK(half_turn_defect(grid, trace.maximal, {bowtie_cut(), 0}) == 0);
}

TEST_CASE("two squares joined by a bridge") {
  const auto spec = builtin_example("two_squares_bridge(0.05)");
  const auto& v = std::get<PolygonShape>(spec.shape).vertices;
  CHECK(v.size() == 12);
  CHECK(testing::rel_err(domain_measures(spec).area, 2 + 0.05 * 0.3) <= 1e-12);
  const auto left = cheeger_radius(ConvexBody::polygon(kSquare)).h;
  const auto right = cheeger_radius(ConvexBody::polygon({{1.3, 0}, {2.3, 0}, {2.3, 1}, {1.3, 1}})).h;
  CHECK(std::abs(left - right) <= 1e-10);
  CHECK(testing::rel_err(spec.expected.at("h"), left) <= 1e-10);

  const auto grid = rasterize(spec, 64);
  const auto trace = dinkelbach(grid, neighborhood_weights(16, grid.spacing()));
  // Both squares' interiors (away from the rounded corners) lie in the maximal minimiser.
  int left_cells = 0, right_cells = 0;
  for (int j = 0; j < grid.height(); ++j)
    for (int i = 0; i < grid.width(); ++i) {
      const Vec2 p = grid.center(i, j);
      if (!trace.maximal[grid.index(i, j)]) continue;
      if (std::abs(p.x - 0.5) < 0.3 && std::abs(p.y - 0.5) < 0.3) ++left_cells;
      if (std::abs(p.x - 1.8) < 0.3 && std::abs(p.y - 0.5) < 0.3) ++right_cells;
    }
  CHECK(left_cells == right_cells);
  CHECK(left_cells > 0.3 * 0.3 * 4 * 64 * 64 - 8 * 64);
  CHECK(code_of([] { two_squares_bridge(1.5); }) == Errc::invalid_body);
}

TEST_CASE("loose bow-tie area") {
  CHECK(loose_bowtie_area(pi / 2, 1.0) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(loose_bowtie_area(pi / 2, 0.3) == doctest::Approx(pi * 0.09).epsilon(1e-15));
  CHECK(loose_bowtie_area(pi / 4, 1.0) == doctest::Approx(pi / 2 + 1).epsilon(1e-15));
  CHECK(loose_bowtie_area(1.0, 2.0) == doctest::Approx(4 * (2 + std::sin(2.0))).epsilon(1e-15));
}

TEST_CASE("eigenvalue bound on the square") {
  const DomainSpec square{"square", PolygonShape{kSquare}, {}};
  for (const int n : {16, 32}) {
    const auto rep = eigenvalue_bound_check(rasterize(square, n), 2, 2 + std::sqrt(pi));
    CHECK(testing::rel_err(rep.eigenvalue, discrete_square_eigenvalue(n)) <= 1e-7);
    CHECK(rep.bound == doctest::Approx(std::pow(2 + std::sqrt(pi), 2) / 4).epsilon(1e-15));
    CHECK(rep.bound == doctest::Approx(3.558).epsilon(1e-3));
    CHECK(rep.holds);
  }
  const auto rep = eigenvalue_bound_check(rasterize(square, 64));
  CHECK(testing::rel_err(rep.eigenvalue, 2 * pi * pi) <= 0.01);
  CHECK(testing::rel_err(rep.h, 2 + std::sqrt(pi)) <= 0.03);
  CHECK(rep.holds);
}

TEST_CASE("eigenvalue bound on the disk") {
  const DomainSpec disk{"disk", DisksShape{{{{0, 0}, 1.0}}}, {}};
  const auto rep = eigenvalue_bound_check(rasterize(disk, 64), 2, 2.0);
  // j_{0,1}^2.
  CHECK(testing::rel_err(rep.eigenvalue, 5.783185962946784) <= 0.01);
  CHECK(rep.bound == 1.0);
  CHECK(rep.holds);
}

TEST_CASE("eigenvalue bound for other p") {
  const DomainSpec square{"square", PolygonShape{kSquare}, {}};
  const auto grid = rasterize(square, 16);
  const auto p1 = eigenvalue_bound_check(grid, 1, 3.5);
  CHECK(p1.bound == 3.5);
  CHECK(std::isnan(p1.eigenvalue));
  const auto p3 = eigenvalue_bound_check(grid, 3, 3.0);
  CHECK(p3.bound == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(code_of([&] { eigenvalue_bound_check(grid, 0, 1.0); }) == Errc::invalid_body);
}

TEST_CASE("curvature solvability") {
  CHECK(curvature_solvability(1.0, 2 + std::sqrt(pi)) == Solvability::subcritical);
  CHECK(curvature_solvability(2.0, 2.0) == Solvability::critical);
  CHECK(curvature_solvability(4.0, 2 + std::sqrt(pi)) == Solvability::supercritical);
  CHECK(curvature_solvability(0.0, 1.0) == Solvability::subcritical);
  CHECK(std::string(to_string(Solvability::critical)) == "critical");
  CHECK(code_of([] { curvature_solvability(-1.0, 1.0); }) == Errc::invalid_body);
  CHECK(code_of([] { curvature_solvability(1.0, 0.0); }) == Errc::invalid_body);
}

TEST_CASE("verification of results") {
  const DomainSpec square{"square", PolygonShape{kSquare}, {}};
  auto result = cheeger_set(ConvexBody::polygon(kSquare));
  const auto rep = verify_result(result, square);
  CHECK(rep.all_pass());
  CHECK(rep.checks.size() == 4);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CHECK(c.slack >= 0);
    if (c.name == "volume_bound") {
      CHECK(c.value == doctest::Approx(0.939682).epsilon(1e-6));
      CHECK(c.threshold == doctest::Approx(0.8830).epsilon(1e-4));
    }
  }

  result.r *= 1.01;
  const auto bad = verify_result(result, square);
  CHECK_FALSE(bad.all_pass());
  CHECK_FALSE(bad.checks.front().pass);
  CHECK(bad.checks.front().name == "hr_identity");
  CHECK(bad.checks.front().slack < 0);

  const auto disks = two_disks();
  const auto grid = rasterize(disks, 64);
  const auto grid_result = dinkelbach_solve(grid, neighborhood_weights(16, grid.spacing()));
  const auto drep = verify_result(grid_result, disks);
  CHECK(drep.all_pass());
  for (const auto& c : drep.checks) {
    if (c.name == "isoperimetric_bound") CHECK(c.threshold == doctest::Approx(6 / std::sqrt(13.0)).epsilon(1e-8));
  }
  CHECK(6 / std::sqrt(13.0) == doctest::Approx(1.664).epsilon(1e-3));

  const std::vector<Vec2> spine{{0, 0}, {20, 0}};
  const auto strip = strip_cheeger(build_strip(spine, 1.0), 64);
  const DomainSpec sspec{"strip", StripShape{spine, 1.0}, {}};
  const auto srep = verify_result(strip, sspec);
  for (const auto& c : srep.checks) {
    CAPTURE(c.name);
    CAPTURE(c.value);
    CAPTURE(c.threshold);
    CHECK(c.pass);
  }
  int strip_checks = 0;
  for (const auto& c : srep.checks) strip_checks += c.name.starts_with("strip_");
  CHECK(strip_checks == 2);
}

TEST_CASE("half-turn defect") {
  std::vector<std::uint8_t> mask(64, 0);
  for (int j = 2; j < 6; ++j)
    for (int i = 1; i < 7; ++i) mask[j * 8 + i] = 1;
  const GridDomain grid(8, 8, 1.0, {0, 0}, mask);
  CHECK(half_turn_defect(grid, mask, {4, 4}) == 0);
  // Shifting the block by one cell stays within the one-layer allowance.
  CHECK(half_turn_defect(grid, mask, {4.5, 4}) == 0);
  std::vector<std::uint8_t> lopsided(64, 0);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) lopsided[j * 8 + i] = 1;
  CHECK(half_turn_defect(grid.with_mask(lopsided), lopsided, {4, 4}) > 0);
}

TEST_CASE("example names") {
  for (const auto& name : example_names()) {
    CAPTURE(name);
    const auto spec = builtin_example(name);
    CHECK_NOTHROW(validate(spec));
    CHECK(domain_measures(spec).area > 0);
  }
  CHECK(code_of([] { builtin_example("three_disks"); }) == Errc::unknown_example);
  CHECK(code_of([] { builtin_example("pinocchio(x)"); }) == Errc::unknown_example);
  CHECK(code_of([] { builtin_example("pinocchio(0.5"); }) == Errc::unknown_example);
  CHECK(code_of([] { builtin_example("pinocchio(2)"); }) == Errc::invalid_body);
  CHECK(code_of([] { pinocchio(0.0); }) == Errc::invalid_body);
  CHECK(code_of([] { pinocchio_area(pi / 2); }) == Errc::invalid_body);
}
