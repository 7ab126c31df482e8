#pragma once

#include "cheeger/geometry.hpp"
#include "cheeger/result.hpp"

namespace cheeger {

// |{x : dist(x, boundary) > r}|; zero once r reaches the inradius.
double inner_area_profile(const ConvexBody& body, double r);

struct CheegerRadius {
  double r = 0.0;
  double h = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

// Root of |E_r| = pi r^2 on (0, inradius] by bisection (tolerance 1e-13 on
// r, at most 200 steps). Disks return R/2 exactly.
CheegerRadius cheeger_radius(const ConvexBody& body);

// The Cheeger set E_r + B_r with its inner set E_r.
CheegerResult cheeger_set(const ConvexBody& body);

}  // namespace cheeger
