#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "cheeger/geometry.hpp"

namespace testing {

inline double shoelace(const std::vector<cheeger::Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    s += a.x * b.y - a.y * b.x;
  }
  return 0.5 * s;
}

inline double edge_sum(const std::vector<cheeger::Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    s += std::hypot(b.x - a.x, b.y - a.y);
  }
  return s;
}

// Andrew's monotone chain, counter-clockwise, collinear points dropped.
inline std::vector<cheeger::Vec2> convex_hull(std::vector<cheeger::Vec2> p) {
  std::sort(p.begin(), p.end(), [](auto a, auto b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  auto turn = [](auto o, auto a, auto b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
  std::vector<cheeger::Vec2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

// Hull of 5-20 uniform points in [-1, 1]^2 with area at least 0.2.
inline std::vector<cheeger::Vec2> random_convex_polygon(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_int_distribution<int> count(5, 20);
  for (;;) {
    std::vector<cheeger::Vec2> pts(count(rng));
    for (auto& q : pts) q = {coord(rng), coord(rng)};
    auto hull = convex_hull(pts);
    if (hull.size() >= 3 && shoelace(hull) > 0.2) return hull;
  }
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline std::vector<cheeger::Vec2> regular_polygon(int k, double radius = 1.0) {
  std::vector<cheeger::Vec2> v;
  for (int i = 0; i < k; ++i) {
    const double a = 2.0 * std::numbers::pi * i / k;
    v.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return v;
}

}  // namespace testing
