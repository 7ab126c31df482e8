#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cheeger/geometry.hpp"
#include "cheeger/grid.hpp"

namespace cheeger {

enum class Method { convex_exact, grid_dinkelbach, strip_inner };

const char* to_string(Method m);

// Graph description of a strip Cheeger set in tube coordinates: at spine
// arc length t[i] the set occupies lower[i] < u < upper[i].
struct StripProfiles {
  std::vector<double> t;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct StripSet {
  StripProfiles profiles;
  GridDomain mask;
};

// monostate only for a default-constructed result.
using CheegerSet = std::variant<std::monostate, RoundedRegion, GridDomain, StripSet>;

struct CheegerResult {
  double h = 0.0;
  double r = 0.0;
  Method method = Method::convex_exact;
  CheegerSet set;
  std::optional<CheegerSet> inner_set;
  double set_area = 0.0;
  double set_perimeter = 0.0;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
};

}  // namespace cheeger
