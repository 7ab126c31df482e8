#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cheeger/geometry.hpp"
#include "cheeger/grid.hpp"

namespace cheeger {

// Simple polygon, convex or not.
struct PolygonShape {
  std::vector<Vec2> vertices;
};

// Union of disks. Any number of pairwise-disjoint disks, or exactly two
// overlapping disks (lens union).
struct DisksShape {
  std::vector<Disk> disks;
};

struct StripShape {
  std::vector<Vec2> spine;
  double halfwidth = 1.0;
};

struct MaskShape {
  GridDomain grid;
  std::string source;
};

using DomainShape = std::variant<PolygonShape, DisksShape, StripShape, MaskShape>;

struct DomainSpec {
  std::string name;
  DomainShape shape;
  // Reference values attached to corpus entries (e.g. "h", "ratio").
  std::map<std::string, double> expected;
};

const char* variant_name(const DomainSpec& spec);

// Throws invalid_body when the geometry violates its variant's invariants.
void validate(const DomainSpec& spec);

struct BoundingBox {
  Vec2 min;
  Vec2 max;
};

BoundingBox bounding_box(const DomainSpec& spec);

// Exact area and perimeter where closed forms exist; masks use the cell
// count and the 16-neighbour discrete perimeter.
Measures domain_measures(const DomainSpec& spec);

// The convex body for a convex polygon or a single disk, otherwise nullopt.
std::optional<ConvexBody> as_convex_body(const DomainSpec& spec);

}  // namespace cheeger
