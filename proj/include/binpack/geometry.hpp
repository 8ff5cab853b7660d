#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

namespace binpack {

// Axis-aligned cuboid anchored at its front-left-bottom corner.
// Integer coordinates throughout; all predicates are exact.
struct Box {
  int x = 0, y = 0, z = 0;  // FLB corner
  int l = 0, w = 0, h = 0;  // extent along X, Y, Z (positive)

  long long volume() const { return 1LL * l * w * h; }
  int x2() const { return x + l; }
  int y2() const { return y + w; }
  int z2() const { return z + h; }  // top face height

  auto operator<=>(const Box&) const = default;
};

using Dims = std::array<int, 3>;

// Distinct axis-aligned orientations of a dimension triple, deduplicated,
// in lexicographic descending order. Size is 1, 3 or 6 depending on
// dimension equality. Throws std::invalid_argument on non-positive dims.
std::vector<Dims> orientations(const Dims& dims);

// Open-interior intersection test; face or edge contact is not overlap.
bool overlaps(const Box& a, const Box& b);

// Closed containment; boundary contact allowed.
bool contains(const Box& outer, const Box& inner);

// Area of the XY intersection of upper's bottom face with lower's top face,
// or 0 when upper does not rest exactly on top of lower.
long long horizontal_contact_area(const Box& upper, const Box& lower);

}  // namespace binpack
