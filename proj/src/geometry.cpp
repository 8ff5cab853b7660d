#include "binpack/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace binpack {

std::vector<Dims> orientations(const Dims& dims) {
  if (dims[0] <= 0 || dims[1] <= 0 || dims[2] <= 0) {
    throw std::invalid_argument("orientations: dimensions must be positive");
  }
  Dims sorted = dims;
  std::sort(sorted.begin(), sorted.end(), std::greater<int>());
  std::vector<Dims> out;
  // std::next_permutation over a descending start enumerates nothing, so
  // walk permutations from the ascending arrangement and sort afterwards.
  std::sort(sorted.begin(), sorted.end());
  do {
    out.push_back(sorted);
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  std::sort(out.begin(), out.end(), std::greater<Dims>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool overlaps(const Box& a, const Box& b) {
  return a.x < b.x2() && a.x2() > b.x &&
         a.y < b.y2() && a.y2() > b.y &&
         a.z < b.z2() && a.z2() > b.z;
}

bool contains(const Box& outer, const Box& inner) {
  return outer.x <= inner.x && inner.x2() <= outer.x2() &&
         outer.y <= inner.y && inner.y2() <= outer.y2() &&
         outer.z <= inner.z && inner.z2() <= outer.z2();
}

long long horizontal_contact_area(const Box& upper, const Box& lower) {
  if (upper.z != lower.z2()) return 0;
  long long dx = std::min(upper.x2(), lower.x2()) - std::max(upper.x, lower.x);
  long long dy = std::min(upper.y2(), lower.y2()) - std::max(upper.y, lower.y);
  if (dx <= 0 || dy <= 0) return 0;
  return dx * dy;
}

}  // namespace binpack
