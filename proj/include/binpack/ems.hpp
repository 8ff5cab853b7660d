#pragma once

#include <vector>

#include "binpack/geometry.hpp"

namespace binpack {

// Ordered set of empty maximal spaces. The front element is the stack top,
// i.e. the next candidate space under the XYZ screening order.
struct SpaceStack {
  std::vector<Box> spaces;

  bool empty() const { return spaces.empty(); }
  const Box& top() const { return spaces.front(); }
  void pop() { spaces.erase(spaces.begin()); }
};

// Screening comparator: lowest z first, then lowest y, then lowest x;
// ties broken by larger volume, then by full lexicographic box order.
bool screening_less(const Box& a, const Box& b);

// Sorts spaces into screening order (first element = stack top).
std::vector<Box> screening_order(std::vector<Box> spaces);

// Single space covering the whole bin interior.
// Throws std::invalid_argument when the bin has a non-positive dimension.
SpaceStack initial_spaces(const Box& bin);

// Splits every space overlapping `placed` into up to 6 residual boxes,
// drops degenerate residuals, prunes contained (non-maximal) spaces and
// re-sorts into screening order. Maintains the exact maximal-empty-box set.
void update_after_placement(SpaceStack& stack, const Box& placed);

}  // namespace binpack
