#include "binpack/ems.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace binpack {

bool screening_less(const Box& a, const Box& b) {
  if (a.z != b.z) return a.z < b.z;
  if (a.y != b.y) return a.y < b.y;
  if (a.x != b.x) return a.x < b.x;
  if (a.volume() != b.volume()) return a.volume() > b.volume();
  return std::tie(a.l, a.w, a.h) < std::tie(b.l, b.w, b.h);
}

std::vector<Box> screening_order(std::vector<Box> spaces) {
  std::sort(spaces.begin(), spaces.end(), screening_less);
  return spaces;
}

SpaceStack initial_spaces(const Box& bin) {
  if (bin.l <= 0 || bin.w <= 0 || bin.h <= 0) {
    throw std::invalid_argument("initial_spaces: bin dimensions must be positive");
  }
  return SpaceStack{{Box{bin.x, bin.y, bin.z, bin.l, bin.w, bin.h}}};
}

namespace {

// Residuals of `s` minus `placed`: the six maximal sub-boxes of s lying
// strictly left/right, front/back, below/above the placed box.
void split_space(const Box& s, const Box& placed, std::vector<Box>& out) {
  if (placed.x > s.x) out.push_back(Box{s.x, s.y, s.z, placed.x - s.x, s.w, s.h});
  if (placed.x2() < s.x2()) out.push_back(Box{placed.x2(), s.y, s.z, s.x2() - placed.x2(), s.w, s.h});
  if (placed.y > s.y) out.push_back(Box{s.x, s.y, s.z, s.l, placed.y - s.y, s.h});
  if (placed.y2() < s.y2()) out.push_back(Box{s.x, placed.y2(), s.z, s.l, s.y2() - placed.y2(), s.h});
  if (placed.z > s.z) out.push_back(Box{s.x, s.y, s.z, s.l, s.w, placed.z - s.z});
  if (placed.z2() < s.z2()) out.push_back(Box{s.x, s.y, placed.z2(), s.l, s.w, s.z2() - placed.z2()});
}

}  // namespace

void update_after_placement(SpaceStack& stack, const Box& placed) {
  std::vector<Box> next;
  next.reserve(stack.spaces.size() + 6);
  for (const Box& s : stack.spaces) {
    if (overlaps(s, placed)) {
      split_space(s, placed, next);
    } else {
      next.push_back(s);
    }
  }
  // Containment pruning over the whole set keeps exactly the maximal boxes.
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  std::vector<Box> maximal;
  for (std::size_t i = 0; i < next.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < next.size() && !dominated; ++j) {
      if (i != j && contains(next[j], next[i])) dominated = true;
    }
    if (!dominated) maximal.push_back(next[i]);
  }
  stack.spaces = screening_order(std::move(maximal));
}

}  // namespace binpack
