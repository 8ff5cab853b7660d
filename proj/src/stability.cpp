#include "binpack/stability.hpp"

#include <algorithm>

namespace binpack {

Ratio support_ratio(const Box& candidate, const std::vector<Placement>& placements) {
  if (candidate.z == 0) return Ratio{1, 1};
  long long f = 1LL * candidate.l * candidate.w;
  long long contact = 0;
  for (const Placement& p : placements) {
    contact += horizontal_contact_area(candidate, p.box);
  }
  return Ratio{contact, f};
}

bool check_weight(const Box& candidate, double weight,
                  const std::vector<Placement>& placements, double r_w) {
  const Placement* supporter = nullptr;
  int count = 0;
  for (const Placement& p : placements) {
    if (horizontal_contact_area(candidate, p.box) > 0) {
      supporter = &p;
      if (++count > 1) return true;  // multi-supporter case is unconstrained
    }
  }
  if (count == 0) return true;
  return weight <= r_w * supporter->weight;
}

bool is_stable_placement(const Box& candidate, double weight,
                         const std::vector<Placement>& placements,
                         const StabilityParams& params) {
  if (params.support_enabled && !(support_ratio(candidate, placements) >= params.r_s)) {
    return false;
  }
  if (params.weight_enabled && !check_weight(candidate, weight, placements, params.r_w)) {
    return false;
  }
  return true;
}

bool is_stable_space(const Box& space, const std::vector<Placement>& placements) {
  if (space.z == 0) return true;
  for (const Placement& p : placements) {
    if (p.box.z2() != space.z) continue;
    long long dx = std::min(space.x2(), p.box.x2()) - std::max(space.x, p.box.x);
    long long dy = std::min(space.y2(), p.box.y2()) - std::max(space.y, p.box.y);
    if (dx > 0 && dy > 0) return true;
  }
  return false;
}

}  // namespace binpack
