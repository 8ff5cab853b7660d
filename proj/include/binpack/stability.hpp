#pragma once

#include <vector>

#include "binpack/geometry.hpp"

namespace binpack {

// Exact non-negative rational, den > 0. Used for support ratios so that
// threshold comparisons like 66/100 never touch floating point.
struct Ratio {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator>=(const Ratio& o) const { return num * o.den >= o.num * den; }
  bool operator==(const Ratio& o) const { return num * o.den == o.num * den; }
};

// An item resting in the bin.
struct Placement {
  Box box;
  double weight = 0.0;
  int item_id = -1;  // item-type index (or expanded-item index for greedy)
};

struct StabilityParams {
  Ratio r_s{66, 100};      // minimum support ratio
  double r_w = 3.0;        // single-supporter weight ratio
  bool support_enabled = false;
  bool weight_enabled = false;
};

// Fraction of the candidate's bottom face in contact with item tops below.
// Floor placements (z == 0) count as fully supported.
Ratio support_ratio(const Box& candidate, const std::vector<Placement>& placements);

// Single-supporter weight rule: with exactly one supporter i the candidate's
// weight must satisfy G_j <= r_w * G_i. Zero or multiple supporters pass.
bool check_weight(const Box& candidate, double weight,
                  const std::vector<Placement>& placements, double r_w);

bool is_stable_placement(const Box& candidate, double weight,
                         const std::vector<Placement>& placements,
                         const StabilityParams& params);

// A space can host an item iff its floor is the bin floor or some placed
// item's top face at exactly space.z intersects the space footprint.
bool is_stable_space(const Box& space, const std::vector<Placement>& placements);

}  // namespace binpack
