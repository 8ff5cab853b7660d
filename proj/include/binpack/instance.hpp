#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "binpack/env.hpp"

namespace binpack {

// A serialized problem instance. H is the feasibility height (sum of each
// individual item's largest dimension), set after item generation.
struct InstanceSpec {
  int L = 0, W = 0, H = 0;
  std::vector<ItemType> item_types;
  StabilityParams params;
  std::uint64_t seed = 0;
  std::string scheme;

  Box bin() const { return Box{0, 0, 0, L, W, H}; }
  int item_count() const;
  long long total_item_volume() const;
};

// Scheme tags: "<bin>_<count>" where <bin> is S1 (100x100), S2 (300x200),
// B1/B2/B3 (fixed benchmark bins), or M/BM (bin dims uniform on [100,450],
// sorted L >= W >= H); <count> is an item total or M for the volume-ratio
// stopping rule. Fully deterministic in (scheme, seed).
InstanceSpec generate_instance(const std::string& scheme, std::uint64_t seed);

std::vector<InstanceSpec> generate_set(const std::string& scheme, int count,
                                       std::uint64_t master_seed);

PackingState make_state(const InstanceSpec& instance, const RewardWeights& weights = {});

}  // namespace binpack
