#pragma once

#include <optional>
#include <vector>

#include "binpack/ems.hpp"
#include "binpack/geometry.hpp"
#include "binpack/stability.hpp"

namespace binpack {

struct ItemType {
  int l = 0, w = 0, h = 0;
  double weight = 0.0;
  int remaining = 0;
};

// Place one unit of item_types[type_index], rotated to `dims`, at the FLB
// corner of the current space.
struct PlacementAction {
  int type_index = -1;
  Dims dims{0, 0, 0};

  bool operator==(const PlacementAction&) const = default;
};

struct RewardWeights {
  double alpha1 = 1.0;
  double alpha2 = 0.1;
};

struct StepReward {
  double r_lr = 0.0;  // loading-rate delta
  double r_hd = 0.0;  // normalized height-difference delta, flatter is positive
  double total = 0.0;
};

// Full MDP state. Mutated in place by step(); copyable for search.
struct PackingState {
  Box bin;
  std::vector<Placement> placements;
  std::vector<ItemType> item_types;
  SpaceStack stack;
  std::optional<Box> current_space;
  std::vector<PlacementAction> current_actions;
  int max_height = 0;      // H_t
  int second_height = 0;   // H_t', multiset second-highest top height
  StabilityParams params;
  RewardWeights weights;
  long long packed_volume = 0;
  int step_count = 0;

  bool done() const { return current_actions.empty(); }
};

// Fresh state with the full bin as the single space; runs the action
// screening so current_space/current_actions are immediately valid.
PackingState make_state(const Box& bin, std::vector<ItemType> item_types,
                        const StabilityParams& params = {},
                        const RewardWeights& weights = {});

// Screening pass: pops unstable spaces and spaces with no feasible stable
// (item, orientation) pair; fills current_space and current_actions.
// Leaves current_space empty when the stack runs out.
void refresh_actions(PackingState& state);

// Applies an action from current_actions; returns the step reward and
// whether the episode terminated. Throws std::logic_error when the action
// is not in the current valid set.
std::pair<StepReward, bool> step(PackingState& state, const PlacementAction& action);

// Eq. 1 utilization against the occupied height. Throws std::domain_error
// on an empty state.
double utilization(const PackingState& state);

// (n+2) x 7 row-major bin-state matrix: bin row, current-space row, then one
// row per placement. Columns: x, y, z, l, w, h, weight.
std::vector<double> encode_bin_state(const PackingState& state);

// k x 5 row-major valid-items matrix over item types with at least one
// current action. Columns: l, w, h, remaining, weight.
std::vector<double> encode_valid_items(const PackingState& state);

}  // namespace binpack
