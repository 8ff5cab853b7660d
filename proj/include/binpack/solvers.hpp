#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "binpack/instance.hpp"

namespace binpack {

struct SolveResult {
  double eta = 0.0;
  std::vector<Placement> placements;     // in placement order
  std::vector<PlacementAction> actions;  // env action trace (empty for greedy)
  std::vector<StepReward> rewards;
  std::vector<Ratio> support_ratios;     // one per placement, pre-placement
  std::string solver;
  double wall_time_ms = 0.0;
  long long samples = 0;  // episodes or rollouts consumed
};

// Probability distribution over the current valid actions.
using Policy = std::function<std::vector<double>(
    const PackingState&, const std::vector<PlacementAction>&)>;

std::vector<double> uniform_policy(const PackingState&,
                                   const std::vector<PlacementAction>& actions);

// Replays an action sequence through the environment; used for result
// verification and for materializing search episodes.
SolveResult replay_actions(const InstanceSpec& instance,
                           const std::vector<PlacementAction>& actions,
                           const RewardWeights& weights = {});

// Corner-point greedy: items sorted by volume (tie: longest side), corners
// scanned in ascending (z, y, x), first fitting rotation accepted. Runs
// without stability constraints.
SolveResult greedy_solve(const InstanceSpec& instance);

// UCT over the packing MDP; node value = final utilization of rollouts.
// Returns the best complete episode found within the budget.
SolveResult mcts_solve(const InstanceSpec& instance, int rollouts,
                       double exploration_c, std::uint64_t seed);

// Best of k independent seeded policy rollouts. Episode j uses the seed
// stream mix(seed, j), so prefixes agree across different k.
SolveResult sample_best_of_k(const InstanceSpec& instance, const Policy& policy,
                             int k, std::uint64_t seed,
                             const RewardWeights& weights = {});

}  // namespace binpack
