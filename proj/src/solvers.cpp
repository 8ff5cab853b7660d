#include "binpack/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "binpack/rng.hpp"

namespace binpack {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs one episode, choosing an action index at every decision point.
SolveResult run_episode(PackingState state,
                        const std::function<int(const PackingState&)>& choose) {
  SolveResult r;
  while (!state.done()) {
    const int idx = choose(state);
    const PlacementAction action = state.current_actions.at(idx);
    const Box space = *state.current_space;
    Box placed{space.x, space.y, space.z, action.dims[0], action.dims[1], action.dims[2]};
    r.support_ratios.push_back(support_ratio(placed, state.placements));
    auto [reward, done] = step(state, action);
    r.actions.push_back(action);
    r.rewards.push_back(reward);
    r.placements.push_back(state.placements.back());
  }
  r.eta = state.placements.empty() ? 0.0 : utilization(state);
  return r;
}

int sample_index(std::mt19937_64& rng, const std::vector<double>& probs) {
  const double u = uniform_real(rng, 0.0, 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

std::vector<double> uniform_policy(const PackingState&,
                                   const std::vector<PlacementAction>& actions) {
  return std::vector<double>(actions.size(), 1.0 / static_cast<double>(actions.size()));
}

SolveResult replay_actions(const InstanceSpec& instance,
                           const std::vector<PlacementAction>& actions,
                           const RewardWeights& weights) {
  std::size_t next = 0;
  SolveResult r = run_episode(make_state(instance, weights), [&](const PackingState& s) {
    if (next >= actions.size()) {
      throw std::logic_error("replay_actions: episode did not terminate on the trace");
    }
    const auto it = std::find(s.current_actions.begin(), s.current_actions.end(),
                              actions[next]);
    if (it == s.current_actions.end()) {
      throw std::logic_error("replay_actions: recorded action is not valid");
    }
    ++next;
    return static_cast<int>(it - s.current_actions.begin());
  });
  if (next != actions.size()) {
    throw std::logic_error("replay_actions: trace longer than episode");
  }
  return r;
}

SolveResult greedy_solve(const InstanceSpec& instance) {
  const auto start = Clock::now();

  struct Item {
    Dims dims;
    int id;
  };
  std::vector<Item> items;
  for (int t = 0; t < static_cast<int>(instance.item_types.size()); ++t) {
    const ItemType& type = instance.item_types[t];
    for (int q = 0; q < type.remaining; ++q) {
      items.push_back({{type.l, type.w, type.h}, t});
    }
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    const long long va = 1LL * a.dims[0] * a.dims[1] * a.dims[2];
    const long long vb = 1LL * b.dims[0] * b.dims[1] * b.dims[2];
    if (va != vb) return va > vb;
    return *std::max_element(a.dims.begin(), a.dims.end()) >
           *std::max_element(b.dims.begin(), b.dims.end());
  });

  SolveResult r;
  r.solver = "greedy";
  std::vector<Box> placed_boxes;
  std::vector<std::array<int, 3>> corners{{0, 0, 0}};
  long long volume = 0;
  int h_max = 0;

  for (const Item& item : items) {
    std::sort(corners.begin(), corners.end(),
              [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
                return std::tie(a[2], a[1], a[0]) < std::tie(b[2], b[1], b[0]);
              });
    bool placed = false;
    for (std::size_t ci = 0; ci < corners.size() && !placed; ++ci) {
      const auto [cx, cy, cz] = corners[ci];
      for (const Dims& d : orientations(item.dims)) {
        if (cx + d[0] > instance.L || cy + d[1] > instance.W || cz + d[2] > instance.H) {
          continue;
        }
        const Box box{cx, cy, cz, d[0], d[1], d[2]};
        bool overlap = false;
        for (const Box& p : placed_boxes) {
          if (overlaps(box, p)) {
            overlap = true;
            break;
          }
        }
        if (overlap) continue;

        placed_boxes.push_back(box);
        volume += box.volume();
        h_max = std::max(h_max, box.z2());
        r.support_ratios.push_back(support_ratio(box, r.placements));
        r.placements.push_back(
            Placement{box, instance.item_types[item.id].weight, item.id});
        corners.erase(corners.begin() + static_cast<long>(ci));
        corners.push_back({box.x2(), box.y, box.z});
        corners.push_back({box.x, box.y2(), box.z});
        corners.push_back({box.x, box.y, box.z2()});
        placed = true;
        break;
      }
    }
  }

  r.eta = h_max == 0 ? 0.0
                     : static_cast<double>(volume) /
                           (static_cast<double>(instance.L) * instance.W * h_max);
  r.samples = 1;
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

namespace {

struct UctNode {
  std::vector<PlacementAction> actions;
  std::vector<std::unique_ptr<UctNode>> children;  // parallel to actions
  std::vector<int> visits;
  std::vector<double> value_sum;
  int total_visits = 0;
  std::vector<int> untried;

  explicit UctNode(const PackingState& s) : actions(s.current_actions) {
    children.resize(actions.size());
    visits.assign(actions.size(), 0);
    value_sum.assign(actions.size(), 0.0);
    untried.resize(actions.size());
    for (std::size_t i = 0; i < actions.size(); ++i) untried[i] = static_cast<int>(i);
  }

  bool terminal() const { return actions.empty(); }
};

}  // namespace

SolveResult mcts_solve(const InstanceSpec& instance, int rollouts,
                       double exploration_c, std::uint64_t seed) {
  if (rollouts < 1) throw std::invalid_argument("mcts_solve: rollouts must be >= 1");
  const auto start = Clock::now();
  std::mt19937_64 rng(mix_seed(seed));

  const PackingState root_state = make_state(instance);
  UctNode root(root_state);

  double best_eta = -1.0;
  std::vector<PlacementAction> best_trace;

  for (int sim = 0; sim < rollouts; ++sim) {
    PackingState state = root_state;
    UctNode* node = &root;
    std::vector<std::pair<UctNode*, int>> path;
    std::vector<PlacementAction> trace;

    // Selection
    while (!node->terminal() && node->untried.empty()) {
      int best = 0;
      double best_score = -1.0;
      for (std::size_t i = 0; i < node->actions.size(); ++i) {
        const double mean = node->value_sum[i] / node->visits[i];
        const double score =
            mean + exploration_c *
                       std::sqrt(std::log(static_cast<double>(node->total_visits)) /
                                 node->visits[i]);
        if (score > best_score) {
          best_score = score;
          best = static_cast<int>(i);
        }
      }
      path.emplace_back(node, best);
      trace.push_back(node->actions[best]);
      step(state, node->actions[best]);
      node = node->children[best].get();
    }

    // Expansion: one new node per simulation
    if (!node->terminal()) {
      const int pick = uniform_int(rng, 0, static_cast<int>(node->untried.size()) - 1);
      const int idx = node->untried[pick];
      node->untried.erase(node->untried.begin() + pick);
      path.emplace_back(node, idx);
      trace.push_back(node->actions[idx]);
      step(state, node->actions[idx]);
      node->children[idx] = std::make_unique<UctNode>(state);
    }

    // Rollout: uniform random to terminal
    while (!state.done()) {
      const int idx =
          uniform_int(rng, 0, static_cast<int>(state.current_actions.size()) - 1);
      trace.push_back(state.current_actions[idx]);
      step(state, state.current_actions[idx]);
    }
    const double eta = state.placements.empty() ? 0.0 : utilization(state);
    if (eta > best_eta) {
      best_eta = eta;
      best_trace = trace;
    }

    // Backup
    for (auto [n, idx] : path) {
      n->total_visits += 1;
      n->visits[idx] += 1;
      n->value_sum[idx] += eta;
    }
  }

  SolveResult r = replay_actions(instance, best_trace);
  r.solver = "mcts";
  r.samples = rollouts;
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

SolveResult sample_best_of_k(const InstanceSpec& instance, const Policy& policy,
                             int k, std::uint64_t seed, const RewardWeights& weights) {
  if (k < 1) throw std::invalid_argument("sample_best_of_k: k must be >= 1");
  const auto start = Clock::now();
  const PackingState initial = make_state(instance, weights);

  SolveResult best;
  best.eta = -1.0;
  for (int j = 0; j < k; ++j) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(j)));
    SolveResult episode = run_episode(initial, [&](const PackingState& s) {
      return sample_index(rng, policy(s, s.current_actions));
    });
    if (episode.eta > best.eta) {
      best = std::move(episode);
    }
  }
  best.solver = "sample";
  best.samples = k;
  best.wall_time_ms = elapsed_ms(start);
  return best;
}

}  // namespace binpack
