#include "binpack/env.hpp"

#include <algorithm>
#include <stdexcept>

namespace binpack {

namespace {

double loading_rate(const PackingState& s) {
  if (s.placements.empty()) return 0.0;
  return static_cast<double>(s.packed_volume) /
         (static_cast<double>(s.bin.l) * s.bin.w * s.max_height);
}

void recompute_heights(PackingState& s) {
  // Multiset second maximum: two items sharing the max height give H_t' = H_t,
  // so a flat layer scores zero height difference.
  int top1 = 0, top2 = 0;
  for (const Placement& p : s.placements) {
    int t = p.box.z2();
    if (t >= top1) {
      top2 = top1;
      top1 = t;
    } else if (t > top2) {
      top2 = t;
    }
  }
  s.max_height = top1;
  s.second_height = top2;
}

}  // namespace

PackingState make_state(const Box& bin, std::vector<ItemType> item_types,
                        const StabilityParams& params, const RewardWeights& weights) {
  PackingState state;
  state.bin = Box{0, 0, 0, bin.l, bin.w, bin.h};
  state.item_types = std::move(item_types);
  state.stack = initial_spaces(state.bin);
  state.params = params;
  state.weights = weights;
  refresh_actions(state);
  return state;
}

void refresh_actions(PackingState& state) {
  state.current_space.reset();
  state.current_actions.clear();
  while (!state.stack.empty()) {
    const Box space = state.stack.top();
    if (!is_stable_space(space, state.placements)) {
      state.stack.pop();
      continue;
    }
    std::vector<PlacementAction> actions;
    for (int t = 0; t < static_cast<int>(state.item_types.size()); ++t) {
      const ItemType& item = state.item_types[t];
      if (item.remaining <= 0) continue;
      for (const Dims& d : orientations({item.l, item.w, item.h})) {
        if (d[0] > space.l || d[1] > space.w || d[2] > space.h) continue;
        Box candidate{space.x, space.y, space.z, d[0], d[1], d[2]};
        if (is_stable_placement(candidate, item.weight, state.placements, state.params)) {
          actions.push_back(PlacementAction{t, d});
        }
      }
    }
    if (actions.empty()) {
      state.stack.pop();
      continue;
    }
    state.current_space = space;
    state.current_actions = std::move(actions);
    return;
  }
}

std::pair<StepReward, bool> step(PackingState& state, const PlacementAction& action) {
  if (!state.current_space ||
      std::find(state.current_actions.begin(), state.current_actions.end(), action) ==
          state.current_actions.end()) {
    throw std::logic_error("step: action is not in the current valid set");
  }
  const double lr_prev = loading_rate(state);
  const int hd_prev = state.max_height - state.second_height;

  const Box& space = *state.current_space;
  Box placed{space.x, space.y, space.z, action.dims[0], action.dims[1], action.dims[2]};
  ItemType& item = state.item_types[action.type_index];
  state.placements.push_back(Placement{placed, item.weight, action.type_index});
  --item.remaining;
  state.packed_volume += placed.volume();
  recompute_heights(state);
  update_after_placement(state.stack, placed);
  ++state.step_count;
  refresh_actions(state);

  StepReward r;
  r.r_lr = loading_rate(state) - lr_prev;
  const int hd_next = state.max_height - state.second_height;
  r.r_hd = -static_cast<double>(hd_next - hd_prev) / static_cast<double>(state.bin.h);
  r.total = state.weights.alpha1 * r.r_lr + state.weights.alpha2 * r.r_hd;
  return {r, state.done()};
}

double utilization(const PackingState& state) {
  if (state.placements.empty()) {
    throw std::domain_error("utilization: undefined on an empty state");
  }
  return static_cast<double>(state.packed_volume) /
         (static_cast<double>(state.bin.l) * state.bin.w * state.max_height);
}

std::vector<double> encode_bin_state(const PackingState& state) {
  std::vector<double> m;
  m.reserve((state.placements.size() + 2) * 7);
  auto push_row = [&m](const Box& b, double weight) {
    m.insert(m.end(), {static_cast<double>(b.x), static_cast<double>(b.y),
                       static_cast<double>(b.z), static_cast<double>(b.l),
                       static_cast<double>(b.w), static_cast<double>(b.h), weight});
  };
  push_row(state.bin, 0.0);
  push_row(state.current_space.value_or(Box{}), 0.0);
  for (const Placement& p : state.placements) push_row(p.box, p.weight);
  return m;
}

std::vector<double> encode_valid_items(const PackingState& state) {
  std::vector<char> valid(state.item_types.size(), 0);
  for (const PlacementAction& a : state.current_actions) valid[a.type_index] = 1;
  std::vector<double> m;
  for (std::size_t t = 0; t < state.item_types.size(); ++t) {
    if (!valid[t]) continue;
    const ItemType& item = state.item_types[t];
    m.insert(m.end(), {static_cast<double>(item.l), static_cast<double>(item.w),
                       static_cast<double>(item.h), static_cast<double>(item.remaining),
                       item.weight});
  }
  return m;
}

}  // namespace binpack
