#include "binpack/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "binpack/rng.hpp"

namespace binpack {

int InstanceSpec::item_count() const {
  int n = 0;
  for (const ItemType& t : item_types) n += t.remaining;
  return n;
}

long long InstanceSpec::total_item_volume() const {
  long long v = 0;
  for (const ItemType& t : item_types) v += 1LL * t.l * t.w * t.h * t.remaining;
  return v;
}

namespace {

struct SchemeBin {
  int L, W, H_nominal;
  bool sampled;  // bin dims drawn per instance
};

SchemeBin parse_bin_tag(const std::string& tag, std::mt19937_64& rng) {
  if (tag == "S1") return {100, 100, 100, false};
  if (tag == "S2") return {300, 200, 200, false};
  // fixed bins: footprint = (largest, smallest) dim, nominal height = middle
  if (tag == "B1") return {230, 150, 180, false};  // from (150,230,180)
  if (tag == "B2") return {203, 153, 176, false};  // from (176,153,203)
  if (tag == "B3") return {298, 103, 159, false};  // from (298,103,159)
  if (tag == "M" || tag == "BM") {
    int d[3] = {uniform_int(rng, 100, 450), uniform_int(rng, 100, 450),
                uniform_int(rng, 100, 450)};
    std::sort(d, d + 3, std::greater<int>());
    return {d[0], d[1], d[2], true};
  }
  throw std::invalid_argument("unknown scheme bin tag: " + tag);
}

ItemType sample_item_type(std::mt19937_64& rng, int L) {
  const int lo = std::max(1, static_cast<int>(std::ceil(0.05 * L)));
  const int hi = static_cast<int>(std::floor(0.4 * L));
  ItemType t;
  t.l = uniform_int(rng, lo, hi);
  t.w = uniform_int(rng, lo, hi);
  const int h_lo = std::max(lo, static_cast<int>(std::ceil(0.1 * t.l)));
  t.h = uniform_int(rng, h_lo, hi);
  t.weight = static_cast<double>(1LL * t.l * t.w * t.h);  // density 1
  return t;
}

}  // namespace

InstanceSpec generate_instance(const std::string& scheme, std::uint64_t seed) {
  const auto sep = scheme.find('_');
  if (sep == std::string::npos || sep == 0 || sep + 1 >= scheme.size()) {
    throw std::invalid_argument("malformed scheme tag: " + scheme);
  }
  const std::string bin_tag = scheme.substr(0, sep);
  const std::string count_tag = scheme.substr(sep + 1);

  std::mt19937_64 rng(mix_seed(seed));
  const SchemeBin bin = parse_bin_tag(bin_tag, rng);

  InstanceSpec spec;
  spec.scheme = scheme;
  spec.seed = seed;
  spec.L = bin.L;
  spec.W = bin.W;

  if (count_tag == "M") {
    const double r_volume = uniform_real(rng, 0.8, 1.2);
    const double target = r_volume * bin.L * bin.W * bin.H_nominal;
    double total = 0.0;
    while (total <= target) {
      ItemType t = sample_item_type(rng, bin.L);
      t.remaining = uniform_int(rng, 1, 10);
      total += static_cast<double>(1LL * t.l * t.w * t.h) * t.remaining;
      spec.item_types.push_back(t);
    }
  } else {
    int n;
    try {
      n = std::stoi(count_tag);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed scheme count tag: " + scheme);
    }
    if (n <= 0) throw std::invalid_argument("scheme item count must be positive");
    int placed = 0;
    while (placed < n) {
      ItemType t = sample_item_type(rng, bin.L);
      t.remaining = std::min(uniform_int(rng, 1, 10), n - placed);
      placed += t.remaining;
      spec.item_types.push_back(t);
    }
  }

  // Feasibility height: each individual item can stack with its largest
  // dimension vertical.
  long long H = 0;
  for (const ItemType& t : spec.item_types) {
    H += 1LL * std::max({t.l, t.w, t.h}) * t.remaining;
  }
  spec.H = static_cast<int>(H);
  return spec;
}

std::vector<InstanceSpec> generate_set(const std::string& scheme, int count,
                                       std::uint64_t master_seed) {
  if (count < 1) throw std::invalid_argument("generate_set: count must be >= 1");
  std::vector<InstanceSpec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(generate_instance(scheme, mix_seed(master_seed, static_cast<std::uint64_t>(i))));
  }
  return out;
}

PackingState make_state(const InstanceSpec& instance, const RewardWeights& weights) {
  return make_state(instance.bin(), instance.item_types, instance.params, weights);
}

}  // namespace binpack
