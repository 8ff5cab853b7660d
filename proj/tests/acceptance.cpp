// Acceptance suite: one test case per criterion, each printing a single
// [criterion N] PASS/FAIL line in addition to the doctest assertions.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "binpack/io.hpp"
#include "binpack/rl_math.hpp"
#include "binpack/rng.hpp"
#include "voxel_oracle.hpp"

using namespace binpack;

namespace {

void report(int criterion, bool ok, const std::string& detail = "") {
  std::printf("[criterion %d] %s%s%s\n", criterion, ok ? "PASS" : "FAIL",
              detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
}

double mean_eta(const std::vector<SolutionRecord>& records) {
  double sum = 0.0;
  for (const auto& r : records) sum += r.eta;
  return sum / static_cast<double>(records.size());
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("criterion 1: EMS matches the voxel maximal-empty-box oracle") {
  std::mt19937_64 rng(1001);
  bool ok = true;
  for (int trial = 0; trial < 500 && ok; ++trial) {
    const int L = uniform_int(rng, 4, 12);
    const int W = uniform_int(rng, 4, 12);
    const int H = uniform_int(rng, 4, 12);
    SpaceStack stack = initial_spaces(Box{0, 0, 0, L, W, H});
    oracle::VoxelGrid grid(L, W, H);
    std::vector<Box> placed;
    const int placements = uniform_int(rng, 1, 6);
    for (int p = 0; p < placements; ++p) {
      for (int attempt = 0; attempt < 50; ++attempt) {
        const int l = uniform_int(rng, 1, L);
        const int w = uniform_int(rng, 1, W);
        const int h = uniform_int(rng, 1, H);
        const Box b{uniform_int(rng, 0, L - l), uniform_int(rng, 0, W - w),
                    uniform_int(rng, 0, H - h), l, w, h};
        if (std::none_of(placed.begin(), placed.end(),
                         [&b](const Box& q) { return overlaps(b, q); })) {
          placed.push_back(b);
          grid.place(b);
          update_after_placement(stack, b);
          break;
        }
      }
    }
    const std::set<Box> ems(stack.spaces.begin(), stack.spaces.end());
    const auto oracle_boxes = grid.maximal_empty_boxes();
    const std::set<Box> expected(oracle_boxes.begin(), oracle_boxes.end());
    if (ems != expected) ok = false;
  }
  report(1, ok, "500 random sequences, bins <= 12^3, exact set equality");
  CHECK(ok);
}

TEST_CASE("criterion 2: stepwise rewards telescope") {
  bool ok = true;
  for (int episode = 0; episode < 1000 && ok; ++episode) {
    const InstanceSpec spec =
        generate_instance(episode % 2 == 0 ? "S1_10" : "M_10",
                          static_cast<std::uint64_t>(episode));
    PackingState state = make_state(spec);
    std::mt19937_64 rng(mix_seed(2002, episode));
    double lr_sum = 0.0, hd_sum = 0.0;
    while (!state.done()) {
      const int idx =
          uniform_int(rng, 0, static_cast<int>(state.current_actions.size()) - 1);
      const StepReward r = step(state, state.current_actions[idx]).first;
      lr_sum += r.r_lr;
      hd_sum += r.r_hd;
    }
    if (state.placements.empty()) continue;
    if (std::abs(lr_sum - utilization(state)) >= 1e-12) ok = false;
    const double expected_hd =
        -static_cast<double>(state.max_height - state.second_height) /
        static_cast<double>(spec.H);
    if (std::abs(hd_sum - expected_hd) >= 1e-12) ok = false;
  }
  report(2, ok, "1000 episodes, |sum r_lr - eta| < 1e-12 and r_hd telescopes");
  CHECK(ok);
}

TEST_CASE("criterion 3: greedy reproduces the benchmark band") {
  const std::vector<std::pair<std::string, double>> targets{
      {"B1_30", 0.6962}, {"B2_30", 0.6881}, {"B3_30", 0.6989}, {"BM_M", 0.6738}};
  SolverConfig config;
  config.name = "greedy";
  bool ok = true;
  std::ostringstream detail;
  for (const auto& [scheme, target] : targets) {
    const auto set = generate_set(scheme, 100, 3003);
    const auto records = solve_batch(set, config, std::thread::hardware_concurrency());
    const double mean = mean_eta(records);
    detail << scheme << " " << mean << " (target " << target << ") ";
    if (std::abs(mean - target) > 0.06) ok = false;
  }
  report(3, ok, detail.str());
  CHECK(ok);
}

TEST_CASE("criterion 4: MCTS dominates greedy on 30-item instances") {
  const auto set = generate_set("B1_30", 20, 4004);
  SolverConfig greedy_cfg;
  greedy_cfg.name = "greedy";
  const auto greedy_recs = solve_batch(set, greedy_cfg, std::thread::hardware_concurrency());
  SolverConfig mcts_cfg;
  mcts_cfg.name = "mcts";
  mcts_cfg.rollouts = 2000;
  mcts_cfg.seed = 44;
  const auto mcts_recs = solve_batch(set, mcts_cfg, std::thread::hardware_concurrency());
  int wins = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (mcts_recs[i].eta > greedy_recs[i].eta) ++wins;
  }
  const double gap = mean_eta(mcts_recs) - mean_eta(greedy_recs);
  const bool ok = gap >= 0.05 && wins >= 16;
  std::ostringstream detail;
  detail << "mean gap " << gap << " (need >= 0.05), wins " << wins << "/20 (need >= 16)";
  report(4, ok, detail.str());
  CHECK(ok);
}

TEST_CASE("criterion 5: stability enforcement and constraint monotonicity") {
  StabilityParams both;
  both.support_enabled = true;
  both.weight_enabled = true;
  both.r_s = Ratio{66, 100};
  both.r_w = 3.0;

  // 200 constrained solve runs with a zero-violation post-hoc audit.
  bool audit_ok = true;
  const auto audit_set = generate_set("S1_10", 200, 5005);
  SolverConfig cfg;
  cfg.name = "sample";
  cfg.k = 8;
  cfg.seed = 55;
  cfg.constraints = both;
  const auto records = solve_batch(audit_set, cfg, std::thread::hardware_concurrency());
  for (const SolutionRecord& rec : records) {
    for (std::size_t i = 0; i < rec.placements.size(); ++i) {
      std::vector<Placement> before(rec.placements.begin(), rec.placements.begin() + i);
      if (!(support_ratio(rec.placements[i].box, before) >= Ratio{66, 100})) {
        audit_ok = false;
      }
      if (!check_weight(rec.placements[i].box, rec.placements[i].weight, before, 3.0)) {
        audit_ok = false;
      }
    }
    if (!verify_solution(rec).empty()) audit_ok = false;
  }

  // Monotonicity of the fixed-seed best-of-k sampler across constraint sets.
  const auto mono_set = generate_set("S1_10", 50, 5050);
  auto eta_with = [&](const StabilityParams& params) {
    SolverConfig c;
    c.name = "sample";
    c.k = 64;
    c.seed = 56;
    c.constraints = params;
    std::vector<double> etas;
    for (const auto& rec : solve_batch(mono_set, c, std::thread::hardware_concurrency())) {
      etas.push_back(rec.eta);
    }
    return etas;
  };
  StabilityParams none, support_only = both, weight_only = both;
  support_only.weight_enabled = false;
  weight_only.support_enabled = false;
  const auto eta_none = eta_with(none);
  const auto eta_s = eta_with(support_only);
  const auto eta_w = eta_with(weight_only);
  const auto eta_both = eta_with(both);
  int monotone = 0;
  for (std::size_t i = 0; i < mono_set.size(); ++i) {
    if (eta_both[i] <= std::min(eta_s[i], eta_w[i]) + 1e-12 &&
        std::max(eta_s[i], eta_w[i]) <= eta_none[i] + 1e-12) {
      ++monotone;
    }
  }
  const bool mono_ok = monotone >= 45;  // >= 90% of 50
  std::ostringstream detail;
  detail << "violations " << (audit_ok ? 0 : 1) << ", monotone " << monotone << "/50";
  report(5, audit_ok && mono_ok, detail.str());
  CHECK(audit_ok);
  CHECK(mono_ok);
}

TEST_CASE("criterion 6: training-math numeric suite") {
  bool ok = true;

  // entropy(uniform k) = ln k
  for (int k = 2; k <= 64; ++k) {
    const std::vector<double> u(k, 1.0 / k);
    if (std::abs(entropy(u) - std::log(static_cast<double>(k))) >= 1e-12) ok = false;
  }

  // covariance vs an independent direct-summation oracle, 10k draws
  std::mt19937_64 rng(6006);
  for (int draw = 0; draw < 10000 && ok; ++draw) {
    const int k = uniform_int(rng, 2, 8);
    std::vector<double> p(k), a(k);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
      p[i] = uniform_real(rng, 1e-6, 1.0);
      sum += p[i];
      a[i] = uniform_real(rng, -3.0, 3.0);
    }
    for (double& v : p) v /= sum;
    // oracle: E[XY] - E[X]E[Y] accumulated in a different order
    double exy = 0.0, ex = 0.0, ey = 0.0;
    for (int i = k - 1; i >= 0; --i) {
      exy += p[i] * std::log(p[i]) * a[i];
      ex += p[i] * std::log(p[i]);
      ey += p[i] * a[i];
    }
    if (std::abs(logp_advantage_covariance(p, a) - (exy - ex * ey)) >= 1e-12) ok = false;
  }

  // Eq. 5 corroboration: softmax natural-gradient step of size eps, measured
  // entropy change vs -eps * Cov, Pearson r >= 0.9 over 1000 draws
  const double eps = 1e-3;
  std::vector<double> measured, predicted;
  for (int draw = 0; draw < 1000; ++draw) {
    const int k = uniform_int(rng, 2, 8);
    std::vector<double> theta(k), adv(k);
    for (int i = 0; i < k; ++i) {
      theta[i] = uniform_real(rng, -2.0, 2.0);
      adv[i] = uniform_real(rng, -1.0, 1.0);
    }
    auto softmax = [](const std::vector<double>& t) {
      std::vector<double> p(t.size());
      const double m = *std::max_element(t.begin(), t.end());
      double z = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) z += (p[i] = std::exp(t[i] - m));
      for (double& v : p) v /= z;
      return p;
    };
    const auto p0 = softmax(theta);
    std::vector<double> theta1 = theta;
    for (int i = 0; i < k; ++i) theta1[i] += eps * adv[i];
    measured.push_back(entropy(softmax(theta1)) - entropy(p0));
    predicted.push_back(entropy_delta_estimate(p0, adv, eps));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    mx += measured[i];
    my += predicted[i];
  }
  mx /= measured.size();
  my /= predicted.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    sxy += (measured[i] - mx) * (predicted[i] - my);
    sxx += (measured[i] - mx) * (measured[i] - mx);
    syy += (predicted[i] - my) * (predicted[i] - my);
  }
  const double pearson = sxy / std::sqrt(sxx * syy);
  if (pearson < 0.9) ok = false;

  // Eq. 6 phi = 0 identity
  std::vector<DecisionRecord> recs;
  for (int i = 0; i < 20; ++i) {
    DecisionRecord r;
    const int k = uniform_int(rng, 2, 6);
    std::vector<double> po(k), pn(k), a(k);
    double so = 0, sn = 0;
    for (int j = 0; j < k; ++j) {
      po[j] = uniform_real(rng, 0.01, 1.0);
      pn[j] = uniform_real(rng, 0.01, 1.0);
      a[j] = uniform_real(rng, -1.0, 1.0);
      so += po[j];
      sn += pn[j];
    }
    for (int j = 0; j < k; ++j) {
      po[j] /= so;
      pn[j] /= sn;
    }
    r.probs_old = po;
    r.probs_new = pn;
    r.advantages = a;
    r.action = uniform_int(rng, 0, k - 1);
    recs.push_back(r);
  }
  const auto ratios = clipped_ratios(recs, 0.0);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const double plain = recs[i].probs_new[recs[i].action] / recs[i].probs_old[recs[i].action];
    if (ratios[i] != plain) ok = false;
  }

  // Eq. 7: penalty zero iff the chosen action's probability is unchanged
  for (DecisionRecord r : recs) {
    r.is_first_step = true;
    const double adjusted = drift_adjusted_objective(1.0, r, 1.0);
    const bool unchanged = r.probs_new[r.action] == r.probs_old[r.action];
    if (unchanged != (adjusted == 1.0)) ok = false;
    if (adjusted > 1.0) ok = false;
  }

  std::ostringstream detail;
  detail << "pearson r = " << pearson;
  report(6, ok, detail.str());
  CHECK(ok);
}

TEST_CASE("criterion 7: byte-identical reproduction across runs and jobs") {
  bool ok = true;
  for (const std::string solver : {"greedy", "sample", "mcts"}) {
    const auto set = generate_set("S1_10", 6, 7007);
    SolverConfig cfg;
    cfg.name = solver;
    cfg.k = 16;
    cfg.rollouts = 50;
    cfg.seed = 77;
    const std::string p1 = temp_path("bp_acc7_" + solver + "_a.jsonl");
    const std::string p2 = temp_path("bp_acc7_" + solver + "_b.jsonl");
    const std::string p3 = temp_path("bp_acc7_" + solver + "_c.jsonl");
    write_solutions(p1, solve_batch(set, cfg, 1));
    write_solutions(p2, solve_batch(set, cfg, 1));
    write_solutions(p3, solve_batch(set, cfg, 4));
    if (slurp(p1) != slurp(p2) || slurp(p1) != slurp(p3)) ok = false;
  }
  // regenerating the instance set reproduces identical bytes too
  const std::string g1 = temp_path("bp_acc7_gen_a.jsonl");
  const std::string g2 = temp_path("bp_acc7_gen_b.jsonl");
  write_instances(g1, generate_set("BM_M", 10, 7070));
  write_instances(g2, generate_set("BM_M", 10, 7070));
  if (slurp(g1) != slurp(g2)) ok = false;
  report(7, ok, "greedy/sample/mcts files identical across runs and --jobs 1/4");
  CHECK(ok);
}

TEST_CASE("criterion 8: best-of-128 throughput at the 10k-instance scale") {
  const auto start = std::chrono::steady_clock::now();
  const auto set = generate_set("S1_10", 10000, 8008);
  SolverConfig cfg;
  cfg.name = "sample";
  cfg.k = 128;
  cfg.seed = 88;
  const auto records = solve_batch(set, cfg, std::thread::hardware_concurrency());
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double mean = mean_eta(records);
  const bool ok = elapsed < 1800.0 && records.size() == 10000 && mean > 0.0;
  std::ostringstream detail;
  detail << "10000 instances in " << elapsed << " s, mean eta " << mean;
  report(8, ok, detail.str());
  CHECK(ok);
}
