#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "binpack/solvers.hpp"

namespace binpack {

struct SolverConfig {
  std::string name = "greedy";  // greedy | mcts | sample
  int k = 128;                  // sample episodes
  int rollouts = 2000;          // mcts budget
  double exploration_c = 1.4142135623730951;
  std::uint64_t seed = 0;
  RewardWeights weights;
  StabilityParams constraints;
};

// A solved instance with everything needed to re-verify it offline.
// wall_time_ms is volatile and excluded from the canonical file bytes.
struct SolutionRecord {
  InstanceSpec instance;
  SolverConfig config;
  double eta = 0.0;
  std::vector<Placement> placements;
  std::vector<PlacementAction> actions;
  std::vector<Ratio> support_ratios;
  std::vector<StepReward> rewards;
  double wall_time_ms = 0.0;
};

struct BatchSummary {
  int count = 0;
  double mean_eta = 0.0;
  double var_eta = 0.0;
  double mean_support = 0.0;
  int violations = 0;
  double wall_time_ms = 0.0;
};

nlohmann::json to_json(const InstanceSpec& spec);
InstanceSpec instance_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SolutionRecord& rec);
SolutionRecord solution_from_json(const nlohmann::json& j);

// JSON-lines files with a versioned header line; readers reject unknown
// major versions. Throws std::runtime_error on IO or format problems.
void write_instances(const std::string& path, const std::vector<InstanceSpec>& specs);
std::vector<InstanceSpec> read_instances(const std::string& path);
void write_solutions(const std::string& path, const std::vector<SolutionRecord>& recs);

// Loading re-verifies every record; verification failures throw
// std::runtime_error listing the offending record and reason.
std::vector<SolutionRecord> read_solutions(const std::string& path, bool verify = true);

// Full independent re-check of a record: geometry, stability audit,
// support ratios, rewards and eta recomputed from the placement sequence.
std::vector<std::string> verify_solution(const SolutionRecord& rec);

// Solves every instance with the configured solver; deterministic in
// (instances, config) regardless of the jobs count.
std::vector<SolutionRecord> solve_batch(const std::vector<InstanceSpec>& instances,
                                        const SolverConfig& config, int jobs);
BatchSummary summarize(const std::vector<SolutionRecord>& records);

SolveResult run_solver(const InstanceSpec& instance, const SolverConfig& config,
                       std::uint64_t episode_seed);

// Layout exports for offline rendering: structured JSON or a wavefront-style
// mesh with one cuboid per placement.
nlohmann::json export_layout_json(const SolutionRecord& rec);
std::string export_obj(const SolutionRecord& rec);

}  // namespace binpack
