#include "binpack/io.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "binpack/rng.hpp"

namespace binpack {

using nlohmann::json;

namespace {

constexpr const char* kInstanceFormat = "binpack-instances";
constexpr const char* kSolutionFormat = "binpack-solutions";
constexpr int kMajorVersion = 1;
constexpr int kMinorVersion = 0;

json version_header(const char* format) {
  return json{{"format", format},
              {"version", std::to_string(kMajorVersion) + "." + std::to_string(kMinorVersion)}};
}

void check_header(const json& j, const char* format) {
  if (!j.contains("format") || j["format"] != format) {
    throw std::runtime_error(std::string("expected a ") + format + " file");
  }
  const std::string version = j.at("version").get<std::string>();
  const int major = std::stoi(version.substr(0, version.find('.')));
  if (major != kMajorVersion) {
    throw std::runtime_error("unsupported " + std::string(format) + " version " + version);
  }
}

json to_json(const StabilityParams& p) {
  return json{{"rs_num", p.r_s.num},       {"rs_den", p.r_s.den},
              {"rw", p.r_w},               {"support", p.support_enabled},
              {"weight", p.weight_enabled}};
}

StabilityParams params_from_json(const json& j) {
  StabilityParams p;
  p.r_s = Ratio{j.at("rs_num").get<long long>(), j.at("rs_den").get<long long>()};
  p.r_w = j.at("rw").get<double>();
  p.support_enabled = j.at("support").get<bool>();
  p.weight_enabled = j.at("weight").get<bool>();
  return p;
}

}  // namespace

json to_json(const InstanceSpec& spec) {
  json items = json::array();
  for (const ItemType& t : spec.item_types) {
    items.push_back(json{{"l", t.l}, {"w", t.w}, {"h", t.h}, {"weight", t.weight}, {"qty", t.remaining}});
  }
  return json{{"scheme", spec.scheme}, {"seed", spec.seed}, {"L", spec.L},
              {"W", spec.W},           {"H", spec.H},       {"items", items},
              {"constraints", to_json(spec.params)}};
}

InstanceSpec instance_from_json(const json& j) {
  InstanceSpec spec;
  spec.scheme = j.at("scheme").get<std::string>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.L = j.at("L").get<int>();
  spec.W = j.at("W").get<int>();
  spec.H = j.at("H").get<int>();
  for (const json& item : j.at("items")) {
    spec.item_types.push_back(ItemType{item.at("l").get<int>(), item.at("w").get<int>(),
                                       item.at("h").get<int>(), item.at("weight").get<double>(),
                                       item.at("qty").get<int>()});
  }
  spec.params = params_from_json(j.at("constraints"));
  return spec;
}

json to_json(const SolutionRecord& rec) {
  json placements = json::array();
  for (const Placement& p : rec.placements) {
    placements.push_back(json{{"id", p.item_id}, {"x", p.box.x}, {"y", p.box.y}, {"z", p.box.z},
                              {"l", p.box.l}, {"w", p.box.w}, {"h", p.box.h},
                              {"weight", p.weight}});
  }
  json actions = json::array();
  for (const PlacementAction& a : rec.actions) {
    actions.push_back(json{{"type", a.type_index}, {"dims", a.dims}});
  }
  json ratios = json::array();
  for (const Ratio& r : rec.support_ratios) {
    ratios.push_back(json{{"num", r.num}, {"den", r.den}});
  }
  json rewards = json::array();
  for (const StepReward& r : rec.rewards) {
    rewards.push_back(json{{"r_lr", r.r_lr}, {"r_hd", r.r_hd}, {"total", r.total}});
  }
  return json{{"instance", to_json(rec.instance)},
              {"solver",
               json{{"name", rec.config.name},
                    {"k", rec.config.k},
                    {"rollouts", rec.config.rollouts},
                    {"c", rec.config.exploration_c},
                    {"seed", rec.config.seed},
                    {"alpha1", rec.config.weights.alpha1},
                    {"alpha2", rec.config.weights.alpha2},
                    {"constraints", to_json(rec.config.constraints)}}},
              {"eta", rec.eta},
              {"placements", placements},
              {"actions", actions},
              {"support_ratios", ratios},
              {"rewards", rewards}};
}

SolutionRecord solution_from_json(const json& j) {
  SolutionRecord rec;
  rec.instance = instance_from_json(j.at("instance"));
  const json& s = j.at("solver");
  rec.config.name = s.at("name").get<std::string>();
  rec.config.k = s.at("k").get<int>();
  rec.config.rollouts = s.at("rollouts").get<int>();
  rec.config.exploration_c = s.at("c").get<double>();
  rec.config.seed = s.at("seed").get<std::uint64_t>();
  rec.config.weights.alpha1 = s.at("alpha1").get<double>();
  rec.config.weights.alpha2 = s.at("alpha2").get<double>();
  rec.config.constraints = params_from_json(s.at("constraints"));
  rec.eta = j.at("eta").get<double>();
  for (const json& p : j.at("placements")) {
    rec.placements.push_back(Placement{
        Box{p.at("x").get<int>(), p.at("y").get<int>(), p.at("z").get<int>(),
            p.at("l").get<int>(), p.at("w").get<int>(), p.at("h").get<int>()},
        p.at("weight").get<double>(), p.at("id").get<int>()});
  }
  for (const json& a : j.at("actions")) {
    rec.actions.push_back(PlacementAction{a.at("type").get<int>(), a.at("dims").get<Dims>()});
  }
  for (const json& r : j.at("support_ratios")) {
    rec.support_ratios.push_back(Ratio{r.at("num").get<long long>(), r.at("den").get<long long>()});
  }
  for (const json& r : j.at("rewards")) {
    rec.rewards.push_back(StepReward{r.at("r_lr").get<double>(), r.at("r_hd").get<double>(),
                                     r.at("total").get<double>()});
  }
  return rec;
}

void write_instances(const std::string& path, const std::vector<InstanceSpec>& specs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << version_header(kInstanceFormat).dump() << '\n';
  for (const InstanceSpec& spec : specs) out << to_json(spec).dump() << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<InstanceSpec> read_instances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
  check_header(json::parse(line), kInstanceFormat);
  std::vector<InstanceSpec> specs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    specs.push_back(instance_from_json(json::parse(line)));
  }
  return specs;
}

void write_solutions(const std::string& path, const std::vector<SolutionRecord>& recs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << version_header(kSolutionFormat).dump() << '\n';
  for (const SolutionRecord& rec : recs) out << to_json(rec).dump() << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<SolutionRecord> read_solutions(const std::string& path, bool verify) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
  check_header(json::parse(line), kSolutionFormat);
  std::vector<SolutionRecord> recs;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SolutionRecord rec = solution_from_json(json::parse(line));
    if (verify) {
      const auto errors = verify_solution(rec);
      if (!errors.empty()) {
        throw std::runtime_error("record " + std::to_string(index) +
                                 " failed verification: " + errors.front());
      }
    }
    recs.push_back(std::move(rec));
    ++index;
  }
  return recs;
}

std::vector<std::string> verify_solution(const SolutionRecord& rec) {
  std::vector<std::string> errors;
  const Box bin = rec.instance.bin();

  for (std::size_t i = 0; i < rec.placements.size(); ++i) {
    if (!contains(bin, rec.placements[i].box)) {
      errors.push_back("placement " + std::to_string(i) + " outside the bin");
    }
    for (std::size_t j = i + 1; j < rec.placements.size(); ++j) {
      if (overlaps(rec.placements[i].box, rec.placements[j].box)) {
        errors.push_back("placements " + std::to_string(i) + " and " +
                         std::to_string(j) + " overlap");
      }
    }
  }

  // Recompute support ratios, rewards and eta from the placement sequence.
  if (rec.support_ratios.size() != rec.placements.size()) {
    errors.push_back("support ratio count mismatch");
  }
  // Greedy records carry no env reward trace; when present it must be complete.
  if (!rec.rewards.empty() && rec.rewards.size() != rec.placements.size()) {
    errors.push_back("reward count mismatch");
  }
  std::vector<Placement> before;
  long long volume = 0;
  int top1 = 0, top2 = 0;
  double lr_prev = 0.0;
  double lr_sum = 0.0;
  for (std::size_t i = 0; i < rec.placements.size(); ++i) {
    const Placement& p = rec.placements[i];
    const Ratio ratio = support_ratio(p.box, before);
    if (i < rec.support_ratios.size() && !(ratio == rec.support_ratios[i])) {
      errors.push_back("support ratio mismatch at placement " + std::to_string(i));
    }
    if (rec.config.constraints.support_enabled && !(ratio >= rec.config.constraints.r_s)) {
      errors.push_back("support constraint violated at placement " + std::to_string(i));
    }
    if (rec.config.constraints.weight_enabled &&
        !check_weight(p.box, p.weight, before, rec.config.constraints.r_w)) {
      errors.push_back("weight constraint violated at placement " + std::to_string(i));
    }
    const int hd_prev = top1 - top2;
    before.push_back(p);
    volume += p.box.volume();
    const int t = p.box.z2();
    if (t >= top1) {
      top2 = top1;
      top1 = t;
    } else if (t > top2) {
      top2 = t;
    }
    const double lr = static_cast<double>(volume) /
                      (static_cast<double>(bin.l) * bin.w * top1);
    const double r_lr = lr - lr_prev;
    const double r_hd = -static_cast<double>((top1 - top2) - hd_prev) /
                        static_cast<double>(bin.h);
    lr_prev = lr;
    lr_sum += r_lr;
    if (i < rec.rewards.size() &&
        (std::abs(rec.rewards[i].r_lr - r_lr) > 1e-12 ||
         std::abs(rec.rewards[i].r_hd - r_hd) > 1e-12)) {
      errors.push_back("reward mismatch at placement " + std::to_string(i));
    }
  }

  const double eta =
      top1 == 0 ? 0.0
                : static_cast<double>(volume) / (static_cast<double>(bin.l) * bin.w * top1);
  if (std::abs(eta - rec.eta) > 1e-12) {
    errors.push_back("eta mismatch: recorded " + std::to_string(rec.eta) +
                     ", recomputed " + std::to_string(eta));
  }
  if (!rec.placements.empty() && std::abs(lr_sum - eta) > 1e-12) {
    errors.push_back("loading-rate rewards do not telescope to eta");
  }
  return errors;
}

SolveResult run_solver(const InstanceSpec& instance, const SolverConfig& config,
                       std::uint64_t episode_seed) {
  InstanceSpec constrained = instance;
  constrained.params = config.constraints;
  if (config.name == "greedy") {
    return greedy_solve(constrained);
  }
  if (config.name == "mcts") {
    return mcts_solve(constrained, config.rollouts, config.exploration_c, episode_seed);
  }
  if (config.name == "sample") {
    return sample_best_of_k(constrained, uniform_policy, config.k, episode_seed,
                            config.weights);
  }
  throw std::invalid_argument("unknown solver: " + config.name);
}

std::vector<SolutionRecord> solve_batch(const std::vector<InstanceSpec>& instances,
                                        const SolverConfig& config, int jobs) {
  if (jobs < 1) jobs = 1;
  std::vector<SolutionRecord> records(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < instances.size(); i = next.fetch_add(1)) {
      // Seeds derive from the instance index, so scheduling cannot change results.
      SolveResult result = run_solver(instances[i], config,
                                      mix_seed(config.seed, static_cast<std::uint64_t>(i)));
      SolutionRecord rec;
      rec.instance = instances[i];
      rec.instance.params = config.constraints;
      rec.config = config;
      rec.eta = result.eta;
      rec.placements = std::move(result.placements);
      rec.actions = std::move(result.actions);
      rec.support_ratios = std::move(result.support_ratios);
      rec.rewards = std::move(result.rewards);
      rec.wall_time_ms = result.wall_time_ms;
      records[i] = std::move(rec);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

BatchSummary summarize(const std::vector<SolutionRecord>& records) {
  BatchSummary s;
  s.count = static_cast<int>(records.size());
  if (records.empty()) return s;
  double sum = 0.0, sum_sq = 0.0, support_sum = 0.0;
  long long support_n = 0;
  for (const SolutionRecord& rec : records) {
    sum += rec.eta;
    sum_sq += rec.eta * rec.eta;
    s.wall_time_ms += rec.wall_time_ms;
    for (const Ratio& r : rec.support_ratios) {
      support_sum += r.value();
      ++support_n;
    }
    for (const std::string& err : verify_solution(rec)) {
      (void)err;
      ++s.violations;
    }
  }
  s.mean_eta = sum / s.count;
  s.var_eta = sum_sq / s.count - s.mean_eta * s.mean_eta;
  s.mean_support = support_n == 0 ? 0.0 : support_sum / static_cast<double>(support_n);
  return s;
}

json export_layout_json(const SolutionRecord& rec) {
  json cuboids = json::array();
  for (const Placement& p : rec.placements) {
    cuboids.push_back(json{{"id", p.item_id},
                           {"position", {p.box.x, p.box.y, p.box.z}},
                           {"size", {p.box.l, p.box.w, p.box.h}},
                           {"weight", p.weight}});
  }
  return json{{"format", "binpack-layout"},
              {"version", "1.0"},
              {"bin", {rec.instance.L, rec.instance.W, rec.instance.H}},
              {"eta", rec.eta},
              {"cuboids", cuboids}};
}

std::string export_obj(const SolutionRecord& rec) {
  std::ostringstream out;
  out << "# binpack layout, bin " << rec.instance.L << " " << rec.instance.W << " "
      << rec.instance.H << "\n";
  int base = 0;
  for (std::size_t i = 0; i < rec.placements.size(); ++i) {
    const Box& b = rec.placements[i].box;
    out << "o item_" << i << "\n";
    for (int corner = 0; corner < 8; ++corner) {
      const int vx = b.x + ((corner & 1) ? b.l : 0);
      const int vy = b.y + ((corner & 2) ? b.w : 0);
      const int vz = b.z + ((corner & 4) ? b.h : 0);
      out << "v " << vx << " " << vy << " " << vz << "\n";
    }
    static constexpr int faces[6][4] = {{1, 2, 4, 3}, {5, 7, 8, 6}, {1, 5, 6, 2},
                                        {3, 4, 8, 7}, {1, 3, 7, 5}, {2, 6, 8, 4}};
    for (const auto& f : faces) {
      out << "f " << base + f[0] << " " << base + f[1] << " " << base + f[2] << " "
          << base + f[3] << "\n";
    }
    base += 8;
  }
  return out.str();
}

}  // namespace binpack
