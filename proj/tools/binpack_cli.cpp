#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "binpack/io.hpp"

namespace {

int default_jobs() {
  if (const char* env = std::getenv("BINPACK_JOBS")) {
    const int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

void print_summary(const binpack::BatchSummary& s) {
  std::cout << "instances:        " << s.count << "\n"
            << "mean eta:         " << s.mean_eta << "\n"
            << "eta variance:     " << s.var_eta << "\n"
            << "mean support:     " << s.mean_support << "\n"
            << "violations:       " << s.violations << "\n"
            << "wall time (ms):   " << s.wall_time_ms << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3D bin packing toolkit: instance generation, solving, verification"};
  app.require_subcommand(1);

  // gen
  std::string gen_scheme = "S1_10", gen_out = "instances.jsonl";
  int gen_count = 1;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark instance set");
  gen->add_option("--scheme", gen_scheme, "Scheme tag, e.g. S1_10, B1_30, BM_M");
  gen->add_option("--count", gen_count, "Number of instances")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--out", gen_out, "Output JSON-lines file");

  // solve
  std::string solve_in, solve_out = "solutions.jsonl";
  binpack::SolverConfig config;
  int jobs = default_jobs();
  double rs = -1.0, rw = -1.0;
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("--in", solve_in, "Instance file")->required();
  solve->add_option("--out", solve_out, "Solutions output file");
  solve->add_option("--solver", config.name, "greedy | mcts | sample")
      ->check(CLI::IsMember({"greedy", "mcts", "sample"}));
  solve->add_option("--k", config.k, "Samples per instance (sample solver)");
  solve->add_option("--rollouts", config.rollouts, "Rollout budget (mcts solver)");
  solve->add_option("--c", config.exploration_c, "UCT exploration constant");
  solve->add_option("--seed", config.seed, "Solver seed");
  solve->add_option("--alpha1", config.weights.alpha1, "Loading-rate reward weight");
  solve->add_option("--alpha2", config.weights.alpha2, "Height-difference reward weight");
  solve->add_option("--rs", rs, "Enable support constraint with this ratio (e.g. 0.66)");
  solve->add_option("--rw", rw, "Enable weight constraint with this ratio (e.g. 3.0)");
  solve->add_option("--jobs", jobs, "Parallel workers (env BINPACK_JOBS)");

  // eval
  std::string eval_in;
  auto* eval = app.add_subcommand("eval", "Re-verify a solutions file");
  eval->add_option("--in", eval_in, "Solutions file")->required();

  // export
  std::string export_in, export_out = "-", export_format = "json";
  int export_index = 0;
  auto* exp = app.add_subcommand("export", "Export one solution layout");
  exp->add_option("--in", export_in, "Solutions file")->required();
  exp->add_option("--index", export_index, "Record index");
  exp->add_option("--format", export_format, "json | obj");
  exp->add_option("--out", export_out, "Output path, - for stdout");

  // stats
  std::string stats_in;
  auto* stats = app.add_subcommand("stats", "Summary statistics for a solutions file");
  stats->add_option("--in", stats_in, "Solutions file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) {
      const auto specs = binpack::generate_set(gen_scheme, gen_count, gen_seed);
      binpack::write_instances(gen_out, specs);
      std::cout << "wrote " << specs.size() << " instances to " << gen_out << "\n";
      return 0;
    }
    if (solve->parsed()) {
      if (rs >= 0.0) {
        config.constraints.support_enabled = true;
        config.constraints.r_s =
            binpack::Ratio{static_cast<long long>(rs * 10000.0 + 0.5), 10000};
      }
      if (rw >= 0.0) {
        config.constraints.weight_enabled = true;
        config.constraints.r_w = rw;
      }
      const auto instances = binpack::read_instances(solve_in);
      const auto records = binpack::solve_batch(instances, config, jobs);
      binpack::write_solutions(solve_out, records);
      const auto summary = binpack::summarize(records);
      print_summary(summary);
      return summary.violations == 0 ? 0 : 3;
    }
    if (eval->parsed()) {
      const auto records = binpack::read_solutions(eval_in, /*verify=*/true);
      std::cout << "verified " << records.size() << " records\n";
      print_summary(binpack::summarize(records));
      return 0;
    }
    if (exp->parsed()) {
      const auto records = binpack::read_solutions(export_in, /*verify=*/true);
      if (export_index < 0 || export_index >= static_cast<int>(records.size())) {
        std::cerr << "record index out of range\n";
        return 1;
      }
      std::string payload;
      if (export_format == "json") {
        payload = binpack::export_layout_json(records[export_index]).dump(2) + "\n";
      } else if (export_format == "obj") {
        payload = binpack::export_obj(records[export_index]);
      } else {
        std::cerr << "unknown export format: " << export_format << "\n";
        return 1;
      }
      if (export_out == "-") {
        std::cout << payload;
      } else {
        std::ofstream out(export_out);
        if (!out) throw std::runtime_error("cannot open for writing: " + export_out);
        out << payload;
      }
      return 0;
    }
    if (stats->parsed()) {
      print_summary(binpack::summarize(binpack::read_solutions(stats_in, false)));
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.find("verification") != std::string::npos ? 3 : 2;
  }
  return 1;
}
