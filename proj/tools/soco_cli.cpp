// Command-line driver: single runs, sweeps, sequence dumps, and monitor
// reports. Exit codes: 0 success, 1 run failure, 2 config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "soco/oracle.hpp"
#include "soco/run.hpp"

using namespace soco;

namespace {

int run_single(ExperimentConfig cfg, const std::string& dump_seq,
               const std::string& monitors_path, double monitor_alpha) {
  cfg.validate_and_resolve();

  if (!dump_seq.empty()) {
    const EnvironmentData env = build_environment(cfg);
    std::ofstream f(dump_seq, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open for writing: " << dump_seq << "\n";
      return 1;
    }
    f << sequence_csv(env.cost, &env.comparator);
    return 0;
  }

  if (!monitors_path.empty() && cfg.learner == LearnerKind::Sader) {
    std::cerr << "monitors apply to the base learners, not sader\n";
    return 2;
  }

  cfg.record_trace = !monitors_path.empty();
  const RunArtifacts art = run_experiment(cfg);
  std::cout << art.summary_json;

  if (!monitors_path.empty()) {
    const EnvironmentData env = build_environment(cfg);
    const Domain& dom = env.cost.domain;
    std::unique_ptr<Learner> probe = make_learner(cfg, env.cost);
    const int k = probe->phase_k();

    std::string json = "{\n  \"staleness\": ";
    json += monitor_staleness(art.output.trace, dom, k).to_json();
    json += ",\n  \"variance\": ";
    json += monitor_variance_bound(art.output.trace, dom, k, env.cost.g_bound)
                .to_json();
    if (dom.kind() == DomainKind::L2Ball) {
      json += ",\n  \"stability\": ";
      json += monitor_stability(art.output.trace, dom, k, env.cost.g_bound,
                                monitor_alpha)
                  .to_json();
    }
    json += "\n}\n";
    std::ofstream f(monitors_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open for writing: " << monitors_path << "\n";
      return 1;
    }
    f << json;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smoothed online convex optimization toolkit"};

  std::string config_path, env_s, learner_s, out, sweep_path, dump_seq,
      monitors_path;
  std::optional<int> k;
  std::optional<double> sigma_const, sigma_sqrt_c, tau;
  std::optional<long> T;
  std::optional<unsigned long long> seed;
  int parallelism = 1;
  double monitor_alpha = 0.5;

  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--env", env_s,
                 "square_wave | example_i | example_ii | shifting_stochastic "
                 "| corrupted | worst_case");
  app.add_option("--learner", learner_s,
                 "gd | lazy | klazy | klazy_ftrl | sader");
  app.add_option("--k", k, "laziness slack (and square-wave period)");
  app.add_option("--sigma-const", sigma_const, "constant sigma");
  app.add_option("--sigma-sqrt-c", sigma_sqrt_c, "sigma_t = sqrt(t/c)");
  app.add_option("--T", T, "horizon (0 = environment default)");
  app.add_option("--seed", seed, "RNG seed for stochastic environments");
  app.add_option("--tau", tau, "comparator flip budget (square_wave)");
  app.add_option("--out", out, "output base path: writes <out>.csv, <out>.json");
  app.add_option("--sweep", sweep_path, "sweep file, one run per line");
  app.add_option("--parallelism", parallelism, "concurrent runs in a sweep");
  app.add_option("--dump-seq", dump_seq,
                 "write the environment's sequence CSV and exit");
  app.add_option("--monitors", monitors_path,
                 "run with tracing and write proposition reports as JSON");
  app.add_option("--monitor-alpha", monitor_alpha,
                 "alpha for the stability monitor");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    // flags win over the config file
    if (!env_s.empty()) cfg.env = parse_env(env_s);
    if (!learner_s.empty()) cfg.learner = parse_learner(learner_s);
    if (k) cfg.k = *k;
    if (sigma_const) cfg.sigma = SigmaSchedule::constant(*sigma_const);
    if (sigma_sqrt_c) cfg.sigma = SigmaSchedule::sqrt_over(*sigma_sqrt_c);
    if (T) cfg.T = *T;
    if (seed) cfg.seed = *seed;
    if (tau) cfg.tau = *tau;
    if (!out.empty()) cfg.out_path = out;
    cfg.parallelism = parallelism;

    if (!sweep_path.empty()) {
      cfg.out_path.clear();  // per-line out= controls file output in sweeps
      const auto configs = parse_sweep_file(sweep_path, cfg);
      const auto rows = sweep(configs, parallelism);
      const std::string table = sweep_table(rows);
      std::cout << table;
      if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) {
          std::cerr << "cannot open for writing: " << out << "\n";
          return 1;
        }
        f << table;
      }
      for (const auto& row : rows)
        if (!row.ok) return 1;
      return 0;
    }

    return run_single(cfg, dump_seq, monitors_path, monitor_alpha);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 1;
  }
}
