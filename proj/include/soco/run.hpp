#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "soco/ensemble.hpp"
#include "soco/environments.hpp"
#include "soco/learners.hpp"
#include "soco/metrics.hpp"

namespace soco {

enum class EnvKind {
  SquareWave,
  ExampleI,
  ExampleII,
  ShiftingStochastic,
  Corrupted,
  WorstCase,
};

enum class LearnerKind { Gd, Lazy, KLazy, KLazyFtrl, Sader };

EnvKind parse_env(const std::string& name);          // throws on unknown name
LearnerKind parse_learner(const std::string& name);  // throws on unknown name
std::string env_name(EnvKind e);
std::string learner_name(LearnerKind l);

/// A fully specified experiment. Fields left unset pick the environment's
/// documented defaults (horizon and sigma schedule of the shipped setups).
struct ExperimentConfig {
  EnvKind env = EnvKind::ExampleI;
  LearnerKind learner = LearnerKind::Gd;
  int k = 1;  // laziness slack; for square_wave also the wave period
  std::optional<SigmaSchedule> sigma;
  long T = 0;  // 0 = environment default
  std::uint64_t seed = 1;
  double tau = 1.0;  // comparator flip budget (square_wave only)
  std::string out_path;  // base path; empty = no files
  int parallelism = 1;   // sweep-level concurrency
  bool record_trace = false;

  /// Resolves defaults and checks every field; throws std::invalid_argument
  /// with a message naming the violated constraint.
  void validate_and_resolve();
};

/// Parses a flat key = value config file ('#' starts a comment). Unknown
/// keys are an error. Keys: env, learner, k, sigma_const, sigma_sqrt_c, T,
/// seed, tau, out, parallelism.
ExperimentConfig parse_config_file(const std::string& path);

/// Applies key=value overrides (same keys as the config file) on top.
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

struct EnvironmentData {
  CostSequence cost;
  ComparatorSequence comparator;  // zeros when the family defines none
};

EnvironmentData build_environment(const ExperimentConfig& cfg);
std::unique_ptr<Learner> make_learner(const ExperimentConfig& cfg,
                                      const CostSequence& cost);

/// Everything one T-round loop produces.
struct RunOutput {
  RunMetrics metrics;
  RunTrace trace;               // populated only when requested
  std::vector<double> deltas;   // ||x_{t+1} - x_t||, t = 1..T
  std::vector<double> sigmas;   // sigma_t per round (NaN for sader)
  Vec final_action;             // x_{T+1}
  double wall_ms = 0.0;
};

/// Core loop: emit action, observe gradient, update metrics, step learner.
RunOutput run_loop(Learner& learner, const CostSequence& cost,
                   const std::vector<Vec>& comparator, bool record_trace);

struct RunArtifacts {
  ExperimentConfig config;
  RunOutput output;
  std::string summary_json;
};

/// Runs a validated config and, when out_path is set, writes
/// <out_path>.csv (metrics) and <out_path>.json (summary). I/O failures
/// carry the path in the exception message.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

std::string summary_json(const ExperimentConfig& cfg, const RunOutput& out);

struct SweepRow {
  ExperimentConfig config;
  bool ok = false;
  std::string error;
  double regret = 0.0;
  double total_regret = 0.0;
  double switching = 0.0;
  double path_length = 0.0;
  double wall_ms = 0.0;
};

/// Runs the configs concurrently up to `parallelism`; a failed run becomes a
/// failed row and the sweep continues. Row order matches input order
/// regardless of completion order.
std::vector<SweepRow> sweep(const std::vector<ExperimentConfig>& configs,
                            int parallelism);

/// One sweep row per non-empty, non-comment line of the file; each line is a
/// whitespace-separated list of key=value overrides applied to `base`.
std::vector<ExperimentConfig> parse_sweep_file(const std::string& path,
                                               const ExperimentConfig& base);

std::string sweep_table(const std::vector<SweepRow>& rows);

}  // namespace soco
