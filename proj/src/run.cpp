#include "soco/run.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace soco {
namespace {

struct EnvDefaults {
  long T;
  SigmaSchedule sigma;
};

// Horizons and schedules of the shipped experiment families.
EnvDefaults env_defaults(EnvKind e) {
  switch (e) {
    case EnvKind::SquareWave:
      return {400, SigmaSchedule::constant(1.0)};
    case EnvKind::ExampleI:
      return {101, SigmaSchedule::sqrt_over(1.0)};
    case EnvKind::ExampleII:
      return {101, SigmaSchedule::sqrt_over(1.0)};
    case EnvKind::ShiftingStochastic:
      return {60000, SigmaSchedule::sqrt_over(60.0)};
    case EnvKind::Corrupted:
      return {20000, SigmaSchedule::sqrt_over(16.0)};
    case EnvKind::WorstCase:
      return {1500, SigmaSchedule::sqrt_over(8.0)};
  }
  return {0, SigmaSchedule::constant(1.0)};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace

EnvKind parse_env(const std::string& name) {
  if (name == "square_wave") return EnvKind::SquareWave;
  if (name == "example_i") return EnvKind::ExampleI;
  if (name == "example_ii") return EnvKind::ExampleII;
  if (name == "shifting_stochastic") return EnvKind::ShiftingStochastic;
  if (name == "corrupted") return EnvKind::Corrupted;
  if (name == "worst_case") return EnvKind::WorstCase;
  throw std::invalid_argument(
      "unknown env '" + name +
      "' (square_wave, example_i, example_ii, shifting_stochastic, corrupted, worst_case)");
}

LearnerKind parse_learner(const std::string& name) {
  if (name == "gd") return LearnerKind::Gd;
  if (name == "lazy") return LearnerKind::Lazy;
  if (name == "klazy") return LearnerKind::KLazy;
  if (name == "klazy_ftrl") return LearnerKind::KLazyFtrl;
  if (name == "sader") return LearnerKind::Sader;
  throw std::invalid_argument("unknown learner '" + name +
                              "' (gd, lazy, klazy, klazy_ftrl, sader)");
}

std::string env_name(EnvKind e) {
  switch (e) {
    case EnvKind::SquareWave: return "square_wave";
    case EnvKind::ExampleI: return "example_i";
    case EnvKind::ExampleII: return "example_ii";
    case EnvKind::ShiftingStochastic: return "shifting_stochastic";
    case EnvKind::Corrupted: return "corrupted";
    case EnvKind::WorstCase: return "worst_case";
  }
  return "?";
}

std::string learner_name(LearnerKind l) {
  switch (l) {
    case LearnerKind::Gd: return "gd";
    case LearnerKind::Lazy: return "lazy";
    case LearnerKind::KLazy: return "klazy";
    case LearnerKind::KLazyFtrl: return "klazy_ftrl";
    case LearnerKind::Sader: return "sader";
  }
  return "?";
}

void ExperimentConfig::validate_and_resolve() {
  const EnvDefaults def = env_defaults(env);
  if (T == 0) T = def.T;
  if (!sigma) sigma = def.sigma;

  if (T < 1) throw std::invalid_argument("config: T must be >= 1");
  if (k < 1) throw std::invalid_argument("config: k must be >= 1");
  if (parallelism < 1)
    throw std::invalid_argument("config: parallelism must be >= 1");

  if (env == EnvKind::SquareWave) {
    if (k < 2)
      throw std::invalid_argument(
          "config: square_wave needs the wave period k >= 2 (--k)");
    if (T < k)
      throw std::invalid_argument("config: square_wave needs T >= k");
    if (tau < 1.0 || tau > 2.0 * static_cast<double>(T - 1))
      throw std::invalid_argument(
          "config: square_wave comparator budget tau must lie in [1, 2(T-1)]");
  }
  if (env == EnvKind::ExampleI && T < 13)
    throw std::invalid_argument("config: example_i needs T >= 13");
  if (env == EnvKind::ExampleII && T < 12)
    throw std::invalid_argument("config: example_ii needs T >= 12");

  if (learner == LearnerKind::KLazyFtrl && !sigma->is_constant())
    throw std::invalid_argument(
        "config: klazy_ftrl requires a constant sigma (--sigma-const); the "
        "FTRL form is not defined for time-varying schedules");
  if (learner == LearnerKind::Sader && T < 2)
    throw std::invalid_argument("config: sader needs T >= 2 to build its grid");
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  long lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      // blank or separator line
      bool blank = true;
      for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (blank) continue;
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  try {
    if (key == "env") cfg.env = parse_env(value);
    else if (key == "learner") cfg.learner = parse_learner(value);
    else if (key == "k") cfg.k = std::stoi(value);
    else if (key == "sigma_const") cfg.sigma = SigmaSchedule::constant(std::stod(value));
    else if (key == "sigma_sqrt_c") cfg.sigma = SigmaSchedule::sqrt_over(std::stod(value));
    else if (key == "T") cfg.T = std::stol(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "tau") cfg.tau = std::stod(value);
    else if (key == "out") cfg.out_path = value;
    else if (key == "parallelism") cfg.parallelism = std::stoi(value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad value for '" + key + "': " + value);
  }
}

EnvironmentData build_environment(const ExperimentConfig& cfg) {
  EnvironmentData env{CostSequence{{}, Domain::box({-1.0}, {1.0}), 1.0, 0}, {}};
  switch (cfg.env) {
    case EnvKind::SquareWave:
      env.cost = square_wave(cfg.k, cfg.T);
      env.comparator = lower_bound_comparator(cfg.k, cfg.T, cfg.tau);
      return env;
    case EnvKind::ExampleI:
      env.cost = example_i(cfg.T);
      break;
    case EnvKind::ExampleII:
      env.cost = example_ii(cfg.T);
      break;
    case EnvKind::ShiftingStochastic: {
      // T overrides scale the phase length, keeping 15 phases.
      const long phase_len = cfg.T / 15 > 0 ? cfg.T / 15 : 1;
      auto [cost, comp] = shifting_stochastic(cfg.seed, 15, phase_len);
      env.cost = std::move(cost);
      env.comparator = std::move(comp);
      return env;
    }
    case EnvKind::Corrupted: {
      const long phase_len = cfg.T / 10 > 0 ? cfg.T / 10 : 1;
      auto [cost, comp] = corrupted_phases(10, phase_len);
      env.cost = std::move(cost);
      env.comparator = std::move(comp);
      return env;
    }
    case EnvKind::WorstCase: {
      const long phase_len = cfg.T / 5 > 0 ? cfg.T / 5 : 1;
      auto [cost, comp] = worst_case_phases(5, phase_len);
      env.cost = std::move(cost);
      env.comparator = std::move(comp);
      return env;
    }
  }
  // Families without a built-in comparator measure against the origin.
  env.comparator.points.assign(env.cost.gradients.size(),
                               zeros(env.cost.domain.dim()));
  env.comparator.path_length = 0.0;
  return env;
}

std::unique_ptr<Learner> make_learner(const ExperimentConfig& cfg,
                                      const CostSequence& cost) {
  const SigmaSchedule sigma = *cfg.sigma;
  std::unique_ptr<Learner> l;
  switch (cfg.learner) {
    case LearnerKind::Gd:
      l = std::make_unique<Gd>(cost.domain, sigma);
      break;
    case LearnerKind::Lazy:
      l = std::make_unique<LazyGd>(cost.domain, sigma);
      break;
    case LearnerKind::KLazy:
      l = std::make_unique<KLazyGd>(cost.domain, sigma, cfg.k);
      break;
    case LearnerKind::KLazyFtrl:
      l = std::make_unique<KLazyGdFtrl>(cost.domain, sigma, cfg.k);
      break;
    case LearnerKind::Sader:
      l = std::make_unique<Sader>(cost.domain, cost.g_bound,
                                  cost.domain.effective_radius(),
                                  cost.horizon);
      break;
  }
  l->set_gradient_bound(cost.g_bound);
  return l;
}

RunOutput run_loop(Learner& learner, const CostSequence& cost,
                   const std::vector<Vec>& comparator, bool record_trace) {
  if (comparator.size() != cost.gradients.size())
    throw std::invalid_argument("run_loop: comparator length must match horizon");

  RunOutput out;
  out.metrics = RunMetrics(record_trace);
  out.deltas.reserve(cost.gradients.size());
  out.sigmas.reserve(cost.gradients.size());
  if (record_trace) out.trace.reserve(cost.gradients.size());

  const auto start = std::chrono::steady_clock::now();
  for (long t = 1; t <= cost.horizon; ++t) {
    const std::size_t i = static_cast<std::size_t>(t - 1);
    const Vec x_t = learner.action();
    const Vec& g_t = cost.gradients[i];
    out.metrics.accumulate(t, g_t, x_t, comparator[i]);
    const Vec& x_next = learner.step(g_t);
    out.deltas.push_back(dist2(x_next, x_t));
    out.sigmas.push_back(learner.last_sigma());
    if (record_trace) {
      TraceRound r;
      r.t = t;
      r.n = learner.last_phase_index();
      r.sigma = learner.last_sigma();
      r.g = g_t;
      r.x = x_t;
      r.y_next = learner.unconstrained_iterate();
      r.x_next = x_next;
      out.trace.push_back(std::move(r));
    }
  }
  out.final_action = learner.action();
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

std::string summary_json(const ExperimentConfig& cfg, const RunOutput& out) {
  nlohmann::json j;
  j["env"] = env_name(cfg.env);
  j["learner"] = learner_name(cfg.learner);
  j["k"] = cfg.k;
  j["sigma"] = cfg.sigma->describe();
  j["T"] = out.metrics.rounds();
  j["seed"] = cfg.seed;
  j["R_T"] = out.metrics.regret();
  j["total_regret"] = out.metrics.total_regret();
  j["switching"] = out.metrics.switching_total();
  j["path_length"] = out.metrics.path_total();
  j["wall_ms"] = out.wall_ms;
  return j.dump(2) + "\n";
}

RunArtifacts run_experiment(const ExperimentConfig& raw) {
  ExperimentConfig cfg = raw;
  cfg.validate_and_resolve();

  const EnvironmentData env = build_environment(cfg);
  std::unique_ptr<Learner> learner = make_learner(cfg, env.cost);

  RunArtifacts art;
  art.config = cfg;
  art.output = run_loop(*learner, env.cost, env.comparator.points,
                        cfg.record_trace);
  art.summary_json = summary_json(cfg, art.output);

  if (!cfg.out_path.empty()) {
    write_file(cfg.out_path + ".csv", art.output.metrics.csv());
    write_file(cfg.out_path + ".json", art.summary_json);
  }
  return art;
}

std::vector<SweepRow> sweep(const std::vector<ExperimentConfig>& configs,
                            int parallelism) {
  std::vector<SweepRow> rows(configs.size());
  const int n = static_cast<int>(configs.size());
#pragma omp parallel for schedule(dynamic) num_threads(parallelism) \
    if (parallelism > 1)
  for (int i = 0; i < n; ++i) {
    SweepRow row;
    row.config = configs[static_cast<std::size_t>(i)];
    try {
      RunArtifacts art = run_experiment(row.config);
      row.config = art.config;
      row.ok = true;
      row.regret = art.output.metrics.regret();
      row.total_regret = art.output.metrics.total_regret();
      row.switching = art.output.metrics.switching_total();
      row.path_length = art.output.metrics.path_total();
      row.wall_ms = art.output.wall_ms;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows[static_cast<std::size_t>(i)] = std::move(row);
  }
  return rows;
}

std::vector<ExperimentConfig> parse_sweep_file(const std::string& path,
                                               const ExperimentConfig& base) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open sweep file: " + path);
  std::vector<ExperimentConfig> configs;
  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream iss(line);
    std::string token;
    ExperimentConfig cfg = base;
    bool any = false;
    while (iss >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("sweep file: expected key=value, got '" +
                                    token + "'");
      apply_override(cfg, token.substr(0, eq), token.substr(eq + 1));
      any = true;
    }
    if (any) configs.push_back(std::move(cfg));
  }
  return configs;
}

std::string sweep_table(const std::vector<SweepRow>& rows) {
  std::string out =
      "index\tenv\tlearner\tk\tsigma\tT\tseed\tstatus\tR_T\ttotal_regret\t"
      "switching\tpath_length\twall_ms\n";
  char buf[512];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    if (r.ok) {
      std::snprintf(buf, sizeof(buf),
                    "%zu\t%s\t%s\t%d\t%s\t%ld\t%llu\tok\t%.12g\t%.12g\t%.12g\t"
                    "%.12g\t%.3f\n",
                    i, env_name(r.config.env).c_str(),
                    learner_name(r.config.learner).c_str(), r.config.k,
                    r.config.sigma ? r.config.sigma->describe().c_str() : "-",
                    r.config.T,
                    static_cast<unsigned long long>(r.config.seed), r.regret,
                    r.total_regret, r.switching, r.path_length, r.wall_ms);
    } else {
      std::snprintf(buf, sizeof(buf), "%zu\t%s\t%s\t%d\t%s\t%ld\t%llu\tfailed\t%s\n",
                    i, env_name(r.config.env).c_str(),
                    learner_name(r.config.learner).c_str(), r.config.k,
                    r.config.sigma ? r.config.sigma->describe().c_str() : "-",
                    r.config.T,
                    static_cast<unsigned long long>(r.config.seed),
                    r.error.c_str());
    }
    out += buf;
  }
  return out;
}

}  // namespace soco
