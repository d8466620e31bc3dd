#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "soco/run.hpp"

using namespace soco;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
}

}  // namespace

TEST_CASE("config parsing and overrides") {
  const std::string path = "test_cfg.txt";
  spit(path,
       "# demo config\n"
       "env = shifting_stochastic\n"
       "learner = klazy\n"
       "k = 150\n"
       "sigma_sqrt_c = 60\n"
       "seed = 7\n");
  ExperimentConfig cfg = parse_config_file(path);
  CHECK(cfg.env == EnvKind::ShiftingStochastic);
  CHECK(cfg.learner == LearnerKind::KLazy);
  CHECK(cfg.k == 150);
  CHECK(cfg.seed == 7);

  apply_override(cfg, "k", "65");  // flags win over the file
  CHECK(cfg.k == 65);
  CHECK_THROWS_AS(apply_override(cfg, "bogus", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(cfg, "k", "banana"), std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("validation names the violated constraint") {
  ExperimentConfig cfg;
  cfg.env = EnvKind::SquareWave;
  cfg.learner = LearnerKind::KLazyFtrl;
  cfg.k = 4;
  cfg.sigma = SigmaSchedule::sqrt_over(2.0);
  try {
    cfg.validate_and_resolve();
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("klazy_ftrl") != std::string::npos);
    CHECK(std::string(e.what()).find("constant sigma") != std::string::npos);
  }

  ExperimentConfig wave;
  wave.env = EnvKind::SquareWave;
  wave.k = 1;
  CHECK_THROWS_AS(wave.validate_and_resolve(), std::invalid_argument);

  ExperimentConfig ok;
  ok.env = EnvKind::ExampleI;
  ok.validate_and_resolve();
  CHECK(ok.T == 101);  // environment default applied
  CHECK(ok.sigma->kind == SigmaSchedule::Kind::SqrtOverC);
}

TEST_CASE("run writes csv and summary, and both agree") {
  ExperimentConfig cfg;
  cfg.env = EnvKind::SquareWave;
  cfg.learner = LearnerKind::KLazy;
  cfg.k = 4;
  cfg.T = 64;
  cfg.tau = 4.0;
  cfg.sigma = SigmaSchedule::constant(1.0);
  cfg.out_path = "test_run_out";

  const RunArtifacts art = run_experiment(cfg);
  const std::string csv = slurp("test_run_out.csv");
  CHECK(csv == art.output.metrics.csv());

  // independent recomputation of R_T from the emitted CSV
  std::istringstream in(csv);
  std::string line, last;
  std::getline(in, line);  // header
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  double sw = 0, hit = 0, total = 0, path = 0;
  long t = 0;
  REQUIRE(std::sscanf(last.c_str(), "%ld,%lf,%lf,%lf,%lf", &t, &sw, &hit,
                      &total, &path) == 5);
  CHECK(t == 64);
  CHECK(std::fabs((hit + sw) - art.output.metrics.regret()) <= 1e-9);

  const std::string json = slurp("test_run_out.json");
  CHECK(json.find("\"env\": \"square_wave\"") != std::string::npos);
  CHECK(json.find("\"R_T\"") != std::string::npos);
  CHECK(json.find("\"wall_ms\"") != std::string::npos);

  std::remove("test_run_out.csv");
  std::remove("test_run_out.json");
}

TEST_CASE("identical configs give byte-identical csv output") {
  ExperimentConfig cfg;
  cfg.env = EnvKind::ShiftingStochastic;
  cfg.learner = LearnerKind::KLazy;
  cfg.k = 50;
  cfg.T = 1500;  // 15 phases of 100
  cfg.seed = 13;

  const RunArtifacts a = run_experiment(cfg);
  const RunArtifacts b = run_experiment(cfg);
  CHECK(a.output.metrics.csv() == b.output.metrics.csv());

  ExperimentConfig other = cfg;
  other.seed = 14;
  const RunArtifacts c = run_experiment(other);
  CHECK(a.output.metrics.csv() != c.output.metrics.csv());
}

TEST_CASE("sweep keeps input order and records failures") {
  ExperimentConfig base;
  base.env = EnvKind::SquareWave;
  base.learner = LearnerKind::KLazy;
  base.k = 4;
  base.T = 128;
  base.tau = 2.0;

  std::vector<ExperimentConfig> configs;
  for (int k : {8, 2, 16}) {
    ExperimentConfig c = base;
    c.k = k;
    configs.push_back(c);
  }
  ExperimentConfig bad = base;
  bad.k = 1;  // rejected by validation
  configs.insert(configs.begin() + 1, bad);

  const auto rows = sweep(configs, 4);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].ok);
  CHECK(rows[0].config.k == 8);
  CHECK_FALSE(rows[1].ok);
  CHECK(rows[1].error.find("k >= 2") != std::string::npos);
  CHECK(rows[2].ok);
  CHECK(rows[2].config.k == 2);
  CHECK(rows[3].ok);
  CHECK(rows[3].config.k == 16);

  const std::string table = sweep_table(rows);
  CHECK(table.find("failed") != std::string::npos);
  // singleton sweep equals a direct run
  const auto one = sweep({base}, 1);
  const RunArtifacts direct = run_experiment(base);
  CHECK(one[0].regret == doctest::Approx(direct.output.metrics.regret()));
}

TEST_CASE("sweep file parsing applies per-line overrides") {
  const std::string path = "test_sweep.txt";
  spit(path,
       "# one run per line\n"
       "k=65 seed=1\n"
       "k=150 seed=7 out=ignored_path\n"
       "\n"
       "k=300\n");
  ExperimentConfig base;
  base.env = EnvKind::ShiftingStochastic;
  base.learner = LearnerKind::KLazy;
  const auto configs = parse_sweep_file(path, base);
  REQUIRE(configs.size() == 3);
  CHECK(configs[0].k == 65);
  CHECK(configs[1].seed == 7);
  CHECK(configs[1].out_path == "ignored_path");
  CHECK(configs[2].k == 300);
  std::remove(path.c_str());
}

TEST_CASE("square-wave run clears the regret floor") {
  ExperimentConfig cfg;
  cfg.env = EnvKind::SquareWave;
  cfg.learner = LearnerKind::KLazy;
  cfg.k = 4;
  cfg.T = 400;
  cfg.tau = 4.0;
  cfg.sigma = SigmaSchedule::constant(1.0);
  const RunArtifacts art = run_experiment(cfg);
  CHECK(lower_bound_value(4, 4.0) == 4.0);
  CHECK(art.output.metrics.regret() >= 4.0);
}

TEST_CASE("environment bundles") {
  ExperimentConfig cfg;
  cfg.env = EnvKind::ExampleII;
  cfg.validate_and_resolve();
  const EnvironmentData env = build_environment(cfg);
  CHECK(env.cost.horizon == 101);
  // families without a comparator measure against the origin
  CHECK(env.comparator.points.size() == 101);
  CHECK(env.comparator.points[0] == zeros(2));
  CHECK(env.comparator.path_length == 0.0);

  ExperimentConfig wave;
  wave.env = EnvKind::SquareWave;
  wave.k = 4;
  wave.T = 40;
  wave.tau = 3.0;
  wave.validate_and_resolve();
  const EnvironmentData wenv = build_environment(wave);
  CHECK(wenv.comparator.points.size() == 40);
  CHECK(wenv.comparator.path_length == 6.0);
}
