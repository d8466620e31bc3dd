// Timing comparison between the OpenMP kernels and their serial references:
// the grid-search projection oracle, ensemble expert stepping, and sweep
// execution.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <vector>

#include "soco/ensemble.hpp"
#include "soco/environments.hpp"
#include "soco/oracle.hpp"
#include "soco/run.hpp"

using namespace soco;

namespace {

void bench_brute_force() {
  const Domain ball = Domain::l1_ball(1.0, 3);
  const Vec targets[] = {{0.9, -0.3, 0.05}, {1.4, 0.2, -0.6}, {-0.2, 0.8, 0.9}};
  const double step = 2e-3;

  double t0 = omp_get_wtime();
  Vec serial;
  for (const Vec& y : targets) serial = brute_force_project_serial(ball, y, step);
  const double serial_s = omp_get_wtime() - t0;

  t0 = omp_get_wtime();
  Vec parallel;
  for (const Vec& y : targets) parallel = brute_force_project(ball, y, step);
  const double parallel_s = omp_get_wtime() - t0;

  std::printf("grid projection (l1 d=3, step %.0e, 3 targets)\n", step);
  std::printf("  serial   %8.3f s\n", serial_s);
  std::printf("  openmp   %8.3f s   speedup %.2fx   identical %s\n", parallel_s,
              serial_s / parallel_s, serial == parallel ? "yes" : "NO");
}

double run_sader(bool parallel) {
  const auto [cost, comp] = shifting_stochastic(7, 15, 1500);
  Sader sader(cost.domain, 1.0, 1.0, cost.horizon, parallel);
  const double t0 = omp_get_wtime();
  RunOutput out = run_loop(sader, cost, comp.points, false);
  (void)out;
  return omp_get_wtime() - t0;
}

void bench_sader() {
  const double serial_s = run_sader(false);
  const double parallel_s = run_sader(true);
  std::printf("ensemble stepping (sader, T=22500, d=5)\n");
  std::printf("  serial   %8.3f s\n", serial_s);
  std::printf("  openmp   %8.3f s   speedup %.2fx\n", parallel_s,
              serial_s / parallel_s);
}

void bench_sweep() {
  std::vector<ExperimentConfig> configs;
  for (int k : {1, 65, 150, 300, 1500}) {
    ExperimentConfig c;
    c.env = EnvKind::ShiftingStochastic;
    c.learner = k == 1 ? LearnerKind::Gd : LearnerKind::KLazy;
    c.k = k;
    c.seed = 7;
    configs.push_back(c);
  }
  double t0 = omp_get_wtime();
  auto rows1 = sweep(configs, 1);
  const double serial_s = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  auto rows2 = sweep(configs, omp_get_max_threads());
  const double parallel_s = omp_get_wtime() - t0;

  bool same = rows1.size() == rows2.size();
  for (std::size_t i = 0; same && i < rows1.size(); ++i)
    same = rows1[i].ok == rows2[i].ok && rows1[i].regret == rows2[i].regret;

  std::printf("sweep (5 runs, shifting_stochastic T=60000)\n");
  std::printf("  serial   %8.3f s\n", serial_s);
  std::printf("  openmp   %8.3f s   speedup %.2fx   identical %s\n", parallel_s,
              serial_s / parallel_s, same ? "yes" : "NO");
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", omp_get_max_threads());
  bench_brute_force();
  std::printf("\n");
  bench_sader();
  std::printf("\n");
  bench_sweep();
  return 0;
}
