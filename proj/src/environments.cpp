#include "soco/environments.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "soco/rng.hpp"

namespace soco {
namespace {

Vec uniform_direction(int d, double value) {
  return Vec(static_cast<std::size_t>(d), value);
}

// Phase-structured deterministic sequences share this builder: `burst` = 0
// gives pure-sign phases.
std::pair<CostSequence, ComparatorSequence> signed_phases(
    int phases, long phase_len, int stretch, int burst, int d) {
  if (phases < 1 || phase_len < 1)
    throw std::invalid_argument("signed phases: need phases >= 1 and phase_len >= 1");
  if (stretch < 1 || burst < 0)
    throw std::invalid_argument("signed phases: need stretch >= 1 and burst >= 0");

  const long T = static_cast<long>(phases) * phase_len;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  const long cycle = stretch + burst;

  CostSequence cost{{}, Domain::l1_ball(1.0, d), 1.0, T};
  cost.gradients.reserve(T);
  ComparatorSequence comp;
  comp.points.reserve(T);

  for (int p = 0; p < phases; ++p) {
    const double dominant = (p % 2 == 0) ? 1.0 : -1.0;
    const Vec u = uniform_direction(d, -dominant / static_cast<double>(d));
    for (long r = 0; r < phase_len; ++r) {
      const long pos = r % cycle;
      const double sign = (pos < stretch) ? dominant : -dominant;
      cost.gradients.push_back(uniform_direction(d, sign * inv_sqrt_d));
      comp.points.push_back(u);
    }
  }
  comp.path_length = path_length_of(comp.points);
  return {std::move(cost), std::move(comp)};
}

}  // namespace

double path_length_of(const std::vector<Vec>& points) {
  double p = 0.0;
  for (std::size_t t = 1; t < points.size(); ++t)
    p += dist2(points[t], points[t - 1]);
  return p;
}

CostSequence square_wave(int k, long T) {
  if (k < 2)
    throw std::invalid_argument("square_wave: k must be >= 2 (no wave exists for the greedy case)");
  if (T < k) throw std::invalid_argument("square_wave: T must be >= k");

  std::vector<double> block(static_cast<std::size_t>(k));
  if (k % 2 == 0) {
    for (int j = 0; j < k; ++j) block[j] = (j < k / 2) ? 1.0 : -1.0;
  } else {
    const int half = (k - 1) / 2;
    for (int j = 0; j < k; ++j)
      block[j] = (j < half) ? 1.0 : (j < k - 1 ? -1.0 : 0.0);
  }

  CostSequence cost{{}, Domain::box({-1.0}, {1.0}), 1.0, T};
  cost.gradients.reserve(T);
  for (long t = 1; t <= T; ++t)
    cost.gradients.push_back({block[static_cast<std::size_t>((t - 1) % k)]});
  return cost;
}

ComparatorSequence lower_bound_comparator(int k, long T, double tau) {
  if (k < 2) throw std::invalid_argument("lower_bound_comparator: k must be >= 2");
  if (tau < 1.0 || tau > 2.0 * static_cast<double>(T - 1))
    throw std::invalid_argument("lower_bound_comparator: tau must lie in [1, 2(T-1)]");

  const long tau_floor = static_cast<long>(std::floor(tau));
  long active = (tau_floor + 1) / 2;  // ceil(tau'/2)
  const long blocks = T / k;
  if (active > blocks) active = blocks;

  const int half = (k % 2 == 0) ? k / 2 : (k - 1) / 2;

  ComparatorSequence comp;
  comp.points.reserve(T);
  double cur = -1.0;
  for (long t = 1; t <= T; ++t) {
    const long block = (t - 1) / k;  // 0-based
    const int j = static_cast<int>((t - 1) % k);
    if (block < active) {
      if (j == 0) cur = -1.0;
      if (j == half) cur = 1.0;
    }
    comp.points.push_back({cur});
  }
  comp.path_length = path_length_of(comp.points);
  return comp;
}

CostSequence example_i(long T) {
  if (T < 13) throw std::invalid_argument("example_i: T must be >= 13");
  static const Vec cycle[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  CostSequence cost{{}, Domain::l1_ball(1.0, 2), 1.0, T};
  cost.gradients.reserve(T);
  for (long t = 1; t <= T; ++t) {
    if (t <= 12)
      cost.gradients.push_back({-1.0, 0.0});
    else
      cost.gradients.push_back(cycle[(t - 13) % 4]);
  }
  return cost;
}

CostSequence example_ii(long T) {
  if (T < 12) throw std::invalid_argument("example_ii: T must be >= 12");
  CostSequence cost{{}, Domain::l2_ball(1.0, 2), std::sqrt(2.0), T};
  cost.gradients.reserve(T);
  for (long t = 1; t <= T; ++t) {
    if (t <= 11)
      cost.gradients.push_back({-1.0, 0.0});
    else
      cost.gradients.push_back({-1.0, (t % 2 == 0) ? 1.0 : -1.0});
  }
  return cost;
}

std::pair<CostSequence, ComparatorSequence> shifting_stochastic(
    std::uint64_t seed, int phases, long phase_len, int d, double variance) {
  if (phases < 1 || phase_len < 1)
    throw std::invalid_argument("shifting_stochastic: need phases >= 1 and phase_len >= 1");
  if (variance < 0.0)
    throw std::invalid_argument("shifting_stochastic: variance must be >= 0");

  const long T = static_cast<long>(phases) * phase_len;
  const double sd = std::sqrt(variance);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  Rng rng(seed);

  CostSequence cost{{}, Domain::l2_ball(1.0, d), 1.0, T};
  cost.gradients.reserve(T);
  ComparatorSequence comp;
  comp.points.reserve(T);

  for (int p = 0; p < phases; ++p) {
    const double mu = (p % 2 == 0) ? 1.0 : -1.0;
    const Vec u = uniform_direction(d, -mu * inv_sqrt_d);
    for (long r = 0; r < phase_len; ++r) {
      Vec g(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) g[i] = mu + sd * rng.gaussian();
      const double n = norm2(g);
      if (n > 0.0) scale_inplace(g, 1.0 / n);
      cost.gradients.push_back(std::move(g));
      comp.points.push_back(u);
    }
  }
  comp.path_length = path_length_of(comp.points);
  return {std::move(cost), std::move(comp)};
}

std::pair<CostSequence, ComparatorSequence> corrupted_phases(
    int phases, long phase_len, int stretch, int burst, int d) {
  if (burst < 1)
    throw std::invalid_argument("corrupted_phases: burst must be >= 1");
  return signed_phases(phases, phase_len, stretch, burst, d);
}

std::pair<CostSequence, ComparatorSequence> worst_case_phases(int phases,
                                                              long phase_len,
                                                              int d) {
  // stretch spans the whole phase, so no opposite-sign rounds exist.
  return signed_phases(phases, phase_len, static_cast<int>(phase_len), 0, d);
}

std::string sequence_csv(const CostSequence& cost,
                         const ComparatorSequence* comp) {
  const int d = cost.domain.dim();
  std::string out = "t";
  char buf[64];
  for (int i = 1; i <= d; ++i) {
    std::snprintf(buf, sizeof(buf), ",g%d", i);
    out += buf;
  }
  if (comp) {
    for (int i = 1; i <= d; ++i) {
      std::snprintf(buf, sizeof(buf), ",u%d", i);
      out += buf;
    }
  }
  out += '\n';
  for (long t = 1; t <= cost.horizon; ++t) {
    std::snprintf(buf, sizeof(buf), "%ld", t);
    out += buf;
    for (double v : cost.gradients[t - 1]) {
      std::snprintf(buf, sizeof(buf), ",%.17g", v);
      out += buf;
    }
    if (comp) {
      for (double v : comp->points[t - 1]) {
        std::snprintf(buf, sizeof(buf), ",%.17g", v);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace soco
