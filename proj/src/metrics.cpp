#include "soco/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace soco {

void RunMetrics::accumulate(long t, const Vec& g, const Vec& x, const Vec& u) {
  if (t != rounds() + 1)
    throw std::invalid_argument("metrics: rounds must arrive in order");

  RoundRecord rec;
  rec.hitting = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) rec.hitting += g[i] * (x[i] - u[i]);
  if (t > 1) {
    rec.switching = dist2(x, prev_x_);
    rec.path = dist2(u, prev_u_);
  }
  prev_x_ = x;
  prev_u_ = u;

  const double sw = switching_total() + rec.switching;
  const double hit = hitting_total() + rec.hitting;
  const double path = path_total() + rec.path;
  switching_cum_.push_back(sw);
  hitting_cum_.push_back(hit);
  path_cum_.push_back(path);
  total_cum_.push_back(hit + sw - path);
  if (keep_per_round_) {
    rec.g = g;
    rec.x = x;
    rec.u = u;
    per_round_.push_back(std::move(rec));
  }
}

std::string RunMetrics::csv() const {
  std::string out =
      "t,switching_cum,hitting_regret_cum,total_regret_cum,path_length_cum\n";
  char buf[160];
  for (long t = 1; t <= rounds(); ++t) {
    const std::size_t i = static_cast<std::size_t>(t - 1);
    std::snprintf(buf, sizeof(buf), "%ld,%.12g,%.12g,%.12g,%.12g\n", t,
                  switching_cum_[i], hitting_cum_[i], total_cum_[i],
                  path_cum_[i]);
    out += buf;
  }
  return out;
}

double regret_envelope(double sigma, int k, double G, double R, double P_T,
                      std::span<const double> deltas) {
  double hit_term = 0.0;
  double switch_term = 0.0;
  for (double d : deltas) {
    hit_term += std::min(G * d, G * G / (2.0 * sigma));
    switch_term += std::min(d, G / sigma);
  }
  return hit_term + (2.0 * R * sigma + k * G) * P_T + sigma * R * R / 2.0 +
         switch_term;
}

double optimal_sigma(double G, double R, long T, double P_T) {
  if (G <= 0.0 || R <= 0.0 || T < 1 || P_T < 0.0)
    throw std::invalid_argument("optimal_sigma: needs positive G, R, T and P_T >= 0");
  return std::sqrt((G * G + 2.0 * G) * static_cast<double>(T) /
                   (4.0 * R * P_T + R * R));
}

long optimal_k(long T, double P_T, double c) {
  if (T < 1) throw std::invalid_argument("optimal_k: T must be >= 1");
  if (P_T < 0.0) throw std::invalid_argument("optimal_k: P_T must be >= 0");
  if (P_T == 0.0) return T;
  const double raw = std::floor(c * std::sqrt(static_cast<double>(T) / P_T));
  return std::clamp(static_cast<long>(raw), 1L, T);
}

double lower_bound_value(int k, double tau) {
  if (k < 2) throw std::invalid_argument("lower_bound_value: k must be >= 2");
  if (tau < 1.0) throw std::invalid_argument("lower_bound_value: tau must be >= 1");
  const double tau_floor = std::floor(tau);
  const double keff = (k % 2 == 0) ? k : k - 1;
  return keff / 4.0 * tau_floor;
}

}  // namespace soco
