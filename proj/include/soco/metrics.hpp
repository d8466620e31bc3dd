#pragma once

#include <span>
#include <string>
#include <vector>

#include "soco/vec.hpp"

namespace soco {

/// Per-round record: gradient, learner action, comparator action, and the
/// per-round cost pieces.
struct RoundRecord {
  Vec g, x, u;
  double hitting = 0.0;    // <g_t, x_t - u_t>
  double switching = 0.0;  // ||x_t - x_{t-1}||, 0 at t = 1
  double path = 0.0;       // ||u_t - u_{t-1}||, 0 at t = 1
};

/// Cumulative metric series. Hitting costs are linear <g, x> throughout;
/// general convex losses enter only through their gradients.
///
/// Identity maintained at every round:
///   total_regret_cum[t] = hitting_regret_cum[t] + switching_cum[t]
///                         - path_length_cum[t]
/// regret() adds switching to hitting without subtracting the path;
/// total_regret() subtracts it. Both conventions are emitted.
class RunMetrics {
 public:
  /// keep_per_round controls whether full RoundRecords are retained; the
  /// cumulative series are always kept. Dropping records saves three vector
  /// copies per round on long runs.
  explicit RunMetrics(bool keep_per_round = true)
      : keep_per_round_(keep_per_round) {}

  /// Append round t. Rounds must arrive in order starting at 1; an
  /// out-of-order index is a usage error.
  void accumulate(long t, const Vec& g, const Vec& x, const Vec& u);

  long rounds() const { return static_cast<long>(switching_cum_.size()); }
  const std::vector<RoundRecord>& per_round() const { return per_round_; }
  const std::vector<double>& switching_cum() const { return switching_cum_; }
  const std::vector<double>& hitting_regret_cum() const { return hitting_cum_; }
  const std::vector<double>& total_regret_cum() const { return total_cum_; }
  const std::vector<double>& path_length_cum() const { return path_cum_; }

  double switching_total() const { return back_or_zero(switching_cum_); }
  double hitting_total() const { return back_or_zero(hitting_cum_); }
  double path_total() const { return back_or_zero(path_cum_); }

  /// Dynamic regret with switching cost: hitting + switching.
  double regret() const { return hitting_total() + switching_total(); }

  /// Total regret: hitting + switching - comparator path.
  double total_regret() const { return back_or_zero(total_cum_); }

  /// CSV with columns t, switching_cum, hitting_regret_cum,
  /// total_regret_cum, path_length_cum; floats at 12 significant digits.
  std::string csv() const;

 private:
  static double back_or_zero(const std::vector<double>& v) {
    return v.empty() ? 0.0 : v.back();
  }

  bool keep_per_round_ = true;
  Vec prev_x_, prev_u_;
  std::vector<RoundRecord> per_round_;
  std::vector<double> switching_cum_, hitting_cum_, total_cum_, path_cum_;
};

/// Closed-form regret envelope in terms of the realized per-round movements
/// delta_t = ||x_{t+1} - x_t||:
///   sum min(G delta_t, G^2/(2 sigma)) + (2 R sigma + k G) P_T
///   + sigma R^2 / 2 + sum min(delta_t, G / sigma)
/// Upper-bounds the measured regret of any constant-sigma run.
double regret_envelope(double sigma, int k, double G, double R, double P_T,
                      std::span<const double> deltas);

/// The sigma minimizing the worst-case envelope:
/// sqrt((G^2 + 2G) T / (4 R P_T + R^2)).
double optimal_sigma(double G, double R, long T, double P_T);

/// The largest laziness slack compatible with optimal tracking:
/// floor(c sqrt(T / P_T)) clamped to [1, T]. P_T = 0 returns T (a comparator
/// that never moves admits full laziness).
long optimal_k(long T, double P_T, double c = 1.0);

/// Regret floor of the square-wave construction: (k/4) floor(tau) for even
/// k, ((k-1)/4) floor(tau) for odd k. Requires k >= 2, tau >= 1.
double lower_bound_value(int k, double tau);

}  // namespace soco
