#pragma once

#include <vector>

#include "soco/learners.hpp"

namespace soco {

/// Descending geometric grid of candidate regularization rates, covering
/// every admissible comparator path length within a factor of 2:
///   B = sqrt((G^2 + 2G) T / R^2),  sigma_i = B / 2^(i-1),
///   N = ceil(log2(8T - 7) / 2) + 1.
struct ExpertGrid {
  std::vector<double> sigmas;  // descending
  double top = 0.0;            // B
  double g_bound = 0.0;        // G
  double radius = 0.0;         // R
  long horizon = 0;            // T

  int size() const { return static_cast<int>(sigmas.size()); }
};

/// Builds the grid above. T < 2 is a usage error.
ExpertGrid build_grid(double G, double R, long T);

/// Laziness slack tied to the rate: max(1, floor(2 R sigma / G)). Tying the
/// two parameters keeps the search one-dimensional.
int k_from_sigma(double sigma, double R, double G);

/// Initial weights w_i = C / (i (i+1)) with C = (N+1)/N, the unique
/// normalization summing to 1.
std::vector<double> init_weights(int N);

/// Default hedge step size 2 / ((2G + 1) D) * sqrt(2 / (5T)) with diameter
/// D = 2R.
double alpha_default(double G, double R, long T);

/// One multiplicative-weights update: w_i <- w_i exp(-alpha loss_i),
/// normalized. The largest exponent is factored out before exponentiation
/// to avoid overflow.
void hedge_update(std::vector<double>& w, const std::vector<double>& losses,
                  double alpha);

/// The SAder meta-learner: a hedge over partially lazy experts indexed by a
/// sigma grid, each expert a constant-sigma KLazyGd with k tied to its
/// sigma. The meta action is the weight-averaged expert action, so it is
/// always feasible. Per round, each expert is scored by the surrogate loss
///
///   loss_i = <g_t, x_t^i - x_t> + ||x_t^i - x_{t-1}^i||
///
/// (movement is zero at t = 1), weights are updated, the gradient is
/// forwarded to every expert, and the new weighted average is returned.
///
/// Expert steps share no state; with `parallel` they run under OpenMP, and
/// the result is identical to the serial path since the weight update is a
/// single-threaded reduction afterward. Serial is the default: per round
/// the experts do little work, so the fork overhead only pays off for
/// expensive domains (see the bench tool).
class Sader final : public Learner {
 public:
  Sader(Domain dom, ExpertGrid grid, double alpha, bool parallel = false);

  /// Grid, default alpha convenience constructor.
  Sader(Domain dom, double G, double R, long T, bool parallel = false);

  const Vec& action() const override { return x_; }
  const Vec& step(const Vec& g) override;
  /// The meta action has no unconstrained form; returns the action itself.
  Vec unconstrained_iterate() const override { return x_; }
  const Domain& domain() const override { return dom_; }
  int phase_k() const override { return 1; }

  const std::vector<double>& weights() const { return w_; }
  const ExpertGrid& grid() const { return grid_; }
  const std::vector<KLazyGd>& experts() const { return experts_; }
  double alpha() const { return alpha_; }

 private:
  void rebuild_action();

  Domain dom_;
  ExpertGrid grid_;
  double alpha_;
  bool parallel_;
  std::vector<KLazyGd> experts_;
  std::vector<double> w_;
  std::vector<Vec> prev_actions_;
  Vec x_;
};

}  // namespace soco
