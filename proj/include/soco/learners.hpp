#pragma once

#include <limits>
#include <memory>
#include <optional>

#include "soco/domain.hpp"
#include "soco/sigma.hpp"
#include "soco/vec.hpp"

namespace soco {

/// One instrumented round: everything the proposition monitors need to
/// replay the step t -> t+1 without touching learner internals.
struct TraceRound {
  long t = 0;       // round index of the gradient
  int n = 0;        // within-phase index n_t
  double sigma = 0; // sigma_t used by the step
  Vec g;            // g_t
  Vec x;            // x_t, the action played
  Vec y_next;       // unconstrained iterate y_{t+1}
  Vec x_next;       // x_{t+1}
};

using RunTrace = std::vector<TraceRound>;

/// Common step interface of the base learners. Instances hold single-thread
/// mutable state; distinct instances are independent.
///
/// All learners initialize at x_1 = 0, which must lie in the domain.
class Learner {
 public:
  virtual ~Learner() = default;

  /// Current action x_t.
  virtual const Vec& action() const = 0;

  /// Consume the gradient observed at the current action, producing x_{t+1}.
  virtual const Vec& step(const Vec& g) = 0;

  /// The unconstrained iterate whose projection gave the current action
  /// (x_1 before any step). Does not mutate state.
  virtual Vec unconstrained_iterate() const = 0;

  virtual const Domain& domain() const = 0;

  /// Round index of the next incoming gradient (1 before the first step).
  long round() const { return t_; }

  /// Phase length k: 1 for greedy, max() for the fully lazy learner.
  virtual int phase_k() const = 0;

  /// n_t of the last processed round; -1 before the first step.
  int last_phase_index() const { return last_n_; }

  /// sigma_t used by the last step; NaN before the first step.
  double last_sigma() const { return last_sigma_; }

  /// Largest gradient norm seen so far.
  double empirical_g_max() const { return g_max_; }

  /// Optional known bound on gradient norms, asserted in debug builds.
  void set_gradient_bound(double g_bound) { g_bound_ = g_bound; }

 protected:
  void note_gradient(const Vec& g) {
    assert(all_finite(g));
    const double n = norm2(g);
    if (g_bound_) assert(n <= *g_bound_ + 1e-12);
    if (n > g_max_) g_max_ = n;
  }

  long t_ = 1;
  int last_n_ = -1;
  double last_sigma_ = std::numeric_limits<double>::quiet_NaN();

 private:
  double g_max_ = 0.0;
  std::optional<double> g_bound_;
};

/// Greedy projected gradient descent: x_{t+1} = project(x_t - g_t / sigma_t).
class Gd final : public Learner {
 public:
  Gd(Domain dom, SigmaSchedule sigma);

  const Vec& action() const override { return x_; }
  const Vec& step(const Vec& g) override;
  Vec unconstrained_iterate() const override { return y_; }
  const Domain& domain() const override { return dom_; }
  int phase_k() const override { return 1; }

 private:
  Domain dom_;
  SigmaSchedule sigma_;
  Vec x_, y_;
};

/// Fully lazy descent (dual averaging): x_{t+1} = project(-g_{1:t} / sigma_t).
class LazyGd final : public Learner {
 public:
  LazyGd(Domain dom, SigmaSchedule sigma);

  const Vec& action() const override { return x_; }
  const Vec& step(const Vec& g) override;
  Vec unconstrained_iterate() const override { return y_; }
  const Domain& domain() const override { return dom_; }
  int phase_k() const override { return std::numeric_limits<int>::max(); }

 private:
  Domain dom_;
  SigmaSchedule sigma_;
  Vec x_, x1_, sum_, y_;
};

/// Partially lazy descent, projection form. Gradients are accumulated within
/// phases of length k; at each phase start (n_t = 0) the anchor is reset to
/// the current iterate and the within-phase sum cleared:
///
///   n_t = (t - 1) mod k
///   x_{t+1} = project(x_{t-n_t} - g_{t-n_t:t} / sigma_t)
///
/// k = 1 recovers the greedy update, k = T the fully lazy one.
/// This form accepts any sigma schedule and is the ground-truth
/// implementation; the FTRL form below is restricted to constant sigma.
class KLazyGd final : public Learner {
 public:
  KLazyGd(Domain dom, SigmaSchedule sigma, int k);

  const Vec& action() const override { return x_; }
  const Vec& step(const Vec& g) override;
  Vec unconstrained_iterate() const override { return y_; }
  const Domain& domain() const override { return dom_; }
  int phase_k() const override { return k_; }

 private:
  Domain dom_;
  SigmaSchedule sigma_;
  int k_;
  Vec x_, anchor_, phase_sum_, y_;
};

/// Partially lazy descent as FTRL with pruning. The state vector p_{1:t}
/// aggregates the observed gradients plus a normal-cone correction g^I_t
/// that discards the accumulated state at phase starts whenever the
/// unconstrained center has left the domain:
///
///   y_t = -p_{1:t-1} / sigma
///   g^I_t = -p_{1:t-1} - sigma * x_t   if y_t outside the domain and n_t = 0
///         = 0                          otherwise
///   p_t = g_t + g^I_t,  x_{t+1} = project(-p_{1:t} / sigma)
///
/// A point whose constraint residual is within the membership tolerance
/// counts as inside, so exact boundary returns trigger no pruning.
/// Requires a constant sigma; the equivalence with the projection form does
/// not hold for time-varying schedules.
class KLazyGdFtrl final : public Learner {
 public:
  KLazyGdFtrl(Domain dom, SigmaSchedule sigma, int k,
              double membership_tol = kMembershipTol);

  const Vec& action() const override { return x_; }
  const Vec& step(const Vec& g) override;
  Vec unconstrained_iterate() const override { return y_; }
  const Domain& domain() const override { return dom_; }
  int phase_k() const override { return k_; }

  /// Accumulated state vector p_{1:t-1}.
  const Vec& state_vector() const { return p_sum_; }

 private:
  Domain dom_;
  double sigma_;
  int k_;
  double membership_tol_;
  Vec x_, p_sum_, y_;
};

}  // namespace soco
