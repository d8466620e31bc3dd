#pragma once

#include <string>

#include "soco/environments.hpp"
#include "soco/learners.hpp"

namespace soco {

/// Dense grid search over the domain at resolution `step`, returning the
/// feasible grid point closest to y. Independent of the closed-form
/// projections; used as their oracle. Restricted to d <= 3 (combinatorial
/// blowup beyond that). Ties break toward the lexicographically smallest
/// grid index, so the result is order-independent.
///
/// brute_force_project scans the outermost axis under OpenMP;
/// brute_force_project_serial is the single-thread reference. Both return
/// identical points.
Vec brute_force_project(const Domain& dom, const Vec& y, double step);
Vec brute_force_project_serial(const Domain& dom, const Vec& y, double step);

struct EquivalenceStats {
  double max_deviation = 0.0;       // max_t ||x_t^proj - x_t^ftrl||
  double max_center_deviation = 0.0;  // same for the unconstrained iterates
  double max_step_norm = 0.0;       // max per-round movement over both forms
};

/// Runs the projection and FTRL-pruning forms side by side on the same
/// gradient sequence (constant sigma) and reports the largest iterate gap.
/// The passing threshold used by the test suites is 1e-9.
double check_equivalence(const Domain& dom, double sigma, int k,
                         const CostSequence& cost,
                         EquivalenceStats* stats = nullptr);

/// Outcome of replaying one proposition against an instrumented run.
/// A passing run has rounds_conclusion_violated == 0.
struct PropositionReport {
  long rounds_premise_held = 0;
  long rounds_conclusion_violated = 0;
  double max_violation = 0.0;
  /// Rounds where a proof-side precondition did not hold (logged, never
  /// enforced; the statement itself does not list it).
  long precondition_flags = 0;

  std::string to_json() const;
};

/// Staleness: within a phase (1 <= n_t <= k-1), if the unconstrained iterate
/// y_{t+1} stayed in the translated normal cone at x_t, the step must not
/// have moved: ||x_{t+1} - x_t|| <= 1e-12.
PropositionReport monitor_staleness(const RunTrace& trace, const Domain& dom,
                                    int k);

/// Stability on l2 balls: within a phase, whenever
///   ||y_{t+1}|| >= R + (alpha G n_t + ||g_t||) / sigma_t
/// for the given alpha in [0, 1], the movement obeys
///   ||x_{t+1} - x_t|| <= R G / (R sigma_t + alpha G n_t) + 1e-9.
/// Non-l2 domains are a usage error.
PropositionReport monitor_stability(const RunTrace& trace, const Domain& dom,
                                    int k, double G, double alpha);

/// Variance-based switching: strictly inside a phase (1 <= n_t < k-1), with
/// mu_t the running mean of the phase's earlier gradients,
///   ||x_{t+1} - x_t|| <= 5/(4 sigma_t) ||g_t - mu_t|| + 4R / n_t + 1e-9.
/// Rounds where sigma_t < G / (2 sqrt(2) R) are counted in
/// precondition_flags but still checked.
PropositionReport monitor_variance_bound(const RunTrace& trace,
                                         const Domain& dom, int k, double G);

}  // namespace soco
