#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "soco/oracle.hpp"
#include "soco/rng.hpp"
#include "soco/run.hpp"

using namespace soco;

namespace {

CostSequence random_cost(std::uint64_t seed, long T, const Domain& dom) {
  Rng rng(seed);
  CostSequence cost{{}, dom, 1.0, T};
  cost.gradients.reserve(T);
  for (long t = 0; t < T; ++t) {
    Vec g(static_cast<std::size_t>(dom.dim()));
    for (double& v : g) v = rng.gaussian();
    scale_inplace(g, 1.0 / norm2(g));
    cost.gradients.push_back(std::move(g));
  }
  return cost;
}

RunOutput traced_run(const CostSequence& cost, Learner& learner) {
  std::vector<Vec> zeros_cmp(cost.gradients.size(), zeros(cost.domain.dim()));
  return run_loop(learner, cost, zeros_cmp, /*record_trace=*/true);
}

}  // namespace

TEST_CASE("brute force matches the radial formula on axis points") {
  const Domain ball = Domain::l2_ball(1.0, 2);
  CHECK(dist2(brute_force_project(ball, {2.0, 0.0}, 1e-3), {1.0, 0.0}) <= 1e-3);
  CHECK(dist2(brute_force_project(ball, {0.0, -3.7}, 1e-3), {0.0, -1.0}) <= 1e-3);
}

TEST_CASE("brute force returns interior points nearly unchanged") {
  const Domain box = Domain::box({-1.0, -1.0}, {1.0, 1.0});
  const Vec y{0.123, -0.456};
  CHECK(dist2(brute_force_project(box, y, 1e-3), y) <= 1e-3);
}

TEST_CASE("brute force l1 agreement at d=2") {
  const Domain ball = Domain::l1_ball(1.0, 2);
  const Vec y{0.9, -0.3};
  CHECK(dist2(brute_force_project(ball, y, 1e-3), project(ball, y)) <= 2e-3);
}

TEST_CASE("brute force rejects unsupported inputs") {
  CHECK_THROWS_AS(brute_force_project(Domain::l2_ball(1.0, 4), zeros(4), 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_project(Domain::l2_ball(1.0, 2), zeros(2), 0.0),
                  std::invalid_argument);
}

TEST_CASE("parallel scan equals the serial reference") {
  Rng rng(77);
  const Domain domains[] = {Domain::l2_ball(1.0, 2), Domain::l1_ball(1.0, 2),
                            Domain::box({-1.0, -0.5}, {0.75, 1.0})};
  for (const Domain& dom : domains) {
    for (int i = 0; i < 6; ++i) {
      Vec y{3.0 * (2.0 * rng.uniform01() - 1.0),
            3.0 * (2.0 * rng.uniform01() - 1.0)};
      const Vec a = brute_force_project(dom, y, 2e-3);
      const Vec b = brute_force_project_serial(dom, y, 2e-3);
      CHECK(a == b);  // identical grid point, bitwise
    }
  }
  // d = 3 spot check
  const Domain b3 = Domain::l1_ball(1.0, 3);
  CHECK(brute_force_project(b3, {0.4, -1.2, 0.1}, 2e-2) ==
        brute_force_project_serial(b3, {0.4, -1.2, 0.1}, 2e-2));
}

TEST_CASE("equivalence: k=1 collapses both forms to gd") {
  const CostSequence cost = random_cost(1, 400, Domain::l2_ball(1.0, 3));
  CHECK(check_equivalence(cost.domain, 2.0, 1, cost) <= 1e-12);
}

TEST_CASE("equivalence: square wave stays on the integer lattice") {
  const CostSequence cost = square_wave(4, 256);
  CHECK(check_equivalence(cost.domain, 1.0, 4, cost) <= 1e-12);
}

TEST_CASE("equivalence: random sequences across domains and slacks") {
  const Domain domains[] = {Domain::l2_ball(1.0, 3), Domain::l1_ball(1.0, 3),
                            Domain::box({-1, -1, -1}, {1, 1, 1})};
  for (const Domain& dom : domains) {
    const CostSequence cost = random_cost(42, 1000, dom);
    for (int k : {2, 7, 31, 1000}) {
      EquivalenceStats st;
      CHECK(check_equivalence(dom, 5.0, k, cost, &st) <= 1e-9);
      CHECK(st.max_center_deviation <= 1e-9);
      CHECK(st.max_step_norm <= 1.0 / 5.0 + 1e-12);
    }
  }
}

TEST_CASE("staleness monitor: lazy stalls on the rotating example") {
  const CostSequence cost = example_i();
  LazyGd lazy(cost.domain, SigmaSchedule::sqrt_over(1.0));
  const RunOutput out = traced_run(cost, lazy);
  const auto rep = monitor_staleness(out.trace, cost.domain, lazy.phase_k());
  CHECK(rep.rounds_premise_held > 50);  // the post-boundary rounds
  CHECK(rep.rounds_conclusion_violated == 0);
}

TEST_CASE("staleness monitor: vacuous for gd") {
  const CostSequence cost = example_i();
  Gd gd(cost.domain, SigmaSchedule::sqrt_over(1.0));
  const RunOutput out = traced_run(cost, gd);
  const auto rep = monitor_staleness(out.trace, cost.domain, gd.phase_k());
  CHECK(rep.rounds_premise_held == 0);
  CHECK(rep.rounds_conclusion_violated == 0);
}

TEST_CASE("staleness monitor: random l1 run with a long phase") {
  const CostSequence cost = random_cost(3, 2000, Domain::l1_ball(1.0, 3));
  KLazyGd l(cost.domain, SigmaSchedule::constant(5.0), 50);
  const RunOutput out = traced_run(cost, l);
  const auto rep = monitor_staleness(out.trace, cost.domain, 50);
  CHECK(rep.rounds_conclusion_violated == 0);
}

TEST_CASE("stability monitor holds on the oscillating example") {
  const CostSequence cost = example_ii();
  LazyGd lazy(cost.domain, SigmaSchedule::sqrt_over(1.0));
  const RunOutput out = traced_run(cost, lazy);
  for (double alpha : {0.0, 0.5, 1.0}) {
    const auto rep = monitor_stability(out.trace, cost.domain, lazy.phase_k(),
                                       cost.g_bound, alpha);
    CHECK(rep.rounds_conclusion_violated == 0);
  }
  // the correlated horizontal drift keeps ||y|| large enough that the
  // premise fires for small alpha
  const auto rep0 =
      monitor_stability(out.trace, cost.domain, lazy.phase_k(), cost.g_bound, 0.0);
  CHECK(rep0.rounds_premise_held > 0);
}

TEST_CASE("stability monitor rejects non-l2 domains") {
  const CostSequence cost = example_i();
  KLazyGd l(cost.domain, SigmaSchedule::sqrt_over(1.0), 5);
  const RunOutput out = traced_run(cost, l);
  CHECK_THROWS_AS(monitor_stability(out.trace, cost.domain, 5, 1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("variance monitor across phase structures") {
  {
    const auto [cost, comp] = corrupted_phases(4, 400);
    KLazyGd l(cost.domain, SigmaSchedule::sqrt_over(16.0), 500);
    RunOutput out = run_loop(l, cost, comp.points, true);
    const auto rep = monitor_variance_bound(out.trace, cost.domain, 500, cost.g_bound);
    CHECK(rep.rounds_premise_held > 0);
    CHECK(rep.rounds_conclusion_violated == 0);
  }
  {
    // alternating 1-d gradients make the deviation term dominate
    CostSequence cost{{}, Domain::box({-1.0}, {1.0}), 1.0, 600};
    for (long t = 1; t <= 600; ++t)
      cost.gradients.push_back({t % 2 == 0 ? 1.0 : -1.0});
    KLazyGd l(cost.domain, SigmaSchedule::constant(2.0), 30);
    const RunOutput out = traced_run(cost, l);
    const auto rep = monitor_variance_bound(out.trace, cost.domain, 30, 1.0);
    CHECK(rep.rounds_premise_held > 0);
    CHECK(rep.rounds_conclusion_violated == 0);
  }
}

TEST_CASE("monitors observe without perturbing the run") {
  const CostSequence cost = random_cost(5, 500, Domain::l2_ball(1.0, 3));
  KLazyGd a(cost.domain, SigmaSchedule::constant(3.0), 25);
  KLazyGd b(cost.domain, SigmaSchedule::constant(3.0), 25);
  std::vector<Vec> cmp(cost.gradients.size(), zeros(3));
  const RunOutput bare = run_loop(a, cost, cmp, /*record_trace=*/false);
  const RunOutput traced = run_loop(b, cost, cmp, /*record_trace=*/true);
  CHECK(bare.final_action == traced.final_action);  // bitwise
  CHECK(bare.metrics.csv() == traced.metrics.csv());
}

TEST_CASE("monitor reports are deterministic and serialize to json") {
  const CostSequence cost = example_i();
  LazyGd l1(cost.domain, SigmaSchedule::sqrt_over(1.0));
  LazyGd l2(cost.domain, SigmaSchedule::sqrt_over(1.0));
  const auto r1 = monitor_staleness(traced_run(cost, l1).trace, cost.domain,
                                    l1.phase_k());
  const auto r2 = monitor_staleness(traced_run(cost, l2).trace, cost.domain,
                                    l2.phase_k());
  CHECK(r1.to_json() == r2.to_json());
  CHECK(r1.to_json().find("\"rounds_conclusion_violated\":0") != std::string::npos);
}
