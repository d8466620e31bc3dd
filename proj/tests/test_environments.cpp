#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "soco/environments.hpp"

using namespace soco;

namespace {

double g1(const CostSequence& c, long t) { return c.gradients[t - 1][0]; }

}  // namespace

TEST_CASE("square wave k=4") {
  const CostSequence c = square_wave(4, 8);
  const double expected[] = {1, 1, -1, -1, 1, 1, -1, -1};
  for (long t = 1; t <= 8; ++t) CHECK(g1(c, t) == expected[t - 1]);
}

TEST_CASE("square wave k=3 (odd) carries the residual zero") {
  const CostSequence c = square_wave(3, 6);
  const double expected[] = {1, -1, 0, 1, -1, 0};
  for (long t = 1; t <= 6; ++t) CHECK(g1(c, t) == expected[t - 1]);
}

TEST_CASE("square wave prefix sums nonnegative, whole blocks sum to zero") {
  for (int k : {2, 3, 4, 5, 8, 16}) {
    const long T = 10L * k + k / 2;
    const CostSequence c = square_wave(k, T);
    double prefix = 0.0;
    for (long t = 1; t <= T; ++t) {
      prefix += g1(c, t);
      CHECK(prefix >= 0.0);
      if (t % k == 0) CHECK(prefix == 0.0);
    }
    // windows of length i*k sum to zero for arbitrary offsets
    for (long j : {1L, 3L, 7L}) {
      double w = 0.0;
      for (long t = j + 1; t <= j + 2L * k; ++t) w += g1(c, t);
      CHECK(w == 0.0);
    }
  }
}

TEST_CASE("square wave rejects k < 2") {
  CHECK_THROWS_AS(square_wave(1, 10), std::invalid_argument);
}

TEST_CASE("lower bound comparator: single active block") {
  const ComparatorSequence u = lower_bound_comparator(4, 8, 1.0);
  const double expected[] = {-1, -1, 1, 1, 1, 1, 1, 1};
  for (long t = 1; t <= 8; ++t) CHECK(u.points[t - 1][0] == expected[t - 1]);
  CHECK(u.path_length == 2.0);  // one flip of size 2
}

TEST_CASE("lower bound comparator: second active block resets then flips") {
  const ComparatorSequence u = lower_bound_comparator(4, 8, 3.0);
  const double expected[] = {-1, -1, 1, 1, -1, -1, 1, 1};
  for (long t = 1; t <= 8; ++t) CHECK(u.points[t - 1][0] == expected[t - 1]);
  CHECK(u.path_length == 6.0);  // three flips spent (<= tau')
}

TEST_CASE("comparator earns -k per active block") {
  for (int k : {2, 4, 8}) {
    const long T = 8L * k;
    const CostSequence c = square_wave(k, T);
    const ComparatorSequence u = lower_bound_comparator(k, T, 4.0);
    const long active = 2;  // ceil(4/2)
    for (long b = 0; b < T / k; ++b) {
      double block_cost = 0.0;
      for (long t = b * k + 1; t <= (b + 1) * k; ++t)
        block_cost += g1(c, t) * u.points[t - 1][0];
      if (b < active)
        CHECK(block_cost == -static_cast<double>(k));
      else
        CHECK(block_cost == 0.0);
    }
  }
}

TEST_CASE("comparator path length matches its points") {
  const ComparatorSequence u = lower_bound_comparator(8, 128, 7.5);
  CHECK(std::fabs(u.path_length - path_length_of(u.points)) <= 1e-9);
  CHECK_THROWS_AS(lower_bound_comparator(4, 8, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lower_bound_comparator(4, 8, 15.0), std::invalid_argument);
}

TEST_CASE("example_i gradients") {
  const CostSequence c = example_i();
  CHECK(c.horizon == 101);
  CHECK(c.domain.kind() == DomainKind::L1Ball);
  for (long t = 1; t <= 12; ++t) CHECK(c.gradients[t - 1] == Vec{-1.0, 0.0});
  CHECK(c.gradients[12] == Vec{1.0, 0.0});
  CHECK(c.gradients[13] == Vec{0.0, 1.0});
  CHECK(c.gradients[14] == Vec{-1.0, 0.0});
  CHECK(c.gradients[15] == Vec{0.0, -1.0});
  for (const Vec& g : c.gradients) CHECK(norm2(g) == 1.0);
  CHECK(c.g_bound == 1.0);
  CHECK_THROWS_AS(example_i(12), std::invalid_argument);
}

TEST_CASE("example_ii gradients") {
  const CostSequence c = example_ii();
  CHECK(c.domain.kind() == DomainKind::L2Ball);
  for (long t = 1; t <= 11; ++t) CHECK(c.gradients[t - 1] == Vec{-1.0, 0.0});
  CHECK(c.gradients[11] == Vec{-1.0, 1.0});
  CHECK(c.gradients[12] == Vec{-1.0, -1.0});
  for (const Vec& g : c.gradients) CHECK(norm2(g) <= std::sqrt(2.0));
  CHECK(c.g_bound == std::sqrt(2.0));
}

TEST_CASE("shifting stochastic defaults") {
  const auto [cost, comp] = shifting_stochastic(7);
  CHECK(cost.horizon == 60000);
  CHECK(comp.path_length == doctest::Approx(28.0).epsilon(1e-12));
  // phase 1 comparator points opposite the positive mean with equal mass
  const double coord = -1.0 / std::sqrt(5.0);
  for (int i = 0; i < 5; ++i)
    CHECK(comp.points[0][i] == doctest::Approx(coord).epsilon(1e-15));
  for (long t : {0L, 1L, 29999L, 59999L})
    CHECK(norm2(cost.gradients[t]) == doctest::Approx(1.0).epsilon(1e-12));
  // comparator stays feasible
  CHECK(in_domain(cost.domain, comp.points[0], 1e-12));
}

TEST_CASE("shifting stochastic is reproducible per seed") {
  const auto a = shifting_stochastic(13, 2, 50);
  const auto b = shifting_stochastic(13, 2, 50);
  REQUIRE(a.first.gradients.size() == b.first.gradients.size());
  for (std::size_t i = 0; i < a.first.gradients.size(); ++i)
    CHECK(a.first.gradients[i] == b.first.gradients[i]);  // bitwise
  const auto c = shifting_stochastic(14, 2, 50);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.first.gradients.size(); ++i)
    if (a.first.gradients[i] != c.first.gradients[i]) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("corrupted phases layout and path length") {
  const auto [cost, comp] = corrupted_phases();
  CHECK(cost.horizon == 20000);
  CHECK(cost.domain.kind() == DomainKind::L1Ball);
  CHECK(comp.path_length ==
        doctest::Approx(18.0 / std::sqrt(5.0)).epsilon(1e-12));

  const double pos = 1.0 / std::sqrt(5.0);
  for (long t = 1; t <= 100; ++t) CHECK(cost.gradients[t - 1][0] == pos);
  for (long t = 101; t <= 110; ++t) CHECK(cost.gradients[t - 1][0] == -pos);
  for (long t = 111; t <= 210; ++t) CHECK(cost.gradients[t - 1][0] == pos);
  // phase 2 flips the dominant sign
  for (long t = 2001; t <= 2100; ++t) CHECK(cost.gradients[t - 1][0] == -pos);

  // deterministic: identical across calls
  const auto again = corrupted_phases();
  for (long t : {0L, 105L, 1999L, 19999L})
    CHECK(again.first.gradients[t] == cost.gradients[t]);

  // comparator is unit l1, feasible
  CHECK(norm1(comp.points[0]) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("worst case phases are pure") {
  const auto [cost, comp] = worst_case_phases();
  CHECK(cost.horizon == 1500);
  const double pos = 1.0 / std::sqrt(5.0);
  for (long p = 0; p < 5; ++p) {
    const double want = (p % 2 == 0) ? pos : -pos;
    for (long r = 0; r < 300; ++r)
      CHECK(cost.gradients[p * 300 + r][0] == want);
  }
  CHECK(comp.path_length == doctest::Approx(8.0 / std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("sequence csv golden for seed 1") {
  // Frozen bytes: the generator algorithm (mt19937_64 + Box-Muller) is part
  // of the contract, so any drift here is a regression.
  const auto [cost, comp] = shifting_stochastic(1, 1, 2);
  const std::string golden =
      "t,g1,g2,g3,g4,g5,u1,u2,u3,u4,u5\n"
      "1,0.48930602262049872,0.55030710141779826,0.4706094929381579,"
      "0.14489215392527488,0.463977024478404,-0.44721359549995793,"
      "-0.44721359549995793,-0.44721359549995793,-0.44721359549995793,"
      "-0.44721359549995793\n"
      "2,-0.24595846423004855,0.77383109871030331,0.47656211810941163,"
      "-0.21043529689970869,-0.26324019059445203,-0.44721359549995793,"
      "-0.44721359549995793,-0.44721359549995793,-0.44721359549995793,"
      "-0.44721359549995793\n";
  CHECK(sequence_csv(cost, &comp) == golden);
}

TEST_CASE("sequence csv is stable and well-formed") {
  const auto [cost, comp] = shifting_stochastic(3, 1, 4);
  const std::string csv1 = sequence_csv(cost, &comp);
  const std::string csv2 = sequence_csv(cost, &comp);
  CHECK(csv1 == csv2);
  CHECK(csv1.substr(0, 25) == "t,g1,g2,g3,g4,g5,u1,u2,u3");
  // one header plus one row per round
  const long rows = static_cast<long>(std::count(csv1.begin(), csv1.end(), '\n'));
  CHECK(rows == cost.horizon + 1);
}
