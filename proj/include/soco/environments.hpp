#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "soco/domain.hpp"
#include "soco/vec.hpp"

namespace soco {

/// Linear cost sequence f_t(x) = <g_t, x> over a fixed domain.
/// Invariant: ||g_t|| <= G (+ 1e-12 after normalization) for every round.
struct CostSequence {
  std::vector<Vec> gradients;  // g_1 .. g_T
  Domain domain;
  double g_bound = 0.0;  // G
  long horizon = 0;      // T
};

/// Comparator sequence u_1 .. u_T with its path length sum ||u_{t+1} - u_t||.
/// Every point lies in the cost sequence's domain.
struct ComparatorSequence {
  std::vector<Vec> points;
  double path_length = 0.0;
};

double path_length_of(const std::vector<Vec>& points);

/// The k-periodic square wave of +/-1 costs on the interval [-1, 1].
/// Even k: each block is k/2 rounds of +1 then k/2 rounds of -1. Odd k uses
/// the even k-1 wave with a trailing 0 per block. All prefix sums are
/// nonnegative and every window whose length is a multiple of k sums to 0.
/// k = 1 is rejected; the construction needs a wave.
CostSequence square_wave(int k, long T);

/// Budget-limited comparator for the square wave, radius 1. With tau' =
/// floor(tau) flip units, A = ceil(tau'/2) blocks are active: block 1 holds
/// -1 through the first half and +1 after, each later active block resets to
/// -1 at its first step and flips back to +1 at its midpoint. Inactive
/// blocks hold the last value. Flips actually spent: 1 + 2(A-1) <= tau'.
/// path_length is the realized l2 path (each flip moves distance 2).
ComparatorSequence lower_bound_comparator(int k, long T, double tau);

/// Rotating-cost example on the 2-d l1 unit ball: 12 rounds of (-1, 0)
/// followed by a period-four cycle (1,0),(0,1),(-1,0),(0,-1). G = 1.
CostSequence example_i(long T = 101);

/// Oscillating-cost example on the 2-d l2 unit ball: 11 rounds of (-1, 0),
/// then (-1, (-1)^t). G = sqrt(2).
CostSequence example_ii(long T = 101);

/// Stochastic phases on the l2 unit ball: per phase, i.i.d. Gaussian rows
/// with per-coordinate mean +/-1 (alternating, starting positive) and the
/// given variance, each row l2-normalized. The comparator is the equal-mass
/// unit l2 vector opposite the phase mean, switching at phase boundaries.
/// Bit-reproducible for a fixed seed (see Rng).
std::pair<CostSequence, ComparatorSequence> shifting_stochastic(
    std::uint64_t seed, int phases = 15, long phase_len = 4000, int d = 5,
    double variance = 10.0);

/// Deterministic counterpart on the l1 unit ball: within each phase, runs of
/// `stretch` rounds of the dominant sign alternate with `burst` rounds of
/// the opposite sign; a final partial stretch is truncated at the phase
/// boundary. Gradients are sign * ones/sqrt(d). The comparator is the unit
/// l1 vector opposite the phase sign (equal mass +/- 1/d per coordinate).
std::pair<CostSequence, ComparatorSequence> corrupted_phases(
    int phases = 10, long phase_len = 2000, int stretch = 100, int burst = 10,
    int d = 5);

/// Pure-sign phases with no bursts; same domain and normalization
/// conventions as corrupted_phases.
std::pair<CostSequence, ComparatorSequence> worst_case_phases(
    int phases = 5, long phase_len = 300, int d = 5);

/// CSV dump, one row per round: t, g_1..g_d[, u_1..u_d]. Values are printed
/// with round-trip precision so dumps are byte-stable goldens.
std::string sequence_csv(const CostSequence& cost,
                         const ComparatorSequence* comp = nullptr);

}  // namespace soco
