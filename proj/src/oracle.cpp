#include "soco/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace soco {
namespace {

struct GridSpec {
  std::array<double, 3> lo{};  // grid origin per axis
  std::array<long, 3> count{}; // points per axis over the bounding range
  double step = 0.0;
};

GridSpec make_grid(const Domain& dom, double step) {
  GridSpec spec;
  spec.step = step;
  for (int a = 0; a < dom.dim(); ++a) {
    double lo, hi;
    if (dom.kind() == DomainKind::Box) {
      lo = dom.lower()[a];
      hi = dom.upper()[a];
    } else {
      lo = -dom.radius();
      hi = dom.radius();
    }
    spec.lo[a] = lo;
    spec.count[a] = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  }
  return spec;
}

// Feasible index range of `axis` given the fixed earlier coordinates.
// Returns false when the slice is empty.
bool axis_index_range(const Domain& dom, const GridSpec& spec, int axis,
                      const double* prefix, long& j_lo, long& j_hi) {
  double lo, hi;
  switch (dom.kind()) {
    case DomainKind::Box:
      lo = dom.lower()[axis];
      hi = dom.upper()[axis];
      break;
    case DomainKind::L2Ball: {
      double rem = dom.radius() * dom.radius();
      for (int a = 0; a < axis; ++a) rem -= prefix[a] * prefix[a];
      if (rem < 0.0) return false;
      const double b = std::sqrt(rem);
      lo = -b;
      hi = b;
      break;
    }
    case DomainKind::L1Ball: {
      double rem = dom.radius();
      for (int a = 0; a < axis; ++a) rem -= std::fabs(prefix[a]);
      if (rem < 0.0) return false;
      lo = -rem;
      hi = rem;
      break;
    }
    default:
      return false;
  }
  j_lo = static_cast<long>(std::ceil((lo - spec.lo[axis]) / spec.step - 1e-12));
  j_hi = static_cast<long>(std::floor((hi - spec.lo[axis]) / spec.step + 1e-12));
  if (j_lo < 0) j_lo = 0;
  if (j_hi >= spec.count[axis]) j_hi = spec.count[axis] - 1;
  return j_lo <= j_hi;
}

struct Best {
  double d2 = std::numeric_limits<double>::infinity();
  std::array<long, 3> idx{-1, -1, -1};

  bool improves(double cand_d2, long j0, long j1, long j2) const {
    if (cand_d2 < d2) return true;
    if (cand_d2 > d2) return false;
    const std::array<long, 3> cand{j0, j1, j2};
    return cand < idx;
  }
};

// Scans the slice under a fixed leading index j0 (axes 1..d-1).
void scan_slice(const Domain& dom, const GridSpec& spec, const Vec& y, int d,
                long j0, Best& best) {
  double coords[3] = {spec.lo[0] + static_cast<double>(j0) * spec.step, 0, 0};
  const double d0 = coords[0] - y[0];
  const double p0 = d0 * d0;
  if (d == 1) {
    if (best.improves(p0, j0, 0, 0)) best = {p0, {j0, 0, 0}};
    return;
  }
  long lo1, hi1;
  if (!axis_index_range(dom, spec, 1, coords, lo1, hi1)) return;
  for (long j1 = lo1; j1 <= hi1; ++j1) {
    coords[1] = spec.lo[1] + static_cast<double>(j1) * spec.step;
    const double d1 = coords[1] - y[1];
    const double p1 = p0 + d1 * d1;
    if (d == 2) {
      if (best.improves(p1, j0, j1, 0)) best = {p1, {j0, j1, 0}};
      continue;
    }
    long lo2, hi2;
    if (!axis_index_range(dom, spec, 2, coords, lo2, hi2)) continue;
    // Innermost axis: plain min-scan, first index wins ties.
    double local = std::numeric_limits<double>::infinity();
    long local_j = -1;
    for (long j2 = lo2; j2 <= hi2; ++j2) {
      const double x2 = spec.lo[2] + static_cast<double>(j2) * spec.step;
      const double d2v = x2 - y[2];
      const double p2 = p1 + d2v * d2v;
      if (p2 < local) {
        local = p2;
        local_j = j2;
      }
    }
    if (local_j >= 0 && best.improves(local, j0, j1, local_j))
      best = {local, {j0, j1, local_j}};
  }
}

Vec point_at(const GridSpec& spec, const Best& best, int d) {
  Vec x(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a)
    x[static_cast<std::size_t>(a)] =
        spec.lo[a] + static_cast<double>(best.idx[a]) * spec.step;
  return x;
}

void check_oracle_args(const Domain& dom, const Vec& y, double step) {
  if (dom.dim() > 3)
    throw std::invalid_argument("brute_force_project: only d <= 3 is searchable");
  if (!(step > 0.0))
    throw std::invalid_argument("brute_force_project: step must be positive");
  if (static_cast<int>(y.size()) != dom.dim())
    throw std::invalid_argument("brute_force_project: dimension mismatch");
}

}  // namespace

Vec brute_force_project_serial(const Domain& dom, const Vec& y, double step) {
  check_oracle_args(dom, y, step);
  const int d = dom.dim();
  const GridSpec spec = make_grid(dom, step);
  long lo0, hi0;
  if (!axis_index_range(dom, spec, 0, nullptr, lo0, hi0))
    throw std::invalid_argument("brute_force_project: empty grid");
  Best best;
  for (long j0 = lo0; j0 <= hi0; ++j0) scan_slice(dom, spec, y, d, j0, best);
  return point_at(spec, best, d);
}

Vec brute_force_project(const Domain& dom, const Vec& y, double step) {
  check_oracle_args(dom, y, step);
  const int d = dom.dim();
  const GridSpec spec = make_grid(dom, step);
  long lo0, hi0;
  if (!axis_index_range(dom, spec, 0, nullptr, lo0, hi0))
    throw std::invalid_argument("brute_force_project: empty grid");

  Best best;
#pragma omp parallel
  {
    Best local;
#pragma omp for schedule(static) nowait
    for (long j0 = lo0; j0 <= hi0; ++j0)
      scan_slice(dom, spec, y, d, j0, local);
#pragma omp critical(soco_bf_merge)
    {
      if (local.idx[0] >= 0 &&
          best.improves(local.d2, local.idx[0], local.idx[1], local.idx[2]))
        best = local;
    }
  }
  return point_at(spec, best, d);
}

double check_equivalence(const Domain& dom, double sigma, int k,
                         const CostSequence& cost, EquivalenceStats* stats) {
  KLazyGd proj(dom, SigmaSchedule::constant(sigma), k);
  KLazyGdFtrl ftrl(dom, SigmaSchedule::constant(sigma), k);

  EquivalenceStats st;
  Vec prev_proj = proj.action();
  Vec prev_ftrl = ftrl.action();
  for (const Vec& g : cost.gradients) {
    const Vec& xp = proj.step(g);
    const Vec& xf = ftrl.step(g);
    st.max_deviation = std::max(st.max_deviation, dist2(xp, xf));
    st.max_center_deviation =
        std::max(st.max_center_deviation,
                 dist2(proj.unconstrained_iterate(), ftrl.unconstrained_iterate()));
    st.max_step_norm = std::max({st.max_step_norm, dist2(xp, prev_proj),
                                 dist2(xf, prev_ftrl)});
    prev_proj = xp;
    prev_ftrl = xf;
  }
  if (stats) *stats = st;
  return st.max_deviation;
}

std::string PropositionReport::to_json() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "{\"rounds_premise_held\":%ld,"
                "\"rounds_conclusion_violated\":%ld,"
                "\"max_violation\":%.12g,"
                "\"precondition_flags\":%ld}",
                rounds_premise_held, rounds_conclusion_violated, max_violation,
                precondition_flags);
  return buf;
}

PropositionReport monitor_staleness(const RunTrace& trace, const Domain& dom,
                                    int k) {
  PropositionReport rep;
  for (const TraceRound& r : trace) {
    if (r.n < 1 || r.n > k - 1) continue;
    if (!in_translated_cone(dom, r.x, r.y_next, 1e-12)) continue;
    ++rep.rounds_premise_held;
    const double move = dist2(r.x_next, r.x);
    if (move > 1e-12) {
      ++rep.rounds_conclusion_violated;
      rep.max_violation = std::max(rep.max_violation, move - 1e-12);
    }
  }
  return rep;
}

PropositionReport monitor_stability(const RunTrace& trace, const Domain& dom,
                                    int k, double G, double alpha) {
  if (dom.kind() != DomainKind::L2Ball)
    throw std::invalid_argument("monitor_stability: requires an l2-ball domain");
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("monitor_stability: alpha must lie in [0, 1]");

  const double R = dom.radius();
  PropositionReport rep;
  for (const TraceRound& r : trace) {
    if (r.n < 1 || r.n > k - 1) continue;
    const double n_t = static_cast<double>(r.n);
    const double premise_rhs =
        R + (alpha * G * n_t + norm2(r.g)) / r.sigma;
    if (norm2(r.y_next) < premise_rhs) continue;
    ++rep.rounds_premise_held;
    const double bound = R * G / (R * r.sigma + alpha * G * n_t);
    const double move = dist2(r.x_next, r.x);
    if (move > bound + 1e-9) {
      ++rep.rounds_conclusion_violated;
      rep.max_violation = std::max(rep.max_violation, move - bound);
    }
  }
  return rep;
}

PropositionReport monitor_variance_bound(const RunTrace& trace,
                                         const Domain& dom, int k, double G) {
  const double R = dom.effective_radius();
  const double sigma_floor = G / (2.0 * std::sqrt(2.0) * R);

  PropositionReport rep;
  Vec phase_sum;  // gradients accumulated in the current phase before round t
  for (const TraceRound& r : trace) {
    if (r.n == 0) phase_sum = zeros(static_cast<int>(r.g.size()));
    if (r.n >= 1 && r.n < k - 1) {
      ++rep.rounds_premise_held;
      if (r.sigma < sigma_floor) ++rep.precondition_flags;
      const double n_t = static_cast<double>(r.n);
      double dev = 0.0;
      for (std::size_t i = 0; i < r.g.size(); ++i) {
        const double diff = r.g[i] - phase_sum[i] / n_t;
        dev += diff * diff;
      }
      dev = std::sqrt(dev);
      const double bound = 5.0 / (4.0 * r.sigma) * dev + 4.0 * R / n_t;
      const double move = dist2(r.x_next, r.x);
      if (move > bound + 1e-9) {
        ++rep.rounds_conclusion_violated;
        rep.max_violation = std::max(rep.max_violation, move - bound);
      }
    }
    add_inplace(phase_sum, r.g);
  }
  return rep;
}

}  // namespace soco
