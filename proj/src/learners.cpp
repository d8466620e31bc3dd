#include "soco/learners.hpp"

#include <algorithm>
#include <utility>

namespace soco {
namespace {

Vec feasible_origin(const Domain& dom) {
  Vec x0 = zeros(dom.dim());
  if (!in_domain(dom, x0, kMembershipTol))
    throw std::invalid_argument(
        "learner: initialization x_1 = 0 requires a domain containing the origin");
  return x0;
}

}  // namespace

Gd::Gd(Domain dom, SigmaSchedule sigma)
    : dom_(std::move(dom)), sigma_(sigma) {
  x_ = feasible_origin(dom_);
  y_ = x_;
}

const Vec& Gd::step(const Vec& g) {
  note_gradient(g);
  const double s = sigma_.at(t_);
  Vec y(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) y[i] = x_[i] - g[i] / s;
  x_ = project(dom_, y);
  y_ = std::move(y);
  last_n_ = 0;
  last_sigma_ = s;
  ++t_;
  return x_;
}

LazyGd::LazyGd(Domain dom, SigmaSchedule sigma)
    : dom_(std::move(dom)), sigma_(sigma) {
  x_ = feasible_origin(dom_);
  x1_ = x_;
  sum_ = zeros(dom_.dim());
  y_ = x_;
}

const Vec& LazyGd::step(const Vec& g) {
  note_gradient(g);
  const double s = sigma_.at(t_);
  add_inplace(sum_, g);
  Vec y(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) y[i] = x1_[i] - sum_[i] / s;
  x_ = project(dom_, y);
  y_ = std::move(y);
  last_n_ = static_cast<int>(t_ - 1);
  last_sigma_ = s;
  ++t_;
  return x_;
}

KLazyGd::KLazyGd(Domain dom, SigmaSchedule sigma, int k)
    : dom_(std::move(dom)), sigma_(sigma), k_(k) {
  if (k_ < 1) throw std::invalid_argument("klazy: k must be >= 1");
  x_ = feasible_origin(dom_);
  anchor_ = x_;
  phase_sum_ = zeros(dom_.dim());
  y_ = x_;
}

const Vec& KLazyGd::step(const Vec& g) {
  note_gradient(g);
  const int n = static_cast<int>((t_ - 1) % k_);
  if (n == 0) {
    anchor_ = x_;
    std::fill(phase_sum_.begin(), phase_sum_.end(), 0.0);
  }
  add_inplace(phase_sum_, g);
  const double s = sigma_.at(t_);
  Vec y(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i)
    y[i] = anchor_[i] - phase_sum_[i] / s;
  x_ = project(dom_, y);
  y_ = std::move(y);
  last_n_ = n;
  last_sigma_ = s;
  ++t_;
  return x_;
}

KLazyGdFtrl::KLazyGdFtrl(Domain dom, SigmaSchedule sigma, int k,
                         double membership_tol)
    : dom_(std::move(dom)), k_(k), membership_tol_(membership_tol) {
  if (!sigma.is_constant())
    throw std::invalid_argument(
        "klazy_ftrl: requires a constant sigma schedule; the FTRL form is "
        "not equivalent to the projection form under time-varying sigma");
  if (k_ < 1) throw std::invalid_argument("klazy_ftrl: k must be >= 1");
  sigma_ = sigma.value;
  x_ = feasible_origin(dom_);
  p_sum_ = zeros(dom_.dim());
  y_ = x_;
}

const Vec& KLazyGdFtrl::step(const Vec& g) {
  note_gradient(g);
  const int n = static_cast<int>((t_ - 1) % k_);

  // y_t = -p_{1:t-1}/sigma is the center that produced the current action;
  // it is exactly the cached y_ from the previous step (x_1 at t = 1, where
  // no pruning happens).
  Vec p_t = g;
  if (t_ >= 2 && n == 0 && !in_domain(dom_, y_, membership_tol_)) {
    for (std::size_t i = 0; i < p_t.size(); ++i)
      p_t[i] += -p_sum_[i] - sigma_ * x_[i];
  }
  add_inplace(p_sum_, p_t);

  Vec y(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) y[i] = -p_sum_[i] / sigma_;
  x_ = project(dom_, y);
  y_ = std::move(y);
  last_n_ = n;
  last_sigma_ = sigma_;
  ++t_;
  return x_;
}

}  // namespace soco
