#include "soco/domain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace soco {
namespace {

// Relative slack under which a point counts as already inside during
// projection. Keeps project idempotent: re-projecting a freshly projected
// point returns it unchanged instead of rescaling by 1 +/- ulp.
constexpr double kInsideSlack = 1e-14;

void check_dim(const Domain& dom, const Vec& y) {
  if (static_cast<int>(y.size()) != dom.dim())
    throw std::invalid_argument("domain: dimension mismatch");
}

Vec project_l1(const Vec& y, double radius) {
  const std::size_t d = y.size();
  Vec mags(d);
  for (std::size_t i = 0; i < d; ++i) mags[i] = std::fabs(y[i]);

  Vec sorted = mags;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  // Largest prefix whose water level keeps every kept coordinate positive.
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    cum += sorted[j];
    const double level = (cum - radius) / static_cast<double>(j + 1);
    if (sorted[j] > level)
      theta = level;
    else
      break;
  }

  Vec x(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double m = mags[i] - theta;
    x[i] = m > 0.0 ? std::copysign(m, y[i]) : 0.0;
  }
  return x;
}

}  // namespace

Domain Domain::l2_ball(double radius, int dim) {
  if (radius <= 0.0) throw std::invalid_argument("l2_ball: radius must be positive");
  if (dim <= 0) throw std::invalid_argument("l2_ball: dim must be positive");
  Domain d;
  d.kind_ = DomainKind::L2Ball;
  d.dim_ = dim;
  d.radius_ = radius;
  return d;
}

Domain Domain::l1_ball(double radius, int dim) {
  if (radius <= 0.0) throw std::invalid_argument("l1_ball: radius must be positive");
  if (dim <= 0) throw std::invalid_argument("l1_ball: dim must be positive");
  Domain d;
  d.kind_ = DomainKind::L1Ball;
  d.dim_ = dim;
  d.radius_ = radius;
  return d;
}

Domain Domain::box(Vec lower, Vec upper) {
  if (lower.empty() || lower.size() != upper.size())
    throw std::invalid_argument("box: lower/upper must be nonempty and equal length");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i]))
      throw std::invalid_argument("box: requires lower <= upper componentwise");
  }
  Domain d;
  d.kind_ = DomainKind::Box;
  d.dim_ = static_cast<int>(lower.size());
  d.lower_ = std::move(lower);
  d.upper_ = std::move(upper);
  return d;
}

double Domain::radius() const {
  if (kind_ == DomainKind::Box)
    throw std::invalid_argument("radius: box domains have per-coordinate bounds");
  return radius_;
}

double Domain::effective_radius() const {
  switch (kind_) {
    case DomainKind::L2Ball:
    case DomainKind::L1Ball:
      // for the l1 ball, ||x||_2 <= ||x||_1 <= r
      return radius_;
    case DomainKind::Box: {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        const double m = std::max(std::fabs(lower_[i]), std::fabs(upper_[i]));
        s += m * m;
      }
      return std::sqrt(s);
    }
  }
  return 0.0;
}

double Domain::residual(const Vec& y) const {
  check_dim(*this, y);
  switch (kind_) {
    case DomainKind::L2Ball:
      return norm2(y) - radius_;
    case DomainKind::L1Ball:
      return norm1(y) - radius_;
    case DomainKind::Box: {
      double r = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < dim_; ++i) {
        r = std::max(r, lower_[i] - y[i]);
        r = std::max(r, y[i] - upper_[i]);
      }
      return r;
    }
  }
  return 0.0;
}

Vec project(const Domain& dom, const Vec& y) {
  check_dim(dom, y);
  if (!all_finite(y)) throw std::invalid_argument("project: input must be finite");

  switch (dom.kind()) {
    case DomainKind::L2Ball: {
      const double r = dom.radius();
      const double n = norm2(y);
      if (n <= r * (1.0 + kInsideSlack)) return y;
      Vec x(y.size());
      const double s = r / n;
      for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] * s;
      return x;
    }
    case DomainKind::L1Ball: {
      const double r = dom.radius();
      if (norm1(y) <= r * (1.0 + kInsideSlack)) return y;
      return project_l1(y, r);
    }
    case DomainKind::Box: {
      Vec x(y.size());
      for (std::size_t i = 0; i < y.size(); ++i)
        x[i] = std::min(dom.upper()[i], std::max(dom.lower()[i], y[i]));
      return x;
    }
  }
  return y;
}

bool in_domain(const Domain& dom, const Vec& y, double tol) {
  if (tol < 0.0) throw std::invalid_argument("in_domain: tol must be >= 0");
  return dom.residual(y) <= tol;
}

bool in_translated_cone(const Domain& dom, const Vec& x, const Vec& z,
                        double tol) {
  check_dim(dom, x);
  check_dim(dom, z);
  if (!in_domain(dom, x, kMembershipTol))
    throw std::invalid_argument("in_translated_cone: x must lie in the domain");
  return dist2(project(dom, z), x) <= tol;
}

}  // namespace soco
