#pragma once

#include <stdexcept>

#include "soco/vec.hpp"

namespace soco {

/// Default absolute tolerance on the constraint residual for membership
/// tests. Pruning is sensitive to this boundary test: a point whose residual
/// is within the tolerance counts as inside (no pruning).
inline constexpr double kMembershipTol = 1e-9;

enum class DomainKind { L2Ball, L1Ball, Box };

/// Feasible-set descriptor: l2 ball, l1 ball, or axis-aligned box.
///
/// Every domain is convex, compact, and contained in the ball of radius
/// effective_radius() around the origin.
class Domain {
 public:
  static Domain l2_ball(double radius, int dim);
  static Domain l1_ball(double radius, int dim);
  static Domain box(Vec lower, Vec upper);

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }

  /// Ball radius; calling on a box is a usage error.
  double radius() const;

  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }

  /// Radius of the smallest origin-centered l2 ball containing the set.
  double effective_radius() const;

  /// Signed constraint residual: <= 0 inside, > 0 outside. For the box the
  /// residual is the largest per-coordinate bound violation.
  double residual(const Vec& y) const;

 private:
  Domain() = default;
  DomainKind kind_ = DomainKind::L2Ball;
  int dim_ = 0;
  double radius_ = 0.0;
  Vec lower_, upper_;
};

/// Euclidean projection onto the domain. Points already inside are returned
/// unchanged (bitwise). The l1 case uses the sort-based simplex reduction,
/// O(d log d). The result's constraint residual is within 1e-12 for the
/// radii used by the harness.
Vec project(const Domain& dom, const Vec& y);

/// True iff the constraint residual is <= tol.
bool in_domain(const Domain& dom, const Vec& y, double tol = kMembershipTol);

/// Membership test for the translated normal cone cone'(x) = x + cone(x),
/// realized through the projection identity: z lies in cone'(x) exactly when
/// project(z) == x. No explicit cone representation is built.
/// Requires x inside the domain.
bool in_translated_cone(const Domain& dom, const Vec& x, const Vec& z,
                        double tol);

}  // namespace soco
