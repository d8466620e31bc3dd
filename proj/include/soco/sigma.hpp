#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace soco {

/// Regularization schedule sigma_t. Either a fixed constant or the
/// horizon-free sqrt form sigma_t = sqrt(t / c).
///
/// The step that produces x_{t+1} evaluates the schedule at the round index
/// t of the incoming gradient.
struct SigmaSchedule {
  enum class Kind { Constant, SqrtOverC };

  Kind kind = Kind::Constant;
  double value = 1.0;  // sigma for Constant, c for SqrtOverC

  static SigmaSchedule constant(double sigma) {
    if (!(sigma > 0.0))
      throw std::invalid_argument("sigma schedule: constant sigma must be positive");
    return {Kind::Constant, sigma};
  }

  static SigmaSchedule sqrt_over(double c) {
    if (!(c > 0.0))
      throw std::invalid_argument("sigma schedule: sqrt divisor c must be positive");
    return {Kind::SqrtOverC, c};
  }

  bool is_constant() const { return kind == Kind::Constant; }

  double at(long t) const {
    return kind == Kind::Constant ? value
                                  : std::sqrt(static_cast<double>(t) / value);
  }

  std::string describe() const {
    return (kind == Kind::Constant ? "const:" : "sqrt_t_over:") +
           std::to_string(value);
  }
};

}  // namespace soco
