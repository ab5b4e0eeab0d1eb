#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace vrprox {

// Stepsize sequence: either a constant or c / (k+1)^exponent.
struct StepSchedule {
  enum class Kind { Constant, PolynomialDecay };

  Kind kind = Kind::Constant;
  double value = 0.0;     // alpha (Constant) or c (PolynomialDecay)
  double exponent = 0.0;  // PolynomialDecay only

  static StepSchedule constant(double alpha) {
    if (!(alpha > 0)) throw std::invalid_argument("StepSchedule: alpha must be positive");
    return {Kind::Constant, alpha, 0.0};
  }

  // Decay regime exponent in (1/2, 1].
  static StepSchedule polynomial_decay(double c, double exponent) {
    if (!(c > 0)) throw std::invalid_argument("StepSchedule: c must be positive");
    if (!(exponent > 0.5 && exponent <= 1.0))
      throw std::invalid_argument("StepSchedule: exponent must lie in (0.5, 1]");
    return {Kind::PolynomialDecay, c, exponent};
  }

  double at(std::int64_t k) const {
    if (kind == Kind::Constant) return value;
    return value / std::pow(static_cast<double>(k + 1), exponent);
  }
};

}  // namespace vrprox
