#include "vrprox/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace vrprox {

double scalar_prox_square(double s, double lambda, double b) {
  if (!(lambda > 0)) throw std::invalid_argument("scalar_prox_square: lambda must be positive");
  return (s + lambda * b) / (1.0 + lambda);
}

double scalar_prox_logistic(double s, double lambda, double b, double tol) {
  if (!(lambda > 0)) throw std::invalid_argument("scalar_prox_logistic: lambda must be positive");
  if (!(tol > 0) || tol > 1e-6)
    throw std::invalid_argument("scalar_prox_logistic: tol must lie in (0, 1e-6]");

  const auto residual = [&](double t) {
    return t - s + lambda * loss_derivative(LossKind::Logistic, t, b);
  };

  // r is strictly increasing with r(s - lambda) < 0 < r(s + lambda).
  double lo = s - lambda;
  double hi = s + lambda;
  double t = s;
  for (int iter = 0; iter < 200; ++iter) {
    const double r = residual(t);
    if (std::abs(r) <= tol) return t;
    if (r > 0)
      hi = t;
    else
      lo = t;
    // phi'' = sigma (1 - sigma), sigma the logistic sigmoid of b t.
    const double sig = 1.0 / (1.0 + std::exp(-b * t));
    const double rprime = 1.0 + lambda * sig * (1.0 - sig);
    double next = t - r / rprime;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  throw std::runtime_error(
      "scalar_prox_logistic: no convergence in 200 iterations (kernel bug)");
}

double scalar_prox(LossKind kind, double s, double lambda, double b,
                   double tol) {
  return kind == LossKind::SquaredResidual ? scalar_prox_square(s, lambda, b)
                                           : scalar_prox_logistic(s, lambda, b, tol);
}

void prox_component_inplace(const FiniteSumProblem& problem, Index i,
                            double alpha, Vector& x) {
  if (!(alpha > 0)) throw std::invalid_argument("prox_component: alpha must be positive");
  const double norm_sq = problem.row_norm_sq(i);
  if (norm_sq == 0.0) return;
  const auto row = problem.design().row(i);
  const double s = row.dot(x);
  // Non-finite iterates are left untouched for the divergence checks.
  if (!std::isfinite(s)) return;
  const double lambda = alpha * norm_sq;
  const double p = scalar_prox(problem.loss(), s, lambda, problem.labels()[i]);
  x.noalias() += ((p - s) / norm_sq) * row.transpose();
}

Vector prox_component(const FiniteSumProblem& problem, Index i, double alpha,
                      const Vector& x) {
  if (i < 0 || i >= problem.num_components())
    throw std::out_of_range("prox_component: component index out of range");
  Vector out = x;
  prox_component_inplace(problem, i, alpha, out);
  return out;
}

}  // namespace vrprox
