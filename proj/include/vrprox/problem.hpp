#pragma once

#include <stdexcept>

#include "vrprox/types.hpp"

namespace vrprox {

enum class LossKind { SquaredResidual, Logistic };

// Scalar loss phi(t; b) and its derivative in t.
//   SquaredResidual: phi = (t - b)^2 / 2
//   Logistic:        phi = log(1 + exp(-b t)),  b in {-1, +1}
double loss_value(LossKind kind, double t, double b);
double loss_derivative(LossKind kind, double t, double b);
// Uniform bound on phi'' (1 for squared, 1/4 for logistic).
double loss_curvature_bound(LossKind kind);

// F(x) = (1/n) sum_i f_i(x) with f_i(x) = phi(<a_i, x>; b_i), a_i the i-th
// row of a dense design matrix. Immutable after construction; oracles are
// pure and safe to call concurrently.
class FiniteSumProblem {
 public:
  FiniteSumProblem(RowMatrix design, Vector labels, LossKind loss);

  Index num_components() const { return design_.rows(); }
  Index dimension() const { return design_.cols(); }
  LossKind loss() const { return loss_; }
  const RowMatrix& design() const { return design_; }
  const Vector& labels() const { return labels_; }
  const Vector& row_norms_sq() const { return row_norms_sq_; }
  double row_norm_sq(Index i) const { return row_norms_sq_[i]; }

  double component_value(Index i, const Vector& x) const;
  Vector component_gradient(Index i, const Vector& x) const;
  double full_value(const Vector& x) const;
  Vector full_gradient(const Vector& x) const;

  // L such that every component gradient is L-Lipschitz:
  //   max_i ||a_i||^2 * sup phi''.
  double smoothness_constant() const { return smoothness_; }

 private:
  void validate_point(const Vector& x) const;

  RowMatrix design_;
  Vector labels_;
  LossKind loss_;
  Vector row_norms_sq_;
  double smoothness_;
};

}  // namespace vrprox
