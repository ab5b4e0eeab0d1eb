#include "vrprox/problem.hpp"

#include <cmath>

namespace vrprox {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// 1 / (1 + exp(-z)) without overflow.
double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double loss_value(LossKind kind, double t, double b) {
  switch (kind) {
    case LossKind::SquaredResidual: {
      const double r = t - b;
      return 0.5 * r * r;
    }
    case LossKind::Logistic:
      return softplus(-b * t);
  }
  return 0.0;
}

double loss_derivative(LossKind kind, double t, double b) {
  switch (kind) {
    case LossKind::SquaredResidual:
      return t - b;
    case LossKind::Logistic:
      return -b * sigmoid(-b * t);
  }
  return 0.0;
}

double loss_curvature_bound(LossKind kind) {
  return kind == LossKind::Logistic ? 0.25 : 1.0;
}

FiniteSumProblem::FiniteSumProblem(RowMatrix design, Vector labels,
                                   LossKind loss)
    : design_(std::move(design)), labels_(std::move(labels)), loss_(loss) {
  if (design_.rows() < 1 || design_.cols() < 1)
    throw std::invalid_argument("FiniteSumProblem: empty design matrix");
  if (labels_.size() != design_.rows())
    throw std::invalid_argument("FiniteSumProblem: labels/design size mismatch");
  if (!design_.allFinite() || !labels_.allFinite())
    throw std::invalid_argument("FiniteSumProblem: non-finite data");
  if (loss_ == LossKind::Logistic) {
    for (Index i = 0; i < labels_.size(); ++i) {
      if (labels_[i] != 1.0 && labels_[i] != -1.0)
        throw std::invalid_argument(
            "FiniteSumProblem: logistic labels must be -1 or +1");
    }
  }
  row_norms_sq_ = design_.rowwise().squaredNorm();
  smoothness_ = row_norms_sq_.maxCoeff() * loss_curvature_bound(loss_);
}

void FiniteSumProblem::validate_point(const Vector& x) const {
  if (x.size() != dimension())
    throw std::invalid_argument("FiniteSumProblem: point dimension mismatch");
  if (!x.allFinite())
    throw std::invalid_argument("FiniteSumProblem: non-finite point");
}

double FiniteSumProblem::component_value(Index i, const Vector& x) const {
  if (i < 0 || i >= num_components())
    throw std::out_of_range("FiniteSumProblem: component index out of range");
  validate_point(x);
  return loss_value(loss_, design_.row(i).dot(x), labels_[i]);
}

Vector FiniteSumProblem::component_gradient(Index i, const Vector& x) const {
  if (i < 0 || i >= num_components())
    throw std::out_of_range("FiniteSumProblem: component index out of range");
  validate_point(x);
  const double g = loss_derivative(loss_, design_.row(i).dot(x), labels_[i]);
  return g * design_.row(i).transpose();
}

double FiniteSumProblem::full_value(const Vector& x) const {
  validate_point(x);
  double acc = 0.0;
  for (Index i = 0; i < num_components(); ++i)
    acc += loss_value(loss_, design_.row(i).dot(x), labels_[i]);
  return acc / static_cast<double>(num_components());
}

Vector FiniteSumProblem::full_gradient(const Vector& x) const {
  validate_point(x);
  Vector grad = Vector::Zero(dimension());
  for (Index i = 0; i < num_components(); ++i) {
    const double g = loss_derivative(loss_, design_.row(i).dot(x), labels_[i]);
    grad.noalias() += g * design_.row(i).transpose();
  }
  return grad / static_cast<double>(num_components());
}

}  // namespace vrprox
