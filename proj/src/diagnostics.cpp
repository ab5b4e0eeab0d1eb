#include "vrprox/diagnostics.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

#include "vrprox/prox.hpp"

namespace vrprox {

namespace {

// Relative cutoff separating the numerically zero singular values.
constexpr double kRankCutoff = 1e-10;

struct MethodConstants {
  double A, B, C, rho, D;
};

double sq(double v) { return v * v; }

}  // namespace

OlsGeometry::OlsGeometry(const FiniteSumProblem& problem) {
  if (problem.loss() != LossKind::SquaredResidual)
    throw std::invalid_argument(
        "OlsGeometry: solution-set geometry requires the squared loss");
  Matrix a = problem.design();
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  sigma_max_ = sv.size() > 0 ? sv[0] : 0.0;
  const double cutoff = sigma_max_ * kRankCutoff;
  rank_ = 0;
  while (rank_ < sv.size() && sv[rank_] > cutoff) ++rank_;
  if (rank_ == 0) throw std::invalid_argument("OlsGeometry: zero design matrix");
  sigma_min_nonzero_ = sv[rank_ - 1];
  mu_ = sq(sigma_min_nonzero_) / static_cast<double>(problem.num_components());
  range_basis_ = svd.matrixV().leftCols(rank_);
  // Minimum-norm least-squares solution.
  Vector coeffs = svd.matrixU().leftCols(rank_).transpose() * problem.labels();
  coeffs.array() /= sv.head(rank_).array();
  x_hat_ = range_basis_ * coeffs;
  fstar_ = problem.full_value(x_hat_);
}

double OlsGeometry::distance_sq(const Vector& x) const {
  return (range_basis_.transpose() * (x - x_hat_)).squaredNorm();
}

double OlsGeometry::distance(const Vector& x) const {
  return std::sqrt(distance_sq(x));
}

Vector OlsGeometry::project_argmin(const Vector& x) const {
  return x - range_basis_ * (range_basis_.transpose() * (x - x_hat_));
}

double OlsGeometry::sigma_sq_at(const FiniteSumProblem& problem,
                                const Vector& y) const {
  const Vector proj = project_argmin(y);
  double acc = 0.0;
  for (Index i = 0; i < problem.num_components(); ++i) {
    const double cy = loss_derivative(problem.loss(),
                                      problem.design().row(i).dot(y),
                                      problem.labels()[i]);
    const double cp = loss_derivative(problem.loss(),
                                      problem.design().row(i).dot(proj),
                                      problem.labels()[i]);
    acc += sq(cy - cp) * problem.row_norm_sq(i);
  }
  return acc / static_cast<double>(problem.num_components());
}

double OlsGeometry::sigma_sq_at_argmin(const FiniteSumProblem& problem) const {
  double acc = 0.0;
  for (Index i = 0; i < problem.num_components(); ++i) {
    const double c = loss_derivative(problem.loss(),
                                     problem.design().row(i).dot(x_hat_),
                                     problem.labels()[i]);
    acc += sq(c) * problem.row_norm_sq(i);
  }
  return acc / static_cast<double>(problem.num_components());
}

ReferenceSolution reference_optimum(const FiniteSumProblem& problem,
                                    double tol) {
  if (!(tol > 0)) throw std::invalid_argument("reference_optimum: tol must be positive");

  if (problem.loss() == LossKind::SquaredResidual) {
    OlsGeometry geometry(problem);
    ReferenceSolution ref;
    ref.fstar = geometry.fstar();
    ref.x_ref = geometry.min_norm_solution();
    ref.grad_norm = problem.full_gradient(ref.x_ref).norm();
    ref.method = ReferenceMethod::ClosedFormOls;
    return ref;
  }

  // Full-batch descent with Barzilai-Borwein steps and Armijo backtracking.
  const Index d = problem.dimension();
  Vector x = Vector::Zero(d);
  Vector grad = problem.full_gradient(x);
  double fx = problem.full_value(x);
  const double base_step = 1.0 / problem.smoothness_constant();
  Vector prev_x = x, prev_grad = grad;
  constexpr int kMaxIters = 200000;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    if (grad.norm() <= tol) {
      ReferenceSolution ref;
      ref.fstar = fx;
      ref.x_ref = x;
      ref.grad_norm = grad.norm();
      ref.method = ReferenceMethod::FullBatchSolve;
      return ref;
    }
    double step = base_step;
    if (iter > 0) {
      const Vector s = x - prev_x;
      const Vector y = grad - prev_grad;
      const double sy = s.dot(y);
      if (sy > 0) step = s.squaredNorm() / sy;
    }
    const double gsq = grad.squaredNorm();
    Vector cand;
    double fcand = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      cand = x - step * grad;
      fcand = problem.full_value(cand);
      if (fcand <= fx - 1e-4 * step * gsq) break;
      step *= 0.5;
    }
    prev_x.swap(x);
    prev_grad.swap(grad);
    x = std::move(cand);
    fx = fcand;
    grad = problem.full_gradient(x);
  }
  throw std::runtime_error(
      "reference_optimum: no convergence; instance looks (near-)separable");
}

double distance_to_argmin(const FiniteSumProblem& problem, const Vector& x) {
  if (problem.loss() != LossKind::SquaredResidual)
    throw std::invalid_argument(
        "distance_to_argmin: unsupported for the logistic loss");
  return OlsGeometry(problem).distance(x);
}

namespace {

MethodConstants method_constants(const FiniteSumProblem& problem,
                                 const ReducerState& state) {
  const double L = problem.smoothness_constant();
  const double n = static_cast<double>(problem.num_components());
  MethodConstants mc{2 * L, 2.0, 0.0, 0.0, 0.0};
  if (const auto* svrp = std::get_if<SvrpAnchorState>(&state)) {
    mc.D = -2.0 * svrp->gbar.squaredNorm();
  } else if (const auto* lsvrp = std::get_if<LsvrpAnchorState>(&state)) {
    mc.C = lsvrp->refresh_prob * L;
    mc.rho = lsvrp->refresh_prob;
  } else if (std::holds_alternative<SapaTableState>(state)) {
    mc.C = L / n;
    mc.rho = 1.0 / n;
  }
  return mc;
}

double state_sigma_sq(const FiniteSumProblem& problem,
                      const ReducerState& state, const OlsGeometry& geometry) {
  if (const auto* svrp = std::get_if<SvrpAnchorState>(&state))
    return geometry.sigma_sq_at(problem, svrp->anchor);
  if (const auto* lsvrp = std::get_if<LsvrpAnchorState>(&state))
    return geometry.sigma_sq_at(problem, lsvrp->anchor);
  if (const auto* sapa = std::get_if<SapaTableState>(&state)) {
    // Component gradients agree across the whole solution set, so any
    // minimizer serves as the reference point of the table variance.
    const Vector& xs = geometry.min_norm_solution();
    double acc = 0.0;
    for (Index i = 0; i < problem.num_components(); ++i) {
      acc += (sapa->phi_grads.row(i).transpose() -
              problem.component_gradient(i, xs))
                 .squaredNorm();
    }
    return acc / static_cast<double>(problem.num_components());
  }
  return geometry.sigma_sq_at_argmin(problem);
}

// Enumerated E[sigma_{k+1}^2 | state, x].
double expected_next_sigma_sq(const FiniteSumProblem& problem,
                              const ReducerState& state, const Vector& x,
                              const OlsGeometry& geometry, double sigma_sq) {
  const double n = static_cast<double>(problem.num_components());
  if (const auto* lsvrp = std::get_if<LsvrpAnchorState>(&state)) {
    const double p = lsvrp->refresh_prob;
    return (1.0 - p) * sigma_sq + p * geometry.sigma_sq_at(problem, x);
  }
  if (const auto* sapa = std::get_if<SapaTableState>(&state)) {
    const Vector& xs = geometry.min_norm_solution();
    double acc = 0.0;
    for (Index j = 0; j < problem.num_components(); ++j) {
      const double replaced =
          (problem.component_gradient(j, x) -
           problem.component_gradient(j, xs))
              .squaredNorm();
      const double old = (sapa->phi_grads.row(j).transpose() -
                          problem.component_gradient(j, xs))
                             .squaredNorm();
      acc += (replaced - old) / n;
    }
    return sigma_sq + acc / n;
  }
  // SPPA's sigma is constant; SVRP's anchor does not move within a stage.
  return sigma_sq;
}

}  // namespace

AssumptionReport check_assumptions(const FiniteSumProblem& problem,
                                   const ReducerState& state, const Vector& x,
                                   const OlsGeometry& geometry) {
  const Index n = problem.num_components();
  const double nn = static_cast<double>(n);
  const double gap = problem.full_value(x) - geometry.fstar();
  const MethodConstants mc = method_constants(problem, state);

  AssumptionReport report;
  report.d_value = mc.D;
  report.sigma_sq = state_sigma_sq(problem, state, geometry);

  Vector mean_correction = Vector::Zero(problem.dimension());
  double second_moment = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Vector e = correction(problem, state, i);
    mean_correction += e;
    second_moment += (problem.component_gradient(i, x) - e).squaredNorm();
  }
  report.unbiased_residual = (mean_correction / nn).norm();
  report.estimator_second_moment = second_moment / nn;
  report.abc_margin = 2 * mc.A * gap + mc.B * report.sigma_sq + mc.D -
                      report.estimator_second_moment;

  report.sigma_recursion_expected =
      expected_next_sigma_sq(problem, state, x, geometry, report.sigma_sq);
  const double recursion_bound =
      (1.0 - mc.rho) * report.sigma_sq + 2 * mc.C * gap;
  report.sigma_recursion_margin =
      recursion_bound - report.sigma_recursion_expected;
  return report;
}

double proposition_descent_margin(const FiniteSumProblem& problem,
                                  const ReducerState& state, const Vector& x,
                                  double alpha, double M,
                                  const OlsGeometry& geometry) {
  if (!(alpha > 0) || !(M > 0))
    throw std::invalid_argument("proposition_descent_margin: need alpha, M > 0");
  const Index n = problem.num_components();
  const double nn = static_cast<double>(n);
  const MethodConstants mc = method_constants(problem, state);
  const double sigma_sq = state_sigma_sq(problem, state, geometry);
  const double gap = problem.full_value(x) - geometry.fstar();

  double expected_dist_sq = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Vector e = correction(problem, state, i);
    const Vector next = prox_component(problem, i, alpha, x + alpha * e);
    expected_dist_sq += geometry.distance_sq(next);
  }
  expected_dist_sq /= nn;
  const double expected_next_sigma =
      expected_next_sigma_sq(problem, state, x, geometry, sigma_sq);

  const double lhs = expected_dist_sq + alpha * alpha * M * expected_next_sigma;
  const double rhs = geometry.distance_sq(x) +
                     alpha * alpha * (M + mc.B - mc.rho * M) * sigma_sq -
                     2 * alpha * (1.0 - alpha * (mc.A + M * mc.C)) * gap +
                     alpha * alpha * mc.D;
  return rhs - lhs;
}

double empirical_rate(std::span<const double> gaps, std::int64_t burn_in) {
  const std::int64_t size = static_cast<std::int64_t>(gaps.size());
  if (burn_in < 0) burn_in = size / 10;
  if (size < burn_in + 10)
    throw std::invalid_argument("empirical_rate: series too short after burn-in");
  double mean_t = 0.0, mean_y = 0.0;
  const std::int64_t count = size - burn_in;
  for (std::int64_t t = burn_in; t < size; ++t) {
    if (!(gaps[t] > 0))
      throw std::domain_error("empirical_rate: non-positive gap after burn-in");
    mean_t += static_cast<double>(t);
    mean_y += std::log(gaps[t]);
  }
  mean_t /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);
  double cov = 0.0, var = 0.0;
  for (std::int64_t t = burn_in; t < size; ++t) {
    const double dt = static_cast<double>(t) - mean_t;
    cov += dt * (std::log(gaps[t]) - mean_y);
    var += dt * dt;
  }
  return std::exp(cov / var);
}

std::optional<TraceRecord> first_record_at_accuracy(const RunTrace& trace,
                                                    double eps) {
  if (trace.records.empty())
    throw std::invalid_argument("first_record_at_accuracy: empty trace");
  for (const TraceRecord& rec : trace.records)
    if (rec.fgap <= eps) return rec;
  return std::nullopt;
}

std::optional<std::int64_t> iterations_to_accuracy(const RunTrace& trace,
                                                   double eps) {
  const auto rec = first_record_at_accuracy(trace, eps);
  if (!rec) return std::nullopt;
  return rec->oracle_calls;
}

}  // namespace vrprox
