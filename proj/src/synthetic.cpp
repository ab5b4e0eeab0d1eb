#include "vrprox/synthetic.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>

#include "vrprox/rng.hpp"

namespace vrprox {

namespace {

// Distinct sub-streams of the generator seed.
enum : std::uint64_t { kMatrixStream = 0, kTruthStream = 1, kLabelStream = 2 };

void validate_config(const GeneratorConfig& config) {
  if (config.n < 2 || config.d < 2)
    throw std::invalid_argument("generator: need n >= 2 and d >= 2");
  if (!(config.cond > 1))
    throw std::invalid_argument("generator: cond must exceed 1");
  if (!(config.label_noise >= 0 && config.label_noise < 1))
    throw std::invalid_argument("generator: label_noise must lie in [0, 1)");
}

Vector random_normal_vector(Index size, CounterRng& rng) {
  Vector v(size);
  for (Index i = 0; i < size; ++i) v[i] = rng.normal();
  return v;
}

struct ConditionedMatrix {
  RowMatrix a;
  double sigma_max;
  double sigma_min_nonzero;
  Index rank;
};

ConditionedMatrix build_matrix(Index n, Index d, double cond,
                               std::uint64_t seed, bool full_rank) {
  if (std::min(n, d) < 2)
    throw std::invalid_argument("generate_conditioned_matrix: min(n, d) must be >= 2");
  if (!(cond > 1))
    throw std::invalid_argument("generate_conditioned_matrix: cond must exceed 1");

  CounterRng rng(seed, kMatrixStream);
  Matrix m(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) m(i, j) = rng.normal();

  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector sv = svd.singularValues();  // sorted descending
  const Index r = sv.size();

  const Index last = full_rank ? r - 1 : r - 2;  // index of the value mapped to 1
  if (!full_rank) sv[r - 1] = 0.0;
  const double hi = sv[0];
  const double lo = sv[last];
  if (hi > lo) {
    const double scale = (cond - 1.0) / (hi - lo);
    for (Index j = 0; j <= last; ++j) sv[j] = 1.0 + scale * (sv[j] - lo);
  } else {
    // Degenerate draw with all retained values equal; map them to cond.
    for (Index j = 0; j <= last; ++j) sv[j] = cond;
  }

  ConditionedMatrix out;
  out.a = svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
  out.sigma_max = sv[0];
  out.sigma_min_nonzero = sv[last];
  out.rank = last + 1;
  return out;
}

}  // namespace

RowMatrix generate_conditioned_matrix(Index n, Index d, double cond,
                                      std::uint64_t seed, bool full_rank) {
  return build_matrix(n, d, cond, seed, full_rank).a;
}

GeneratedProblem generate_ols_instance(const GeneratorConfig& config) {
  validate_config(config);
  ConditionedMatrix cm = build_matrix(config.n, config.d, config.cond,
                                      config.seed, config.full_rank);
  CounterRng rng(config.seed, kTruthStream);
  Vector x_true = random_normal_vector(config.d, rng);
  Vector b = cm.a * x_true;
  return {FiniteSumProblem(std::move(cm.a), std::move(b),
                           LossKind::SquaredResidual),
          std::move(x_true), cm.sigma_max, cm.sigma_min_nonzero, cm.rank};
}

GeneratedProblem generate_logistic_instance(const GeneratorConfig& config) {
  validate_config(config);
  ConditionedMatrix cm = build_matrix(config.n, config.d, config.cond,
                                      config.seed, config.full_rank);
  CounterRng truth_rng(config.seed, kTruthStream);
  Vector x_true = random_normal_vector(config.d, truth_rng);
  CounterRng label_rng(config.seed, kLabelStream);
  Vector b(config.n);
  for (Index i = 0; i < config.n; ++i) {
    const double margin = cm.a.row(i).dot(x_true);
    double label = margin < 0 ? -1.0 : 1.0;
    if (config.label_noise > 0 && label_rng.bernoulli(config.label_noise))
      label = -label;
    b[i] = label;
  }
  return {FiniteSumProblem(std::move(cm.a), std::move(b), LossKind::Logistic),
          std::move(x_true), cm.sigma_max, cm.sigma_min_nonzero, cm.rank};
}

}  // namespace vrprox
