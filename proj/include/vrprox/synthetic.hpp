#pragma once

#include <cstdint>

#include "vrprox/problem.hpp"

namespace vrprox {

struct GeneratorConfig {
  Index n = 0;
  Index d = 0;
  double cond = 100.0;  // ratio of largest to smallest nonzero singular value
  LossKind loss = LossKind::SquaredResidual;
  double label_noise = 0.1;  // logistic label flip probability
  std::uint64_t seed = 0;
  // Keep all singular values (rescaled to [1, cond]) instead of zeroing the
  // smallest one; used by presets needing an exactly known PL constant.
  bool full_rank = false;
};

// Standard-normal matrix reshaped through its SVD: the smallest singular
// value is set to zero and the rest are affinely rescaled so the largest
// equals cond and the second smallest equals one. Resulting rank is
// min(n, d) - 1. With full_rank, nothing is zeroed and the smallest maps
// to one instead.
RowMatrix generate_conditioned_matrix(Index n, Index d, double cond,
                                      std::uint64_t seed,
                                      bool full_rank = false);

struct GeneratedProblem {
  FiniteSumProblem problem;
  Vector x_true;
  double sigma_max = 0.0;          // realized largest singular value
  double sigma_min_nonzero = 0.0;  // realized smallest nonzero singular value
  Index rank = 0;
};

// b = A x_true exactly (so F_* = 0 and the solution set is computable).
GeneratedProblem generate_ols_instance(const GeneratorConfig& config);

// Planted labels sign(<a_i, x_true>), each flipped independently with
// probability label_noise so the data stays non-separable.
GeneratedProblem generate_logistic_instance(const GeneratorConfig& config);

}  // namespace vrprox
