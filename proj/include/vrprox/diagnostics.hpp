#pragma once

#include <optional>
#include <span>

#include "vrprox/reducers.hpp"
#include "vrprox/trace.hpp"

namespace vrprox {

enum class ReferenceMethod { ClosedFormOls, FullBatchSolve };

struct ReferenceSolution {
  double fstar = 0.0;
  Vector x_ref;
  double grad_norm = 0.0;
  ReferenceMethod method = ReferenceMethod::ClosedFormOls;
};

// SVD-backed geometry of the squared-loss solution set {x_hat + null(A)}:
// exact minimum, distances and nearest-minimizer projections.
class OlsGeometry {
 public:
  explicit OlsGeometry(const FiniteSumProblem& problem);

  const Vector& min_norm_solution() const { return x_hat_; }
  double fstar() const { return fstar_; }
  // PL / quadratic-growth constant of F: smallest nonzero singular value
  // squared over n.
  double mu() const { return mu_; }
  double sigma_min_nonzero() const { return sigma_min_nonzero_; }
  double sigma_max() const { return sigma_max_; }
  Index rank() const { return rank_; }

  double distance(const Vector& x) const;
  double distance_sq(const Vector& x) const;
  Vector project_argmin(const Vector& x) const;

  // (1/n) sum_i ||grad f_i(y) - grad f_i(proj(y))||^2, the anchored variance
  // used by the sigma recursions.
  double sigma_sq_at(const FiniteSumProblem& problem, const Vector& y) const;
  // (1/n) sum_i ||grad f_i(x*)||^2, constant over the solution set.
  double sigma_sq_at_argmin(const FiniteSumProblem& problem) const;

 private:
  Matrix range_basis_;  // right singular vectors of the nonzero values
  Vector x_hat_;
  double fstar_ = 0.0;
  double mu_ = 0.0;
  double sigma_min_nonzero_ = 0.0;
  double sigma_max_ = 0.0;
  Index rank_ = 0;
};

// OLS: exact minimum-norm solution through the SVD. Logistic: full-batch
// descent (Barzilai-Borwein step with Armijo backtracking) until
// ||grad F|| <= tol; non-convergence within the iteration cap signals a
// (near-)separable instance and throws.
ReferenceSolution reference_optimum(const FiniteSumProblem& problem,
                                    double tol = 1e-10);

// Convenience wrapper building the geometry on the fly; SquaredResidual only.
double distance_to_argmin(const FiniteSumProblem& problem, const Vector& x);

// Exact conditional expectations over the component index (and the Bernoulli
// refresh for the loopless anchor), certifying the variance assumptions at
// one state. All margins are bound minus measured quantity, so nonnegative
// values mean the assumption holds.
struct AssumptionReport {
  double unbiased_residual = 0.0;      // ||mean_i correction||
  double abc_margin = 0.0;             // second-moment bound slack
  double sigma_recursion_margin = 0.0; // sigma^2 recursion slack
  double d_value = 0.0;                // the method's D (<= 0)
  double sigma_sq = 0.0;               // sigma_k^2 at this state
  double estimator_second_moment = 0.0;
  double sigma_recursion_expected = 0.0;  // enumerated E[sigma_{k+1}^2]
};

AssumptionReport check_assumptions(const FiniteSumProblem& problem,
                                   const ReducerState& state, const Vector& x,
                                   const OlsGeometry& geometry);

// Slack of the unified descent inequality at one state, with the conditional
// expectation enumerated exactly: bound side minus
// E[dist^2(x^+)] + alpha^2 M E[sigma^2_+]. Nonnegative means it holds.
double proposition_descent_margin(const FiniteSumProblem& problem,
                                  const ReducerState& state, const Vector& x,
                                  double alpha, double M,
                                  const OlsGeometry& geometry);

// Least-squares slope of log(gap) against the index, exponentiated; the
// first burn_in entries are discarded (default: 10% of the series).
double empirical_rate(std::span<const double> gaps, std::int64_t burn_in = -1);

// Oracle-call count of the first record with fgap <= eps; nullopt when the
// trace never reaches it (cap).
std::optional<std::int64_t> iterations_to_accuracy(const RunTrace& trace,
                                                   double eps);
// Same search returning the full record.
std::optional<TraceRecord> first_record_at_accuracy(const RunTrace& trace,
                                                    double eps);

}  // namespace vrprox
