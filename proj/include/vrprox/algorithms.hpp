#pragma once

#include <span>

#include "vrprox/prox.hpp"
#include "vrprox/rng.hpp"
#include "vrprox/schedule.hpp"
#include "vrprox/trace.hpp"

namespace vrprox {

// Which iterate becomes the next SVRP/SVRG anchor. RandomInner draws one of
// the inner iterates x^0..x^{m-1} uniformly, AverageInner takes their mean.
// LastInner takes x^m; it is not covered by the stage contraction analysis
// and flags the trace as uncertified.
enum class OuterMode { RandomInner, AverageInner, LastInner };

// One step of the unified implicit scheme: prox_{alpha f_i}(x + alpha e).
Vector unified_step(const FiniteSumProblem& problem, const Vector& x,
                    double alpha, Index i, const Vector& e);

// Stochastic proximal point, x^{k+1} = prox_{alpha_k f_{i_k}}(x^k).
RunTrace run_sppa(const FiniteSumProblem& problem, const StepSchedule& schedule,
                  const Vector& x0, std::int64_t num_steps, RunSeed seed,
                  const RunOptions& options = {});

// Two-loop variance reduction: each outer stage anchors a full gradient,
// then runs m unified steps with e = grad f_i(anchor) - grad F(anchor).
// Trace records one row per outer stage (step = stage index); the oracle
// budget is m + n + 1 per stage.
RunTrace run_svrp(const FiniteSumProblem& problem, double alpha,
                  std::int64_t inner_steps, std::int64_t outer_stages,
                  const Vector& x0, RunSeed seed, OuterMode mode,
                  const RunOptions& options = {});

// Loopless variant: after every step the anchor moves to the previous
// iterate with probability p, recomputing the full gradient (n calls).
RunTrace run_lsvrp(const FiniteSumProblem& problem, double alpha,
                   double refresh_prob, const Vector& x0,
                   std::int64_t num_steps, RunSeed seed,
                   const RunOptions& options = {});

// Aggregated table variant: e = phi_grads[i] - mean(phi_grads); the table
// slot of the drawn component is then refreshed with the gradient at the
// previous iterate x^k.
RunTrace run_sapa(const FiniteSumProblem& problem, double alpha,
                  const Vector& x0, std::int64_t num_steps, RunSeed seed,
                  const RunOptions& options = {});

// Explicit-gradient baselines sharing the trace schema and accounting.
RunTrace run_sgd(const FiniteSumProblem& problem, const StepSchedule& schedule,
                 const Vector& x0, std::int64_t num_steps, RunSeed seed,
                 const RunOptions& options = {});
RunTrace run_svrg(const FiniteSumProblem& problem, double alpha,
                  std::int64_t inner_steps, std::int64_t outer_stages,
                  const Vector& x0, RunSeed seed, OuterMode mode,
                  const RunOptions& options = {});
RunTrace run_saga(const FiniteSumProblem& problem, double alpha,
                  const Vector& x0, std::int64_t num_steps, RunSeed seed,
                  const RunOptions& options = {});

// Convex combination sum_t w_t x^t / sum_t w_t of the stored iterates.
Vector weighted_average_iterate(const RunTrace& trace,
                                std::span<const double> weights);

}  // namespace vrprox
