#pragma once

#include <variant>
#include <vector>

#include "vrprox/problem.hpp"

namespace vrprox {

// Variance-reduction state attached to the unified step's correction term.
// monostate stands for SPPA/SGD (no correction, e = 0).

struct SvrpAnchorState {
  Vector anchor;  // x~ of the current outer stage
  Vector gbar;    // full gradient at the anchor
};

struct LsvrpAnchorState {
  Vector anchor;        // u^k
  Vector gbar;          // full gradient at u^k
  double refresh_prob;  // Bernoulli parameter p
};

struct SapaTableState {
  RowMatrix phi_grads;  // row i holds the stored gradient of f_i
  Vector gsum;          // running column sum of phi_grads
};

using ReducerState = std::variant<std::monostate, SvrpAnchorState,
                                  LsvrpAnchorState, SapaTableState>;

// Correction e for component i under the given state:
//   SVRP/L-SVRP: grad f_i(anchor) - gbar
//   SAPA:        phi_grads[i] - gsum / n
//   SPPA:        0
// Averaging over i in [n] gives exactly zero.
Vector correction(const FiniteSumProblem& problem, const ReducerState& state,
                  Index i);

// The estimator the variance assumptions constrain:
//   v = grad f_i(x) - e.
Vector correction_estimator(const FiniteSumProblem& problem,
                            const ReducerState& state, Index i,
                            const Vector& x);

// Rebuilds the states the solver loops maintain incrementally; used to
// verify anchored gradients and table sums against a fresh computation.
SvrpAnchorState make_svrp_state(const FiniteSumProblem& problem,
                                const Vector& anchor);
LsvrpAnchorState make_lsvrp_state(const FiniteSumProblem& problem,
                                  const Vector& anchor, double refresh_prob);
// One table row per component, evaluated at the given points.
SapaTableState make_sapa_state(const FiniteSumProblem& problem,
                               const std::vector<Vector>& phi_points);
SapaTableState make_sapa_state(const FiniteSumProblem& problem,
                               const Vector& common_point);

}  // namespace vrprox
