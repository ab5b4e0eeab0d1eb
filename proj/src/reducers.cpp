#include "vrprox/reducers.hpp"

namespace vrprox {

Vector correction(const FiniteSumProblem& problem, const ReducerState& state,
                  Index i) {
  const double n = static_cast<double>(problem.num_components());
  if (const auto* svrp = std::get_if<SvrpAnchorState>(&state))
    return problem.component_gradient(i, svrp->anchor) - svrp->gbar;
  if (const auto* lsvrp = std::get_if<LsvrpAnchorState>(&state))
    return problem.component_gradient(i, lsvrp->anchor) - lsvrp->gbar;
  if (const auto* sapa = std::get_if<SapaTableState>(&state))
    return sapa->phi_grads.row(i).transpose() - sapa->gsum / n;
  return Vector::Zero(problem.dimension());
}

Vector correction_estimator(const FiniteSumProblem& problem,
                            const ReducerState& state, Index i,
                            const Vector& x) {
  return problem.component_gradient(i, x) - correction(problem, state, i);
}

SvrpAnchorState make_svrp_state(const FiniteSumProblem& problem,
                                const Vector& anchor) {
  return {anchor, problem.full_gradient(anchor)};
}

LsvrpAnchorState make_lsvrp_state(const FiniteSumProblem& problem,
                                  const Vector& anchor, double refresh_prob) {
  if (!(refresh_prob > 0.0 && refresh_prob <= 1.0))
    throw std::invalid_argument("make_lsvrp_state: p must lie in (0, 1]");
  return {anchor, problem.full_gradient(anchor), refresh_prob};
}

SapaTableState make_sapa_state(const FiniteSumProblem& problem,
                               const std::vector<Vector>& phi_points) {
  const Index n = problem.num_components();
  if (static_cast<Index>(phi_points.size()) != n)
    throw std::invalid_argument("make_sapa_state: one point per component required");
  SapaTableState state;
  state.phi_grads.resize(n, problem.dimension());
  for (Index i = 0; i < n; ++i)
    state.phi_grads.row(i) = problem.component_gradient(i, phi_points[i]);
  state.gsum = state.phi_grads.colwise().sum().transpose();
  return state;
}

SapaTableState make_sapa_state(const FiniteSumProblem& problem,
                               const Vector& common_point) {
  return make_sapa_state(
      problem,
      std::vector<Vector>(problem.num_components(), common_point));
}

}  // namespace vrprox
