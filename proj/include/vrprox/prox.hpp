#pragma once

#include "vrprox/problem.hpp"

namespace vrprox {

// One-dimensional proximity operators of the scalar losses. lambda is the
// effective stepsize alpha * ||a_i||^2 produced by the rank-one composition
// rule, s the scalar point the prox is taken at.

// argmin_t (t-b)^2/2 + (t-s)^2/(2 lambda)  =  (s + lambda b) / (1 + lambda)
double scalar_prox_square(double s, double lambda, double b);

// Root of r(t) = t - s + lambda * phi'(t; b) for the logistic loss, found by
// safeguarded Newton with a bisection fallback on the bracket
// [s - lambda, s + lambda] (valid since |phi'| < 1). The result satisfies
// |t - s + lambda * phi'(t; b)| <= tol.
double scalar_prox_logistic(double s, double lambda, double b,
                            double tol = 1e-12);

double scalar_prox(LossKind kind, double s, double lambda, double b,
                   double tol = 1e-12);

// prox_{alpha f_i}(x) via the composition rule: with s = <a_i, x> and
// lambda = alpha ||a_i||^2,
//   prox(x) = x + a_i (p - s) / ||a_i||^2,  p = scalar prox at s.
// A zero row makes f_i constant and the prox the identity.
Vector prox_component(const FiniteSumProblem& problem, Index i, double alpha,
                      const Vector& x);

// In-place variant used by the solver loops.
void prox_component_inplace(const FiniteSumProblem& problem, Index i,
                            double alpha, Vector& x);

}  // namespace vrprox
