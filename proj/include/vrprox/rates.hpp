#pragma once

#include <cstdint>
#include <string>

namespace vrprox {

// Closed-form contraction factors of the linear-rate theorems, together with
// the parameter constellation that produced them. When the preconditions
// fail, valid is false and reason names the violated condition; q is still
// reported when it is finite.
struct RateConstants {
  double mu = 0.0;
  double L = 0.0;
  double alpha = 0.0;
  double m = 0.0;
  double p = 0.0;
  double n = 0.0;
  double M = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double rho = 0.0;
  double q = 0.0;
  bool valid = false;
  std::string reason;
};

// Stage contraction of the two-loop method:
//   q = 1 / (mu alpha (1 - 2 L alpha) m) + 2 alpha (L - mu) / (1 - 2 L alpha),
// valid iff alpha < 1 / (2 (2L - mu)) and m > 1 / (mu alpha (1 - 2 alpha (2L - mu))).
RateConstants svrp_rate_q(double mu, double L, double alpha, std::int64_t m);

// Per-step contraction of the Lyapunov function dist^2 + alpha^2 M sigma^2:
//   q = max{1 - alpha mu (1 - alpha (A + M C)), 1 + B/M - rho},
// valid iff rho > 0, M > B / rho and alpha < 1 / (A + M C).
RateConstants generic_rate_q(double mu, double alpha, double A, double B,
                             double C, double rho, double M);

// Loopless-anchor instantiation: A = 2L, B = 2, C = pL, rho = p.
RateConstants lsvrp_rate_q(double mu, double L, double alpha, double p,
                           double M);

// Aggregated-table instantiation: A = 2L, B = 2, C = L/n, rho = 1/n.
RateConstants sapa_rate_q(double mu, double L, double alpha, std::int64_t n,
                          double M);

}  // namespace vrprox
