#include "vrprox/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace vrprox {

RateConstants svrp_rate_q(double mu, double L, double alpha, std::int64_t m) {
  if (!(mu > 0) || !(L >= mu))
    throw std::invalid_argument("svrp_rate_q: need 0 < mu <= L");
  if (!(alpha > 0)) throw std::invalid_argument("svrp_rate_q: alpha must be positive");
  if (m < 1) throw std::invalid_argument("svrp_rate_q: m must be >= 1");

  RateConstants rc;
  rc.mu = mu;
  rc.L = L;
  rc.alpha = alpha;
  rc.m = static_cast<double>(m);
  rc.A = 2 * L;
  rc.B = 2;
  rc.C = 0;
  rc.rho = 0;

  const double alpha_max = 1.0 / (2.0 * (2.0 * L - mu));
  if (!(alpha < alpha_max)) {
    rc.reason = "alpha >= 1/(2(2L - mu))";
    return rc;
  }
  const double m_min = 1.0 / (mu * alpha * (1.0 - 2.0 * alpha * (2.0 * L - mu)));
  rc.q = 1.0 / (mu * alpha * (1.0 - 2.0 * L * alpha) * rc.m) +
         2.0 * alpha * (L - mu) / (1.0 - 2.0 * L * alpha);
  if (!(rc.m > m_min)) {
    rc.reason = "m <= 1/(mu alpha (1 - 2 alpha (2L - mu)))";
    return rc;
  }
  rc.valid = true;
  return rc;
}

RateConstants generic_rate_q(double mu, double alpha, double A, double B,
                             double C, double rho, double M) {
  if (!(mu > 0)) throw std::invalid_argument("generic_rate_q: mu must be positive");
  if (!(alpha > 0)) throw std::invalid_argument("generic_rate_q: alpha must be positive");
  if (A < 0 || B < 0 || C < 0)
    throw std::invalid_argument("generic_rate_q: A, B, C must be non-negative");
  if (!(M > 0)) throw std::invalid_argument("generic_rate_q: M must be positive");

  RateConstants rc;
  rc.mu = mu;
  rc.alpha = alpha;
  rc.A = A;
  rc.B = B;
  rc.C = C;
  rc.rho = rho;
  rc.M = M;
  rc.q = std::max(1.0 - alpha * mu * (1.0 - alpha * (A + M * C)),
                  1.0 + B / M - rho);
  if (!(rho > 0 && rho <= 1)) {
    rc.reason = "rho outside (0, 1]";
    return rc;
  }
  if (!(M > B / rho)) {
    rc.reason = "M <= B/rho";
    return rc;
  }
  if (!(alpha < 1.0 / (A + M * C))) {
    rc.reason = "alpha >= 1/(A + M C)";
    return rc;
  }
  rc.valid = true;
  return rc;
}

RateConstants lsvrp_rate_q(double mu, double L, double alpha, double p,
                           double M) {
  if (!(L > 0)) throw std::invalid_argument("lsvrp_rate_q: L must be positive");
  if (!(p > 0 && p <= 1)) throw std::invalid_argument("lsvrp_rate_q: p must lie in (0, 1]");
  RateConstants rc = generic_rate_q(mu, alpha, 2 * L, 2, p * L, p, M);
  rc.L = L;
  rc.p = p;
  return rc;
}

RateConstants sapa_rate_q(double mu, double L, double alpha, std::int64_t n,
                          double M) {
  if (!(L > 0)) throw std::invalid_argument("sapa_rate_q: L must be positive");
  if (n < 1) throw std::invalid_argument("sapa_rate_q: n must be >= 1");
  const double nn = static_cast<double>(n);
  RateConstants rc = generic_rate_q(mu, alpha, 2 * L, 2, L / nn, 1.0 / nn, M);
  rc.L = L;
  rc.n = nn;
  return rc;
}

}  // namespace vrprox
