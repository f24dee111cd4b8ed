#include "dkpp/certificate.hpp"

#include <cmath>

namespace dkpp {

double contraction_constant(double q, double l, double a, double b, double T) {
  double s = a + std::abs(b) + 1.0;
  double inner = T * T * std::exp(2.0 * a * T) * (1.0 + 2.0 * s * s) + 1.0;
  return q * l * std::sqrt(inner);
}

ContractionCertificate certify(const ProblemSpec& problem, const TimeWindow& window) {
  ContractionCertificate cert;
  cert.q = problem.kernel.q;
  cert.lipschitz = problem.nonlinearity.lipschitz;
  cert.growth_k = problem.nonlinearity.growth_k;
  cert.a = problem.a;
  cert.b = problem.b;
  cert.horizon = window.horizon;
  cert.constant =
      contraction_constant(cert.q, cert.lipschitz, cert.a, cert.b, cert.horizon);
  cert.admissible = cert.constant < 1.0;
  cert.margin = 1.0 - cert.constant;
  return cert;
}

double max_horizon(double q, double l, double a, double b) {
  if (!(q > 0.0) || !(l > 0.0))
    throw ParameterError("max_horizon: Q and l must be positive");
  if (q * l >= 1.0) return 0.0;

  double lo = 0.0, hi = 1.0;
  while (contraction_constant(q, l, a, b, hi) < 1.0) {
    hi *= 2.0;
    if (hi > 1e12) return hi;  // effectively unbounded at this precision
  }
  while (hi - lo > 2e-10) {
    double mid = 0.5 * (lo + hi);
    if (contraction_constant(q, l, a, b, mid) < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double max_horizon(const ProblemSpec& problem) {
  return max_horizon(problem.kernel.q, problem.nonlinearity.lipschitz, problem.a,
                     problem.b);
}

}  // namespace dkpp
