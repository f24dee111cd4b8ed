#pragma once

#include "dkpp/problem.hpp"
#include "dkpp/spacetime.hpp"

namespace dkpp {

/// The strict-contraction certificate for the block map on [0, T]:
///   C = Q * l * sqrt(T^2 e^{2aT} (1 + 2 [a + |b| + 1]^2) + 1)
/// with Q from the kernel and l the declared Lipschitz constant.  The map
/// is certified admissible iff C < 1 (a sufficient condition; Picard may
/// still converge on uncertified configurations).
struct ContractionCertificate {
  double q = 0.0;
  double lipschitz = 0.0;
  double growth_k = 0.0;  // recorded, not part of the constant
  double a = 0.0;
  double b = 0.0;
  double horizon = 0.0;
  double constant = 0.0;
  bool admissible = false;
  double margin = 0.0;  // 1 - constant
};

double contraction_constant(double q, double l, double a, double b, double T);

ContractionCertificate certify(const ProblemSpec& problem, const TimeWindow& window);

/// Largest T with C(T) < 1, located by bisection on the strictly increasing
/// map T -> C(T) to absolute tolerance 1e-9.  Returns 0 when Q*l >= 1
/// (C(0+) = Q*l already saturates, so no horizon is certifiable).
double max_horizon(double q, double l, double a, double b);
double max_horizon(const ProblemSpec& problem);

}  // namespace dkpp
