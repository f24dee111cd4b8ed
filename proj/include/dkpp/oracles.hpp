#pragma once

#include "dkpp/problem.hpp"
#include "dkpp/spacetime.hpp"

namespace dkpp {
namespace oracle {

/// Reference computations that deliberately avoid the production code paths
/// (no spectral convolution, no exponential-trapezoid recurrence).  They run
/// at desk scale only and back the tests and the acceptance suite.

/// O(N^2) periodic quadrature of Int G(x-y) f(y) dy.
std::vector<double> direct_convolution(const KernelSpec& kernel,
                                       std::span<const double> field, const Grid& grid);

/// Exact per-mode solution for the linear rate F = c u + g0(x):
///   u_hat(p, t) = e^{mu t} u0_hat + sqrt(2 pi) G_hat g0_hat (e^{mu t} - 1)/mu,
///   mu = -|p|^{2 alpha} + i b p + a + sqrt(2 pi) c G_hat(p).
/// Throws ParameterError for non-linear rates.
SpectralField linear_mode_solution(const ProblemSpec& problem, double t);

struct MolResult {
  SpaceTimeField field;
  std::string method;
  double accuracy_estimate = 0.0;  // crude global-error scale, O(dt_sub^4)
};

/// Classical fourth-order Runge-Kutta on the full nonlinear spectral right
/// side with `substeps` substeps per window step.  Refuses when the
/// stability bound dt_sub * max|m_k| <= 1 fails, naming the required count.
MolResult method_of_lines_reference(const ProblemSpec& problem, const TimeWindow& window,
                                    int substeps);

struct GaussianKernelNorms {
  double l1_g = 0.0;
  double l1_g2 = 0.0;
  double q = 0.0;
};

/// Closed forms for the unit-mass Gaussian kernel: l1_g = 1,
/// l1_g2 = 4 e^{-1/2} / (sigma^2 sqrt(2 pi)), from the sign changes of the
/// second derivative at x = +-sigma.
GaussianKernelNorms gaussian_kernel_norms(double sigma);

/// Heat evolution (alpha = 1, a = b = 0, F = 0) of u0 = exp(-beta x^2):
/// u(x, t) = exp(-beta x^2 / (1 + 4 beta t)) / sqrt(1 + 4 beta t).
std::vector<double> heat_gaussian(double beta, double t, const Grid& grid);

}  // namespace oracle
}  // namespace dkpp
