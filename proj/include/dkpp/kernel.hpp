#pragma once

#include <span>
#include <string>
#include <vector>

#include "dkpp/fourier.hpp"
#include "dkpp/grid.hpp"

namespace dkpp {

enum class KernelKind { gaussian, bump, sinc_sq, laplace, tabulated };

/// Parameters for the built-in kernels; only the fields relevant to the
/// chosen kind are read.
struct KernelParams {
  double sigma = 1.0;      // gaussian: standard deviation
  double width = 4.0;      // bump: support half-width w, G = A exp(-1/(1-(x/w)^2))
  double p_cut = 1.0;      // sinc_sq: spectral support is |p| <= p_cut
  double amplitude = 1.0;  // overall scale (gaussian/sinc_sq keep unit mass at 1)
};

/// An admissible convolution kernel together with everything derived from
/// it: samples, classical second derivative, L1 norms, the coupling
/// quantity Q = sqrt(l1_g^2 + l1_g2^2), and the spectral image.
/// Immutable after construction.
struct KernelSpec {
  KernelKind kind = KernelKind::tabulated;
  std::string label;
  std::vector<double> samples;            // G(x_j)
  std::vector<double> second_derivative;  // G''(x_j)
  double l1_g = 0.0;
  double l1_g2 = 0.0;
  double q = 0.0;
  SpectralField spectrum;  // G_hat(p_k)
  /// The admissibility requirements never restrict the sign of G, but a
  /// kernel with negative values is flagged for reporting (the model reads
  /// G as a proportion of newly born cells).
  bool has_negative_values = false;
};

/// Builds a built-in kernel on the grid.  L1 norms come from adaptive
/// quadrature at relative tolerance 1e-8; the Gaussian closed forms
/// (l1_g = |A|, l1_g2 = |A| * 4 e^{-1/2} / (sigma^2 sqrt(2 pi))) are used
/// directly and cross-checked against the quadrature.  Throws
/// AdmissibilityError for kernels whose classical second derivative is not
/// absolutely integrable (kind laplace), and ParameterError when the kernel
/// does not fit the grid (bump wider than the box, tails not decayed).
KernelSpec build_kernel(KernelKind kind, const KernelParams& params, const Grid& grid);

/// Builds a kernel from tabulated samples (x_j, G(x_j)); x must match the
/// grid nodes and the row count must equal N.  The second derivative is
/// obtained spectrally, and admissibility is gated by a smoothness
/// heuristic: the spectral tail must decay faster than |k|^{-3} across the
/// top octave, the checkable surrogate for G'' in L1.
KernelSpec build_kernel_tabulated(std::span<const double> x, std::span<const double> g,
                                  const Grid& grid);

/// Convolution Int G(x-y) f(y) dy computed spectrally as the inverse
/// transform of sqrt(2 pi) * G_hat * f_hat.
std::vector<double> convolve(const KernelSpec& kernel, std::span<const double> field,
                             const Grid& grid);

}  // namespace dkpp
