#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "dkpp/errors.hpp"

namespace dkpp {

/// Periodic truncation of the real line: the domain is [-L, L) sampled at
/// N equispaced nodes x_j = -L + j*dx, with angular frequencies
/// p_k = (pi/L)*k for k = -N/2 .. N/2-1.  The box must be wide enough that
/// the fields of interest decay below ~1e-12 at +-L; the periodic surrogate
/// is then spectrally accurate.
struct Grid {
  double half_width = 0.0;  // L
  int n_points = 0;         // N, even, >= 8

  Grid(double L, int N) : half_width(L), n_points(N) {
    if (!(L > 0.0)) throw ParameterError("grid half_width must be positive");
    if (N < 8 || N % 2 != 0)
      throw ParameterError("grid n_points must be even and at least 8");
  }

  double dx() const { return 2.0 * half_width / n_points; }
  double dp() const { return M_PI / half_width; }
  double x(int j) const { return -half_width + j * dx(); }

  /// Integer wavenumber for storage index i (i = 0 is the Nyquist mode
  /// k = -N/2; i = N/2 is k = 0).
  int wavenumber(int i) const { return i - n_points / 2; }
  double p(int i) const { return dp() * wavenumber(i); }
  int nyquist_index() const { return 0; }
  int index_of_wavenumber(int k) const { return k + n_points / 2; }

  bool operator==(const Grid&) const = default;
};

/// Fourier coefficients on a Grid, stored in wavenumber order
/// k = -N/2 .. N/2-1 (index i -> k = i - N/2).  Normalization matches the
/// continuum transform phi_hat(p) = (2*pi)^{-1/2} Integral phi(x) e^{-ipx} dx
/// discretized by the rectangle rule, so a real field has Hermitian
/// coefficients and the discrete Parseval identity
///   dx * sum |phi_j|^2 = dp * sum |c_k|^2
/// holds exactly.
struct SpectralField {
  std::vector<std::complex<double>> c;

  int size() const { return static_cast<int>(c.size()); }
};

}  // namespace dkpp
