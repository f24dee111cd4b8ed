#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dkpp/grid.hpp"

namespace dkpp {

/// Discrete realization of phi_hat(p) = (2*pi)^{-1/2} Int phi e^{-ipx} dx at
/// the grid frequencies (rectangle rule; spectrally accurate for smooth
/// periodic data).  Throws DimensionError when field.size() != N.
SpectralField forward_transform(std::span<const double> field, const Grid& grid);

/// Inverse of forward_transform (exact round trip up to roundoff).  Returns
/// the real part; use inverse_transform_complex to inspect the imaginary
/// residue of non-Hermitian spectra.
std::vector<double> inverse_transform(const SpectralField& spec, const Grid& grid);
std::vector<std::complex<double>> inverse_transform_complex(const SpectralField& spec,
                                                            const Grid& grid);

/// (-d^2/dx^2)^alpha via the spectral multiplier |p|^{2 alpha}, 0 < alpha <= 1.
std::vector<double> apply_fractional_laplacian(std::span<const double> field,
                                               const Grid& grid, double alpha);

/// Quadrature norms on the grid.  l2_norm throws DataError on non-finite
/// samples; it agrees with the spectral Parseval value to roundoff.
double l2_norm(std::span<const double> field, const Grid& grid);
double l1_norm(std::span<const double> field, const Grid& grid);
double l2_norm_spectral(const SpectralField& spec, const Grid& grid);

/// Sobolev norm: sqrt(||phi||_L2^2 + || |p|^{2 alpha} phi_hat ||^2).
double h2alpha_norm(std::span<const double> field, const Grid& grid, double alpha);

/// Per-frequency complex multiplier m_k.
struct Symbol {
  std::vector<std::complex<double>> m;
};

/// Full linear symbol -|p|^{2 alpha} + i*b*p + a.  The odd (drift) part is
/// zeroed on the unpaired Nyquist mode so that real fields stay real under
/// the propagator.
Symbol full_symbol(const Grid& grid, double alpha, double a, double b);

/// Pointwise product m_k * c_k.
SpectralField apply_symbol(const Symbol& symbol, const SpectralField& spec);

}  // namespace dkpp
