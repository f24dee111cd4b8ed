#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "dkpp/grid.hpp"

namespace dkpp::testing {

inline constexpr double kSqrt2Pi = 2.5066282746310005024;

/// Independent O(N^2) rectangle-rule quadrature of the transform
/// (2 pi)^{-1/2} Int phi e^{-ipx} dx at the grid frequencies.  Shares no
/// code with the FFT path.
inline std::vector<std::complex<double>> direct_forward(std::span<const double> f,
                                                        const Grid& g) {
  const int n = g.n_points;
  std::vector<std::complex<double>> c(n);
  for (int i = 0; i < n; ++i) {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < n; ++j)
      acc += f[j] * std::polar(1.0, -g.p(i) * g.x(j));
    c[i] = g.dx() / kSqrt2Pi * acc;
  }
  return c;
}

/// Random periodic trig polynomial with analytically known derivatives.
struct SmoothField {
  std::vector<double> amp, p, theta;

  double value(double x) const {
    double acc = 0.0;
    for (size_t q = 0; q < amp.size(); ++q) acc += amp[q] * std::cos(p[q] * x + theta[q]);
    return acc;
  }
  double second_derivative(double x) const {
    double acc = 0.0;
    for (size_t q = 0; q < amp.size(); ++q)
      acc += -amp[q] * p[q] * p[q] * std::cos(p[q] * x + theta[q]);
    return acc;
  }
  std::vector<double> sample(const Grid& g) const {
    std::vector<double> out(g.n_points);
    for (int j = 0; j < g.n_points; ++j) out[j] = value(g.x(j));
    return out;
  }
  std::vector<double> sample_second_derivative(const Grid& g) const {
    std::vector<double> out(g.n_points);
    for (int j = 0; j < g.n_points; ++j) out[j] = second_derivative(g.x(j));
    return out;
  }
};

inline SmoothField random_smooth(const Grid& g, std::mt19937_64& rng, int n_modes = 8,
                                 int max_k = 0) {
  if (max_k == 0) max_k = g.n_points / 4;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> kd(0, max_k);
  SmoothField f;
  for (int q = 0; q < n_modes; ++q) {
    int k = kd(rng);
    f.amp.push_back((2.0 * unif(rng) - 1.0) / (1.0 + 0.2 * k * k));
    f.p.push_back(g.dp() * k);
    f.theta.push_back(2.0 * M_PI * unif(rng));
  }
  return f;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace dkpp::testing
