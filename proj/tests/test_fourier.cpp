#include "dkpp/fourier.hpp"

#include <doctest.h>

#include <random>

#include "test_helpers.hpp"

using namespace dkpp;
using namespace dkpp::testing;

TEST_CASE("forward transform of the zero field is zero") {
  Grid g(M_PI, 64);
  std::vector<double> zero(64, 0.0);
  auto spec = forward_transform(zero, g);
  for (const auto& c : spec.c) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("cos(x) transform: the +-1 modes carry sqrt(pi/2), round trip exact") {
  Grid g(M_PI, 64);
  std::vector<double> f(64);
  for (int j = 0; j < 64; ++j) f[j] = std::cos(g.x(j));
  auto spec = forward_transform(f, g);
  int plus = g.index_of_wavenumber(1), minus = g.index_of_wavenumber(-1);
  CHECK(std::abs(spec.c[plus] - std::sqrt(M_PI / 2.0)) < 1e-12);
  CHECK(std::abs(spec.c[minus] - std::sqrt(M_PI / 2.0)) < 1e-12);
  auto back = inverse_transform(spec, g);
  CHECK(max_abs_diff(back, f) < 1e-12);
}

TEST_CASE("Gaussian is its own transform under this normalization") {
  Grid g(16.0 * M_PI, 512);
  std::vector<double> f(512);
  for (int j = 0; j < 512; ++j) f[j] = std::exp(-g.x(j) * g.x(j) / 2.0);
  auto spec = forward_transform(f, g);

  // against the closed form e^{-p^2/2}
  double dev = 0.0;
  for (int i = 0; i < 512; ++i)
    dev = std::max(dev, std::abs(spec.c[i] - std::exp(-g.p(i) * g.p(i) / 2.0)));
  CHECK(dev <= 1e-10);

  // against the direct quadrature oracle
  auto direct = direct_forward(f, g);
  double dev2 = 0.0;
  for (int i = 0; i < 512; ++i) dev2 = std::max(dev2, std::abs(spec.c[i] - direct[i]));
  CHECK(dev2 <= 1e-10);
}

TEST_CASE("transform rejects fields of the wrong length") {
  Grid g(M_PI, 64);
  std::vector<double> bad(63, 0.0);
  CHECK_THROWS_AS((void)forward_transform(bad, g), DimensionError);
  SpectralField s;
  s.c.resize(63);
  CHECK_THROWS_AS((void)inverse_transform(s, g), DimensionError);
}

TEST_CASE("inverse of an all-zero spectrum is the zero field") {
  Grid g(M_PI, 64);
  SpectralField s;
  s.c.assign(64, {0.0, 0.0});
  auto f = inverse_transform(s, g);
  for (double v : f) CHECK(v == 0.0);
}

TEST_CASE("random Hermitian spectrum inverts to a real field") {
  Grid g(4.0, 128);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  SpectralField s;
  s.c.assign(128, {0.0, 0.0});
  for (int k = 1; k < 64; ++k) {
    std::complex<double> v(unif(rng), unif(rng));
    s.c[g.index_of_wavenumber(k)] = v;
    s.c[g.index_of_wavenumber(-k)] = std::conj(v);
  }
  s.c[g.index_of_wavenumber(0)] = unif(rng);
  s.c[g.nyquist_index()] = unif(rng);  // unpaired mode must stay real
  auto z = inverse_transform_complex(s, g);
  double max_imag = 0.0;
  for (const auto& v : z) max_imag = std::max(max_imag, std::abs(v.imag()));
  CHECK(max_imag <= 1e-12);
}

TEST_CASE("round trip is the identity to 1e-12 relative") {
  Grid g(10.0, 256);
  std::mt19937_64 rng(11);
  auto f = random_smooth(g, rng).sample(g);
  auto back = inverse_transform(forward_transform(f, g), g);
  CHECK(max_abs_diff(back, f) <= 1e-12 * (1.0 + l2_norm(f, g)));
}

TEST_CASE("fractional laplacian eigenfunctions") {
  Grid g(M_PI, 64);
  std::vector<double> s1(64), s2(64);
  for (int j = 0; j < 64; ++j) {
    s1[j] = std::sin(g.x(j));
    s2[j] = std::sin(2.0 * g.x(j));
  }
  // |p| = 1 mode is fixed by every power
  auto r1 = apply_fractional_laplacian(s1, g, 0.5);
  CHECK(max_abs_diff(r1, s1) < 1e-12);
  // alpha = 1 reproduces the classical eigenvalue 4 on sin(2x)
  auto r2 = apply_fractional_laplacian(s2, g, 1.0);
  std::vector<double> expected(64);
  for (int j = 0; j < 64; ++j) expected[j] = 4.0 * s2[j];
  CHECK(max_abs_diff(r2, expected) < 1e-11);
}

TEST_CASE("fractional laplacian matches per-mode multiplication and is PSD") {
  Grid g(8.0, 128);
  std::mt19937_64 rng(3);
  auto f = random_smooth(g, rng).sample(g);
  auto got = apply_fractional_laplacian(f, g, 0.7);

  auto direct = direct_forward(f, g);
  for (int i = 0; i < 128; ++i) direct[i] *= std::pow(std::abs(g.p(i)), 1.4);
  SpectralField s;
  s.c = direct;
  auto expected = inverse_transform(s, g);
  CHECK(max_abs_diff(got, expected) <= 1e-12 * (1.0 + l2_norm(f, g)));

  double quad_form = 0.0;
  for (int j = 0; j < 128; ++j) quad_form += f[j] * got[j];
  CHECK(quad_form * g.dx() >= -1e-12);

  CHECK_THROWS_AS((void)apply_fractional_laplacian(f, g, 0.0), ParameterError);
  CHECK_THROWS_AS((void)apply_fractional_laplacian(f, g, 1.5), ParameterError);
}

TEST_CASE("norms of the Gaussian e^{-x^2}") {
  Grid g(16.0 * M_PI, 512);
  std::vector<double> f(512);
  for (int j = 0; j < 512; ++j) f[j] = std::exp(-g.x(j) * g.x(j));

  // ||f||_L2 = (pi/2)^{1/4}; the quadrature oracle agrees with the closed form
  CHECK(l2_norm(f, g) == doctest::Approx(std::pow(M_PI / 2.0, 0.25)).epsilon(1e-12));

  // H^2 norm squared = 4 sqrt(pi/2) (Gaussian moment integrals)
  double h2 = h2alpha_norm(f, g, 1.0);
  CHECK(h2 * h2 == doctest::Approx(4.0 * std::sqrt(M_PI / 2.0)).epsilon(1e-12));

  std::vector<double> zero(512, 0.0);
  CHECK(l2_norm(zero, g) == 0.0);
  CHECK(h2alpha_norm(zero, g, 0.5) == 0.0);

  std::vector<double> bad = f;
  bad[100] = std::nan("");
  CHECK_THROWS_AS((void)l2_norm(bad, g), DataError);
}

TEST_CASE("Parseval holds on random fields") {
  Grid g(12.0, 256);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_smooth(g, rng).sample(g);
    double quad = l2_norm(f, g);
    double spec = l2_norm_spectral(forward_transform(f, g), g);
    CHECK(std::abs(quad - spec) <= 1e-12 * (1.0 + quad));
  }
}

TEST_CASE("sup bound: max |phi_hat| <= L1 norm / sqrt(2 pi)") {
  Grid g(12.0, 256);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_smooth(g, rng).sample(g);
    auto spec = forward_transform(f, g);
    double peak = 0.0;
    for (const auto& c : spec.c) peak = std::max(peak, std::abs(c));
    CHECK(peak <= l1_norm(f, g) / kSqrt2Pi + 1e-10);
  }
}

TEST_CASE("sup bound on p^2 phi_hat against the L1 norm of phi''") {
  Grid g(12.0, 256);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    auto sf = random_smooth(g, rng);
    auto f = sf.sample(g);
    auto fpp = sf.sample_second_derivative(g);
    auto spec = forward_transform(f, g);
    double peak = 0.0;
    for (int i = 0; i < 256; ++i)
      peak = std::max(peak, g.p(i) * g.p(i) * std::abs(spec.c[i]));
    CHECK(peak <= l1_norm(fpp, g) / kSqrt2Pi + 1e-8);
  }
}

TEST_CASE("symbol: real part capped at a, classical limit, drift-free Nyquist") {
  Grid g(5.0, 64);
  auto s = full_symbol(g, 0.6, 0.3, 1.2);
  for (int i = 0; i < 64; ++i) CHECK(s.m[i].real() <= 0.3 + 1e-15);
  CHECK(s.m[g.index_of_wavenumber(0)] == std::complex<double>(0.3, 0.0));
  CHECK(s.m[g.nyquist_index()].imag() == 0.0);

  auto classical = full_symbol(g, 1.0, 0.1, 0.7);
  for (int i = 0; i < 64; ++i) {
    double p = g.p(i);
    CHECK(classical.m[i].real() == doctest::Approx(0.1 - p * p).epsilon(1e-14));
    if (i != g.nyquist_index())
      CHECK(classical.m[i].imag() == doctest::Approx(0.7 * p).epsilon(1e-14));
  }
}

TEST_CASE("multiplier composition: m then m' equals m*m'") {
  Grid g(6.0, 128);
  std::mt19937_64 rng(29);
  auto f = random_smooth(g, rng).sample(g);
  auto spec = forward_transform(f, g);
  auto s1 = full_symbol(g, 0.5, 0.2, 0.4);
  auto s2 = full_symbol(g, 0.9, 0.0, -1.1);

  auto seq = apply_symbol(s2, apply_symbol(s1, spec));
  Symbol prod;
  prod.m.resize(128);
  for (int i = 0; i < 128; ++i) prod.m[i] = s1.m[i] * s2.m[i];
  auto once = apply_symbol(prod, spec);
  double dev = 0.0;
  for (int i = 0; i < 128; ++i) dev = std::max(dev, std::abs(seq.c[i] - once.c[i]));
  CHECK(dev <= 1e-13);
}

TEST_CASE("grid invariants are enforced at construction") {
  CHECK_THROWS_AS(Grid(0.0, 64), ParameterError);
  CHECK_THROWS_AS(Grid(1.0, 7), ParameterError);
  CHECK_THROWS_AS(Grid(1.0, 6), ParameterError);
  Grid g(2.5, 10);
  CHECK(g.dx() * g.n_points == doctest::Approx(2.0 * g.half_width).epsilon(1e-15));
  // frequency set symmetric about zero except the lone Nyquist mode
  for (int k = 1; k < 5; ++k)
    CHECK(g.p(g.index_of_wavenumber(k)) == -g.p(g.index_of_wavenumber(-k)));
  CHECK(g.wavenumber(g.nyquist_index()) == -5);
}
