#include "dkpp/duhamel.hpp"

#include <doctest.h>

#include <random>

#include "dkpp/oracles.hpp"
#include "dkpp/random_fields.hpp"
#include "test_helpers.hpp"

using namespace dkpp;
using namespace dkpp::testing;

namespace {

ProblemSpec gaussian_problem(const Grid& g, double alpha, double a, double b,
                             double rate_c, double ic_beta = 1.0,
                             bool classical = false) {
  ProblemSpec problem(g);
  problem.alpha = alpha;
  problem.a = a;
  problem.b = b;
  problem.classical_mode = classical;
  problem.kernel = build_kernel(KernelKind::gaussian, {.sigma = 1.0}, g);
  problem.nonlinearity = make_linear(rate_c, {}, g);
  problem.initial_condition.resize(g.n_points);
  for (int j = 0; j < g.n_points; ++j)
    problem.initial_condition[j] = std::exp(-ic_beta * g.x(j) * g.x(j));
  return problem;
}

// Iterate the map to its fixed point (tests only; the solver proper lives in
// the picard module).
SpaceTimeField fixed_point(const ProblemSpec& problem, const TimeWindow& window) {
  SpaceTimeField v =
      SpaceTimeField::constant_in_time(problem.initial_condition, window.levels());
  for (int it = 0; it < 60; ++it) {
    SpaceTimeField u = apply_map(problem, window, v);
    double delta = 0.0;
    for (int m = 0; m < window.levels(); ++m)
      delta = std::max(delta, max_abs_diff(u.level(m), v.level(m)));
    v = std::move(u);
    if (delta < 1e-13) break;
  }
  return v;
}

double space_time_l2(const SpaceTimeField& a, const SpaceTimeField& b, const Grid& g,
                     const TimeWindow& w) {
  double acc = 0.0;
  for (int m = 0; m < w.levels(); ++m) {
    auto ra = a.level(m), rb = b.level(m);
    double level = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
      double d = ra[j] - rb[j];
      level += d * d;
    }
    double tw = (m == 0 || m == w.steps) ? 0.5 * w.dt() : w.dt();
    acc += tw * g.dx() * level;
  }
  return std::sqrt(acc);
}

}  // namespace

TEST_CASE("heat evolution of a Gaussian is reproduced exactly in time") {
  Grid g(12.0, 256);
  auto problem = gaussian_problem(g, 1.0, 0.0, 0.0, 0.0, 1.0, /*classical=*/true);
  TimeWindow window(1.0, 16);
  auto v = SpaceTimeField::constant_in_time(problem.initial_condition, window.levels());
  auto u = apply_map(problem, window, v);
  for (int m = 0; m <= window.steps; ++m) {
    auto expected = oracle::heat_gaussian(1.0, window.t(m), g);
    CHECK(max_abs_diff(u.level(m), expected) <= 1e-10);
  }
}

TEST_CASE("vanishing forcing leaves the pure semigroup evolution") {
  Grid g(4.0 * M_PI, 128);
  auto problem = gaussian_problem(g, 0.5, 0.2, 0.3, 0.7);
  TimeWindow window(0.5, 20);
  // v = 0 and F(0,.) = 0 make the Duhamel integrand vanish identically
  SpaceTimeField zero(window.levels(), g.n_points);
  auto u = apply_map(problem, window, zero);
  auto u0hat = forward_transform(problem.initial_condition, g);
  for (int m = 0; m <= window.steps; ++m) {
    auto factor = semigroup_factor(problem, g, window.t(m));
    SpectralField s;
    s.c.resize(g.n_points);
    for (int i = 0; i < g.n_points; ++i) s.c[i] = factor[i] * u0hat.c[i];
    auto expected = inverse_transform(s, g);
    CHECK(max_abs_diff(u.level(m), expected) <= 1e-12);
  }
}

TEST_CASE("semigroup factor: identity, exponent law, decay cap") {
  Grid g(4.0 * M_PI, 128);
  auto problem = gaussian_problem(g, 0.5, 0.3, 1.0, 0.0);

  auto at_zero = semigroup_factor(problem, g, 0.0);
  for (const auto& f : at_zero) CHECK(std::abs(f - 1.0) == 0.0);

  auto ft = semigroup_factor(problem, g, 0.4);
  auto fs = semigroup_factor(problem, g, 0.7);
  auto fts = semigroup_factor(problem, g, 1.1);
  for (int i = 0; i < g.n_points; ++i)
    CHECK(std::abs(fts[i] - ft[i] * fs[i]) <= 1e-13);

  for (int i = 0; i < g.n_points; ++i)
    CHECK(std::abs(ft[i]) <= std::exp(0.4 * 0.3) + 1e-14);

  CHECK_THROWS_AS((void)semigroup_factor(problem, g, -0.1), ParameterError);
}

TEST_CASE("single-mode decay rate at |p| = 1, alpha = 1/2") {
  Grid g(4.0 * M_PI, 128);
  ProblemSpec problem(g);
  problem.alpha = 0.5;
  problem.kernel = build_kernel(KernelKind::gaussian, {.sigma = 1.0}, g);
  problem.nonlinearity = make_linear(0.0, {}, g);
  problem.initial_condition.resize(g.n_points);
  for (int j = 0; j < g.n_points; ++j)
    problem.initial_condition[j] = std::sin(g.x(j));
  TimeWindow window(1.0, 10);

  auto factor = semigroup_factor(problem, g, 1.0);
  int idx = g.index_of_wavenumber(4);  // p = 1 on this grid
  CHECK(std::abs(factor[idx] - std::exp(-1.0)) <= 1e-14);

  auto v = SpaceTimeField::constant_in_time(problem.initial_condition, window.levels());
  auto u = apply_map(problem, window, v);
  auto du = time_derivative(problem, window, u, v);
  // d/dt u = -u for the |p| = 1 eigenmode with F = 0
  for (int m = 0; m <= window.steps; ++m) {
    auto um = u.level(m);
    auto dm = du.level(m);
    for (int j = 0; j < g.n_points; ++j)
      CHECK(std::abs(dm[j] + um[j]) <= 1e-10);
  }
}

TEST_CASE("zero data gives a zero derivative") {
  Grid g(4.0 * M_PI, 64);
  auto problem = gaussian_problem(g, 0.5, 0.0, 0.0, 0.3);
  problem.initial_condition.assign(g.n_points, 0.0);
  TimeWindow window(0.5, 8);
  SpaceTimeField zero(window.levels(), g.n_points);
  auto u = apply_map(problem, window, zero);
  auto du = time_derivative(problem, window, u, zero);
  for (int m = 0; m <= window.steps; ++m)
    for (double v : du.level(m)) CHECK(std::abs(v) <= 1e-14);
}

TEST_CASE("linear rate: fixed point matches the per-mode closed form") {
  Grid g(16.0 * M_PI, 256);
  auto problem = gaussian_problem(g, 0.5, 0.0, 0.0, 0.05);
  TimeWindow window(1.0, 1000);
  auto u = fixed_point(problem, window);

  SpaceTimeField exact(window.levels(), g.n_points);
  for (int m = 0; m <= window.steps; ++m) {
    auto uhat = oracle::linear_mode_solution(problem, window.t(m));
    auto phys = inverse_transform(uhat, g);
    auto row = exact.level(m);
    for (int j = 0; j < g.n_points; ++j) row[j] = phys[j];
  }
  double err = space_time_l2(u, exact, g, window);
  double scale = space_time_l2(exact, SpaceTimeField(window.levels(), g.n_points), g,
                               window);
  CHECK(err / scale <= 1e-5);

  // the spectral time derivative matches the differentiated closed form
  auto du = time_derivative(problem, window, u, u);
  const Symbol sym = problem_symbol(problem);
  int mid = window.steps / 2;
  auto uhat_mid = oracle::linear_mode_solution(problem, window.t(mid));
  SpectralField dhat;
  dhat.c.resize(g.n_points);
  for (int i = 0; i < g.n_points; ++i) {
    auto mu = sym.m[i] + kSqrt2Pi * 0.05 * problem.kernel.spectrum.c[i];
    dhat.c[i] = mu * uhat_mid.c[i];
  }
  auto dphys = inverse_transform(dhat, g);
  CHECK(max_abs_diff(du.level(mid), dphys) <= 1e-5);
}

TEST_CASE("map output spectra stay Hermitian (real fields stay real)") {
  Grid g(10.0, 128);
  auto problem = gaussian_problem(g, 0.6, 0.1, 0.8, 0.0);
  problem.nonlinearity = make_saturating(0.3, {}, g);
  TimeWindow window(0.5, 40);
  std::mt19937_64 rng(101);
  auto v = random_smooth_field(g, window, rng);
  auto u = apply_map(problem, window, v.values);
  for (int m = 0; m <= window.steps; m += 5) {
    const auto& c = u.spectrum(m, g);
    for (int k = 1; k < g.n_points / 2; ++k) {
      auto plus = c[g.index_of_wavenumber(k)];
      auto minus = c[g.index_of_wavenumber(-k)];
      CHECK(std::abs(plus - std::conj(minus)) <= 1e-11);
    }
    CHECK(std::abs(c[g.nyquist_index()].imag()) <= 1e-11);
  }
}

TEST_CASE("semigroup term L2 growth bound e^{at}") {
  Grid g(10.0, 128);
  auto problem = gaussian_problem(g, 0.4, 0.7, 1.1, 0.0);
  TimeWindow window(1.0, 50);
  SpaceTimeField zero(window.levels(), g.n_points);
  auto u = apply_map(problem, window, zero);  // pure semigroup term (F == 0)
  double u0 = l2_norm(problem.initial_condition, g);
  for (int m = 0; m <= window.steps; ++m)
    CHECK(l2_norm(u.level(m), g) <= std::exp(0.7 * window.t(m)) * u0 + 1e-10);
}

TEST_CASE("Duhamel integral is additive in the forcing") {
  Grid g(10.0, 128);
  auto problem = gaussian_problem(g, 0.5, 0.0, 0.0, 1.0);  // F(v) = v
  TimeWindow window(0.5, 30);
  std::mt19937_64 rng(55);
  auto v1 = random_smooth_field(g, window, rng).values;
  auto v2 = random_smooth_field(g, window, rng).values;

  SpaceTimeField sum(window.levels(), g.n_points);
  for (int m = 0; m < window.levels(); ++m) {
    auto r = sum.level(m);
    auto a = v1.level(m);
    auto b = v2.level(m);
    for (int j = 0; j < g.n_points; ++j) r[j] = a[j] + b[j];
  }

  auto u1 = apply_map(problem, window, v1);
  auto u2 = apply_map(problem, window, v2);
  auto u12 = apply_map(problem, window, sum);
  SpaceTimeField zero(window.levels(), g.n_points);
  auto s = apply_map(problem, window, zero);  // pure semigroup part

  // u(v1 + v2) = u(v1) + u(v2) - semigroup term
  for (int m = 0; m <= window.steps; m += 6) {
    auto lhs = u12.level(m);
    auto r1 = u1.level(m), r2 = u2.level(m), rs = s.level(m);
    for (int j = 0; j < g.n_points; ++j)
      CHECK(std::abs(lhs[j] - (r1[j] + r2[j] - rs[j])) <= 1e-11);
  }
}

TEST_CASE("duhamel residual: zero forcing, perturbation floor, order two") {
  Grid g(10.0, 128);
  auto zero_rate = gaussian_problem(g, 0.5, 0.0, 0.0, 0.0);
  TimeWindow window(0.5, 64);
  SpaceTimeField zero(window.levels(), g.n_points);
  auto u = apply_map(zero_rate, window, zero);
  CHECK(duhamel_residual(zero_rate, window, u, zero) <= 1e-12);

  // perturbing u by 1e-3 pushes the residual above half that size
  SpaceTimeField noisy = u;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unif(0.5, 1.0);
  for (int m = 0; m < window.levels(); ++m) {
    auto row = noisy.level(m);
    for (int j = 0; j < g.n_points; ++j) row[j] += 1e-3 * unif(rng);
  }
  CHECK(duhamel_residual(zero_rate, window, noisy, zero) >= 0.5e-3);

  // Richardson order of the exponential-trapezoid quadrature
  ProblemSpec nonlinear = gaussian_problem(g, 0.5, 0.1, 0.4, 0.0);
  nonlinear.nonlinearity = make_saturating(0.4, {}, g);
  double res[3];
  int steps[3] = {32, 64, 128};
  for (int c = 0; c < 3; ++c) {
    TimeWindow w(0.5, steps[c]);
    std::mt19937_64 gen(9);  // same modes across resolutions
    auto v = random_smooth_field(g, w, gen);
    auto uu = apply_map(nonlinear, w, v.values);
    res[c] = duhamel_residual(nonlinear, w, uu, v.values);
  }
  double order1 = std::log2(res[0] / res[1]);
  double order2 = std::log2(res[1] / res[2]);
  CHECK(order1 >= 1.9);
  CHECK(order2 >= 1.9);
}

TEST_CASE("map quadrature converges at second order against the linear oracle") {
  Grid g(16.0 * M_PI, 128);
  auto problem = gaussian_problem(g, 0.5, 0.0, 0.0, 0.8);
  double err[2];
  int steps[2] = {25, 50};
  for (int c = 0; c < 2; ++c) {
    TimeWindow window(1.0, steps[c]);
    auto u = fixed_point(problem, window);
    SpaceTimeField exact(window.levels(), g.n_points);
    for (int m = 0; m <= window.steps; ++m) {
      auto uhat = oracle::linear_mode_solution(problem, window.t(m));
      auto phys = inverse_transform(uhat, g);
      auto row = exact.level(m);
      for (int j = 0; j < g.n_points; ++j) row[j] = phys[j];
    }
    err[c] = space_time_l2(u, exact, g, window);
  }
  double order = std::log2(err[0] / err[1]);
  CHECK(order >= 1.9);
  CHECK(order <= 2.1);
}

TEST_CASE("degenerate growth integral limits") {
  CHECK(exp_growth_integral(0.0, 2.5) == 2.5);
  CHECK(exp_growth_integral(0.5, 1.0) == doctest::Approx(std::expm1(1.0)).epsilon(1e-15));
  // continuity across a -> 0
  CHECK(exp_growth_integral(1e-12, 2.5) == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("shape mismatches are rejected") {
  Grid g(10.0, 64);
  auto problem = gaussian_problem(g, 0.5, 0.0, 0.0, 0.1);
  TimeWindow window(0.5, 10);
  SpaceTimeField wrong(window.levels() + 1, g.n_points);
  CHECK_THROWS_AS((void)apply_map(problem, window, wrong), DimensionError);
  SpaceTimeField ok(window.levels(), g.n_points);
  CHECK_THROWS_AS((void)time_derivative(problem, window, wrong, ok), DimensionError);
  CHECK_THROWS_AS((void)duhamel_residual(problem, window, ok, wrong), DimensionError);
}
