#include "dkpp/nonlinearity.hpp"

#include <doctest.h>

#include <random>

#include "test_helpers.hpp"

using namespace dkpp;
using namespace dkpp::testing;

TEST_CASE("pointwise evaluation of the built-in rates") {
  Grid g(10.0, 64);
  BaselineSpec none;

  auto lin = make_linear(0.1, none, g);
  std::vector<double> two(64, 2.0);
  auto r = evaluate(lin, two, g);
  for (double v : r) CHECK(v == doctest::Approx(0.2).epsilon(1e-15));

  auto sin03 = make_sine(0.3, none, g);
  std::vector<double> halfpi(64, M_PI / 2.0);
  r = evaluate(sin03, halfpi, g);
  for (double v : r) CHECK(v == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("saturating rate matches the scalar oracle pointwise") {
  Grid g(10.0, 128);
  BaselineSpec base;
  base.kind = BaselineSpec::Kind::gaussian;
  base.amplitude = 0.5;
  base.width = 2.0;
  auto spec = make_saturating(0.2, base, g);

  std::mt19937_64 rng(31);
  auto f = random_smooth(g, rng).sample(g);
  auto got = evaluate(spec, f, g);
  for (int j = 0; j < g.n_points; ++j) {
    double u = f[j], x = g.x(j);
    double expected = 0.2 * u / (1.0 + u * u) + 0.5 * std::exp(-(x / 2.0) * (x / 2.0));
    CHECK(got[j] == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("evaluation is local and rejects non-finite results") {
  Grid g(10.0, 64);
  auto spec = make_saturating(0.2, {}, g);
  std::vector<double> f(64, 0.3);
  auto r0 = evaluate(spec, f, g);
  f[10] = 1.7;
  auto r1 = evaluate(spec, f, g);
  for (int j = 0; j < 64; ++j) {
    if (j == 10)
      CHECK(r1[j] != r0[j]);
    else
      CHECK(r1[j] == r0[j]);
  }

  auto lin = make_linear(1.0, {}, g);
  f[20] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_WITH_AS((void)evaluate(lin, f, g),
                       doctest::Contains("node 20"), DataError);
}

TEST_CASE("lipschitz estimates land in the expected brackets") {
  Grid g(10.0, 64);
  double est_sine = estimate_lipschitz(make_sine(0.3, {}, g), -10.0, 10.0, 10000, g);
  CHECK(est_sine >= 0.299);
  CHECK(est_sine <= 0.300);

  double est_lin = estimate_lipschitz(make_linear(-0.7, {}, g), -10.0, 10.0, 10000, g);
  CHECK(est_lin == doctest::Approx(0.7).epsilon(1e-10));

  double est_sat = estimate_lipschitz(make_saturating(0.2, {}, g), -10.0, 10.0, 10000, g);
  CHECK(est_sat >= 0.199);
  CHECK(est_sat <= 0.200);
}

TEST_CASE("estimates never exceed the declared constant on built-ins") {
  Grid g(10.0, 64);
  for (const auto& spec :
       {make_linear(0.4, {}, g), make_saturating(0.25, {}, g), make_sine(0.15, {}, g)}) {
    double est = estimate_lipschitz(spec, -10.0, 10.0, 5000, g);
    CHECK(est <= spec.lipschitz * (1.0 + 1e-12));
  }
}

TEST_CASE("an under-declared lipschitz constant is caught with a witness") {
  Grid g(10.0, 64);
  auto spec = make_sine(0.3, {}, g, /*declared_l=*/0.1);
  CHECK_THROWS_AS((void)estimate_lipschitz(spec, -10.0, 10.0, 5000, g),
                  AssumptionViolation);
}

TEST_CASE("estimate_lipschitz preconditions") {
  Grid g(10.0, 64);
  auto spec = make_sine(0.3, {}, g);
  CHECK_THROWS_AS((void)estimate_lipschitz(spec, 1.0, 1.0, 5000, g), ParameterError);
  CHECK_THROWS_AS((void)estimate_lipschitz(spec, -1.0, 1.0, 100, g), ParameterError);
}

TEST_CASE("growth verification passes for the built-ins") {
  Grid g(10.0, 64);
  auto rep = verify_growth(make_sine(0.3, {}, g), -10.0, 10.0, 10000, g);
  CHECK(rep.passed);

  BaselineSpec base;
  base.kind = BaselineSpec::Kind::gaussian;
  base.amplitude = 1.0;
  base.width = 1.0;
  auto lin = make_linear(0.6, base, g);
  rep = verify_growth(lin, -10.0, 10.0, 10000, g);
  CHECK(rep.passed);
}

TEST_CASE("a superlinear rate fails growth with a large-|u| witness") {
  Grid g(10.0, 64);
  auto spec = make_linear(0.0, {}, g);
  spec.core = [](double u) { return u * u; };
  spec.growth_k = 3.0;
  auto rep = verify_growth(spec, -10.0, 10.0, 10000, g);
  CHECK_FALSE(rep.passed);
  CHECK(std::abs(rep.witness_u) > 3.0);
  CHECK(rep.lhs > rep.rhs);
}

TEST_CASE("baseline spectrum is Hermitian and band profiles are band-limited") {
  Grid g(16.0 * M_PI, 256);
  BaselineSpec band;
  band.kind = BaselineSpec::Kind::band;
  band.amplitude = 1.0;
  band.center = 3.0;
  band.halfwidth = 1.0;
  auto spec = make_linear(0.1, band, g);

  const auto& c = spec.baseline_spectrum.c;
  for (int k = 1; k < g.n_points / 2; ++k) {
    auto plus = c[g.index_of_wavenumber(k)];
    auto minus = c[g.index_of_wavenumber(-k)];
    CHECK(std::abs(plus - std::conj(minus)) <= 1e-12);
  }
  // discrete support is contained in 2 <= |p| <= 4
  for (int i = 0; i < g.n_points; ++i) {
    double ap = std::abs(g.p(i));
    if (ap < 2.0 - 1e-9 || ap > 4.0 + 1e-9)
      CHECK(std::abs(c[i]) <= 1e-13);
  }
  // h = |g0| is nonnegative by construction
  for (double h : spec.growth_offset) CHECK(h >= 0.0);
}
