#include "dkpp/duhamel.hpp"

#include <cmath>

#include "dkpp/parallel.hpp"

namespace dkpp {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;

using Cplx = std::complex<double>;
using LevelSpectra = std::vector<std::vector<Cplx>>;

// sqrt(2 pi) * G_hat * (F(v(., t_m), .))^hat for every level.
LevelSpectra forcing_spectra(const ProblemSpec& problem, const TimeWindow& window,
                             const SpaceTimeField& v) {
  const Grid& grid = problem.grid;
  const int n = grid.n_points;
  LevelSpectra gh(window.levels());
  for (int m = 0; m < window.levels(); ++m) {
    auto rate = evaluate(problem.nonlinearity, v.level(m), grid);
    auto rhat = forward_transform(rate, grid);
    gh[m].resize(n);
    for (int i = 0; i < n; ++i)
      gh[m][i] = kSqrt2Pi * problem.kernel.spectrum.c[i] * rhat.c[i];
  }
  return gh;
}

void check_block(const ProblemSpec& problem, const TimeWindow& window,
                 const SpaceTimeField& f, const char* who) {
  if (f.levels() != window.levels() || f.n_points() != problem.grid.n_points)
    throw DimensionError(std::string(who) + ": field does not match the window/grid");
}

}  // namespace

Symbol problem_symbol(const ProblemSpec& problem) {
  return full_symbol(problem.grid, problem.alpha, problem.a, problem.b);
}

std::vector<Cplx> semigroup_factor(const ProblemSpec& problem, const Grid& grid,
                                   double t) {
  if (t < 0.0) throw ParameterError("semigroup factor: negative duration");
  Symbol sym = full_symbol(grid, problem.alpha, problem.a, problem.b);
  std::vector<Cplx> factor(sym.m.size());
  for (size_t i = 0; i < sym.m.size(); ++i) factor[i] = std::exp(t * sym.m[i]);
  return factor;
}

SpaceTimeField apply_map(const ProblemSpec& problem, const TimeWindow& window,
                         const SpaceTimeField& v) {
  check_block(problem, window, v, "apply_map");
  const Grid& grid = problem.grid;
  const int n = grid.n_points;
  const int M = window.steps;
  const double dt = window.dt();

  const auto u0hat = forward_transform(problem.initial_condition, grid).c;
  const Symbol sym = problem_symbol(problem);
  const LevelSpectra gh = forcing_spectra(problem, window, v);

  LevelSpectra uhat(M + 1, std::vector<Cplx>(n));
  // The time recurrence is sequential within a mode but independent across
  // modes; each worker owns a disjoint set of modes.
  parallel_for(n, [&](int i) {
    const Cplx mk = sym.m[i];
    const Cplx step = std::exp(dt * mk);
    Cplx integral(0.0, 0.0);
    uhat[0][i] = u0hat[i];
    for (int m = 0; m < M; ++m) {
      integral = step * integral + 0.5 * dt * (step * gh[m][i] + gh[m + 1][i]);
      uhat[m + 1][i] = std::exp(window.t(m + 1) * mk) * u0hat[i] + integral;
    }
  });

  SpaceTimeField u(M + 1, n);
  {
    auto row = u.level(0);
    for (int j = 0; j < n; ++j) row[j] = problem.initial_condition[j];
  }
  for (int m = 1; m <= M; ++m) {
    SpectralField s;
    s.c = std::move(uhat[m]);
    auto phys = inverse_transform(s, grid);
    auto row = u.level(m);
    for (int j = 0; j < n; ++j) row[j] = phys[j];
  }
  return u;
}

SpaceTimeField time_derivative(const ProblemSpec& problem, const TimeWindow& window,
                               const SpaceTimeField& u, const SpaceTimeField& v) {
  check_block(problem, window, u, "time_derivative");
  check_block(problem, window, v, "time_derivative");
  const Grid& grid = problem.grid;
  const int n = grid.n_points;
  const Symbol sym = problem_symbol(problem);
  const LevelSpectra gh = forcing_spectra(problem, window, v);

  SpaceTimeField out(window.levels(), n);
  for (int m = 0; m < window.levels(); ++m) {
    const auto& uh = u.spectrum(m, grid);
    SpectralField s;
    s.c.resize(n);
    for (int i = 0; i < n; ++i) s.c[i] = sym.m[i] * uh[i] + gh[m][i];
    auto phys = inverse_transform(s, grid);
    auto row = out.level(m);
    for (int j = 0; j < n; ++j) row[j] = phys[j];
  }
  return out;
}

namespace {

// Quadrature weights for the prefix integrals Int_0^{t_m}: composite Simpson
// where the panel count is even, with a 3/8 block closing odd counts
// (trapezoid for the single-panel prefix).
std::vector<std::vector<double>> prefix_weights(int M, double dt) {
  std::vector<std::vector<double>> w(M + 1);
  for (int m = 1; m <= M; ++m) {
    std::vector<double>& ws = w[m];
    ws.assign(m + 1, 0.0);
    if (m == 1) {
      ws[0] = ws[1] = 0.5 * dt;
      continue;
    }
    int simpson_end = (m % 2 == 0) ? m : m - 3;
    for (int q = 0; q + 2 <= simpson_end; q += 2) {
      ws[q] += dt / 3.0;
      ws[q + 1] += 4.0 * dt / 3.0;
      ws[q + 2] += dt / 3.0;
    }
    if (m % 2 != 0) {
      ws[m - 3] += 3.0 * dt / 8.0;
      ws[m - 2] += 9.0 * dt / 8.0;
      ws[m - 1] += 9.0 * dt / 8.0;
      ws[m] += 3.0 * dt / 8.0;
    }
  }
  return w;
}

}  // namespace

double duhamel_residual(const ProblemSpec& problem, const TimeWindow& window,
                        const SpaceTimeField& u, const SpaceTimeField& v) {
  check_block(problem, window, u, "duhamel_residual");
  check_block(problem, window, v, "duhamel_residual");
  const Grid& grid = problem.grid;
  const int n = grid.n_points;
  const int M = window.steps;
  const double dt = window.dt();

  const auto u0hat = forward_transform(problem.initial_condition, grid).c;
  const Symbol sym = problem_symbol(problem);
  const LevelSpectra gh = forcing_spectra(problem, window, v);
  const auto weights = prefix_weights(M, dt);

  // Populate the lazy caches serially before the mode loop reads them.
  LevelSpectra uh(M + 1);
  for (int m = 0; m <= M; ++m) uh[m] = u.spectrum(m, grid);

  // Per-mode accumulation into disjoint slots; the final reduction is a
  // serial sum so the result does not depend on the worker count.
  std::vector<double> mode_sum(n, 0.0);
  parallel_for(n, [&](int i) {
    const Cplx mk = sym.m[i];
    const Cplx step = std::exp(dt * mk);
    std::vector<Cplx> powers(M + 1);
    powers[0] = Cplx(1.0, 0.0);
    for (int r = 1; r <= M; ++r) powers[r] = powers[r - 1] * step;

    double acc = 0.0;
    for (int m = 0; m <= M; ++m) {
      Cplx integral(0.0, 0.0);
      if (m >= 1) {
        const auto& ws = weights[m];
        for (int j = 0; j <= m; ++j) integral += ws[j] * powers[m - j] * gh[j][i];
      }
      Cplx reference = std::exp(window.t(m) * mk) * u0hat[i] + integral;
      double tw = (m == 0 || m == M) ? 0.5 * dt : dt;
      acc += tw * std::norm(uh[m][i] - reference);
    }
    mode_sum[i] = acc;
  });

  double total = 0.0;
  for (int i = 0; i < n; ++i) total += mode_sum[i];
  return std::sqrt(grid.dp() * total);
}

double exp_growth_integral(double a, double T) {
  if (a == 0.0) return T;
  return std::expm1(2.0 * a * T) / (2.0 * a);
}

}  // namespace dkpp
