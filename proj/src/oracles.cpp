#include "dkpp/oracles.hpp"

#include <cmath>

#include "dkpp/duhamel.hpp"

namespace dkpp {
namespace oracle {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;
using Cplx = std::complex<double>;
}  // namespace

std::vector<double> direct_convolution(const KernelSpec& kernel,
                                       std::span<const double> field, const Grid& grid) {
  const int n = grid.n_points;
  if (static_cast<int>(field.size()) != n || static_cast<int>(kernel.samples.size()) != n)
    throw DimensionError("direct_convolution: grid mismatch");
  const double L = grid.half_width;
  const double dx = grid.dx();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      double d = grid.x(i) - grid.x(j);
      while (d < -L) d += 2.0 * L;
      while (d >= L) d -= 2.0 * L;
      int jd = static_cast<int>(std::lround((d + L) / dx)) % n;
      acc += kernel.samples[jd] * field[j];
    }
    out[i] = dx * acc;
  }
  return out;
}

SpectralField linear_mode_solution(const ProblemSpec& problem, double t) {
  if (problem.nonlinearity.kind != NonlinearityKind::linear)
    throw ParameterError("linear_mode_solution requires the linear rate");
  const Grid& grid = problem.grid;
  const int n = grid.n_points;
  const double c = problem.nonlinearity.coeff;
  const Symbol sym = problem_symbol(problem);
  const auto u0hat = forward_transform(problem.initial_condition, grid).c;
  const auto& ghat = problem.kernel.spectrum.c;
  const auto& g0hat = problem.nonlinearity.baseline_spectrum.c;

  SpectralField out;
  out.c.resize(n);
  for (int i = 0; i < n; ++i) {
    Cplx mu = sym.m[i] + kSqrt2Pi * c * ghat[i];
    Cplx grow = std::exp(t * mu);
    // phi1(z) = (e^z - 1)/z, continued by t at z = 0, for the affine part.
    Cplx z = t * mu;
    Cplx phi1t = std::abs(z) < 1e-8 ? Cplx(t) * (1.0 + 0.5 * z) : (grow - 1.0) / mu;
    out.c[i] = grow * u0hat[i] + kSqrt2Pi * ghat[i] * g0hat[i] * phi1t;
  }
  return out;
}

MolResult method_of_lines_reference(const ProblemSpec& problem, const TimeWindow& window,
                                    int substeps) {
  if (substeps < 1) throw ParameterError("method_of_lines: substeps must be >= 1");
  const Grid& grid = problem.grid;
  const int n = grid.n_points;
  const Symbol sym = problem_symbol(problem);
  double stiff = 0.0;
  for (const auto& m : sym.m) stiff = std::max(stiff, std::abs(m));

  const double dt_sub = window.dt() / substeps;
  if (dt_sub * stiff > 1.0) {
    int needed = static_cast<int>(std::ceil(window.dt() * stiff));
    throw ParameterError("method_of_lines: explicit step unstable; need at least " +
                         std::to_string(needed) + " substeps per window step");
  }

  const auto& ghat = problem.kernel.spectrum.c;
  auto rhs = [&](const std::vector<Cplx>& uhat) {
    SpectralField s;
    s.c = uhat;
    auto u = inverse_transform(s, grid);
    auto rate = evaluate(problem.nonlinearity, u, grid);
    auto rhat = forward_transform(rate, grid);
    std::vector<Cplx> out(n);
    for (int i = 0; i < n; ++i)
      out[i] = sym.m[i] * uhat[i] + kSqrt2Pi * ghat[i] * rhat.c[i];
    return out;
  };

  MolResult result;
  result.method = "rk4_method_of_lines";
  result.field = SpaceTimeField(window.levels(), n);
  {
    auto row = result.field.level(0);
    for (int j = 0; j < n; ++j) row[j] = problem.initial_condition[j];
  }

  std::vector<Cplx> uhat = forward_transform(problem.initial_condition, grid).c;
  for (int m = 0; m < window.steps; ++m) {
    for (int s = 0; s < substeps; ++s) {
      auto k1 = rhs(uhat);
      std::vector<Cplx> tmp(n);
      for (int i = 0; i < n; ++i) tmp[i] = uhat[i] + 0.5 * dt_sub * k1[i];
      auto k2 = rhs(tmp);
      for (int i = 0; i < n; ++i) tmp[i] = uhat[i] + 0.5 * dt_sub * k2[i];
      auto k3 = rhs(tmp);
      for (int i = 0; i < n; ++i) tmp[i] = uhat[i] + dt_sub * k3[i];
      auto k4 = rhs(tmp);
      for (int i = 0; i < n; ++i)
        uhat[i] += dt_sub / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    SpectralField s;
    s.c = uhat;
    auto phys = inverse_transform(s, grid);
    auto row = result.field.level(m + 1);
    for (int j = 0; j < n; ++j) row[j] = phys[j];
  }

  double u0_scale = l2_norm(problem.initial_condition, grid) + 1.0;
  result.accuracy_estimate =
      window.horizon * std::pow(dt_sub * (stiff + 1.0), 4) * u0_scale;
  return result;
}

GaussianKernelNorms gaussian_kernel_norms(double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("gaussian_kernel_norms: sigma must be positive");
  GaussianKernelNorms n;
  n.l1_g = 1.0;
  n.l1_g2 = 4.0 * std::exp(-0.5) / (sigma * sigma * kSqrt2Pi);
  n.q = std::hypot(n.l1_g, n.l1_g2);
  return n;
}

std::vector<double> heat_gaussian(double beta, double t, const Grid& grid) {
  if (!(beta > 0.0)) throw ParameterError("heat_gaussian: beta must be positive");
  double denom = 1.0 + 4.0 * beta * t;
  std::vector<double> out(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j) {
    double x = grid.x(j);
    out[j] = std::exp(-beta * x * x / denom) / std::sqrt(denom);
  }
  return out;
}

}  // namespace oracle
}  // namespace dkpp
