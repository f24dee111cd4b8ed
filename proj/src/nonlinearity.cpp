#include "dkpp/nonlinearity.hpp"

#include <cmath>
#include <limits>

namespace dkpp {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kFloor = 1e-12;  // declared constants must stay positive

std::vector<double> baseline_samples(const BaselineSpec& b, const Grid& grid) {
  const int n = grid.n_points;
  std::vector<double> g0(n, 0.0);
  switch (b.kind) {
    case BaselineSpec::Kind::none:
      break;
    case BaselineSpec::Kind::gaussian:
      for (int j = 0; j < n; ++j) {
        double s = grid.x(j) / b.width;
        g0[j] = b.amplitude * std::exp(-s * s);
      }
      break;
    case BaselineSpec::Kind::band: {
      // Spectrum-defined profile: a real even triangle around |p| = center,
      // so the discrete support is exactly ||p_k| - center| < halfwidth.
      SpectralField s;
      s.c.resize(n);
      for (int i = 0; i < n; ++i) {
        double r = 1.0 - std::abs(std::abs(grid.p(i)) - b.center) / b.halfwidth;
        s.c[i] = r > 0.0 ? b.amplitude * r / kSqrt2Pi : 0.0;
      }
      g0 = inverse_transform(s, grid);
      break;
    }
    case BaselineSpec::Kind::tabulated:
      if (static_cast<int>(b.samples.size()) != n)
        throw DimensionError("baseline samples do not match the grid");
      g0 = b.samples;
      break;
  }
  for (int j = 0; j < n; ++j)
    if (!std::isfinite(g0[j]))
      throw DataError("baseline profile is non-finite at node " + std::to_string(j));
  return g0;
}

NonlinearitySpec finish(NonlinearitySpec spec, const BaselineSpec& b, const Grid& grid,
                        double declared_l, double declared_k, double natural) {
  spec.baseline = baseline_samples(b, grid);
  spec.baseline_spectrum = forward_transform(spec.baseline, grid);
  spec.growth_offset.resize(spec.baseline.size());
  for (size_t j = 0; j < spec.baseline.size(); ++j)
    spec.growth_offset[j] = std::abs(spec.baseline[j]);
  spec.lipschitz = declared_l > 0.0 ? declared_l : std::max(natural, kFloor);
  spec.growth_k = declared_k > 0.0 ? declared_k : std::max(natural, kFloor);
  // h in L2 reduces to finiteness on the grid; evaluating the norm enforces it.
  (void)l2_norm(spec.growth_offset, grid);
  return spec;
}

}  // namespace

NonlinearitySpec make_linear(double c, const BaselineSpec& baseline, const Grid& grid,
                             double declared_l, double declared_k) {
  NonlinearitySpec spec;
  spec.kind = NonlinearityKind::linear;
  spec.coeff = c;
  spec.label = "linear";
  spec.core = [c](double u) { return c * u; };
  return finish(std::move(spec), baseline, grid, declared_l, declared_k, std::abs(c));
}

NonlinearitySpec make_saturating(double k, const BaselineSpec& baseline, const Grid& grid,
                                 double declared_l, double declared_k) {
  if (k < 0.0) throw ParameterError("saturating rate: slope scale must be >= 0");
  NonlinearitySpec spec;
  spec.kind = NonlinearityKind::saturating;
  spec.coeff = k;
  spec.label = "saturating";
  spec.core = [k](double u) { return k * u / (1.0 + u * u); };
  return finish(std::move(spec), baseline, grid, declared_l, declared_k, k);
}

NonlinearitySpec make_sine(double k, const BaselineSpec& baseline, const Grid& grid,
                           double declared_l, double declared_k) {
  if (k < 0.0) throw ParameterError("sine rate: slope scale must be >= 0");
  NonlinearitySpec spec;
  spec.kind = NonlinearityKind::sine;
  spec.coeff = k;
  spec.label = "sine";
  spec.core = [k](double u) { return k * std::sin(u); };
  return finish(std::move(spec), baseline, grid, declared_l, declared_k, k);
}

std::vector<double> evaluate(const NonlinearitySpec& spec, std::span<const double> field,
                             const Grid& grid) {
  const int n = grid.n_points;
  if (static_cast<int>(field.size()) != n || static_cast<int>(spec.baseline.size()) != n)
    throw DimensionError("evaluate: field length does not match grid");
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    out[j] = spec.eval(field[j], j);
    if (!std::isfinite(out[j]))
      throw DataError("rate evaluation produced a non-finite value at x = " +
                      std::to_string(grid.x(j)) + " (node " + std::to_string(j) + ")");
  }
  return out;
}

namespace {

// Additive recurrence on the 3-torus (plastic-constant steps): deterministic,
// well spread, no RNG state.
struct Kronecker3 {
  double a = 0.0, b = 0.0, c = 0.0;
  void step() {
    a = std::fmod(a + 0.8191725133961645, 1.0);
    b = std::fmod(b + 0.6710436067037893, 1.0);
    c = std::fmod(c + 0.5497004779019703, 1.0);
  }
};

}  // namespace

double estimate_lipschitz(const NonlinearitySpec& spec, double u_lo, double u_hi,
                          int samples, const Grid& grid) {
  if (!(u_hi > u_lo)) throw ParameterError("estimate_lipschitz: degenerate u range");
  if (samples < 1000) throw ParameterError("estimate_lipschitz: need at least 1e3 samples");

  const int n = grid.n_points;
  double best = 0.0, wu1 = 0.0, wu2 = 0.0;
  int wj = 0;
  auto consider = [&](double u1, double u2, int j) {
    double du = std::abs(u1 - u2);
    if (du < 1e-12) return;
    double q = std::abs(spec.eval(u1, j) - spec.eval(u2, j)) / du;
    if (q > best) {
      best = q;
      wu1 = u1;
      wu2 = u2;
      wj = j;
    }
  };

  Kronecker3 seq;
  for (int s = 0; s < samples; ++s) {
    seq.step();
    double u1 = u_lo + seq.a * (u_hi - u_lo);
    double u2 = u_lo + seq.b * (u_hi - u_lo);
    int j = static_cast<int>(seq.c * n) % n;
    consider(u1, u2, j);
  }
  // Centered small increments pick up the derivative supremum that pair
  // sampling reaches only slowly.
  const int fine = std::max(samples / 4, 1000);
  const double eps = 1e-5 * (u_hi - u_lo);
  for (int s = 0; s <= fine; ++s) {
    double u = u_lo + (u_hi - u_lo) * (static_cast<double>(s) / fine);
    consider(u - eps, u + eps, (s * 7) % n);
  }

  if (best > spec.lipschitz * (1.0 + 1e-12))
    throw AssumptionViolation(
        "declared Lipschitz constant " + std::to_string(spec.lipschitz) +
        " violated: |F(u1,x)-F(u2,x)|/|u1-u2| = " + std::to_string(best) + " at u1 = " +
        std::to_string(wu1) + ", u2 = " + std::to_string(wu2) + ", x = " +
        std::to_string(grid.x(wj)));
  return best;
}

GrowthReport verify_growth(const NonlinearitySpec& spec, double u_lo, double u_hi,
                           int samples, const Grid& grid) {
  const int n = grid.n_points;
  GrowthReport report;
  double worst_margin = std::numeric_limits<double>::infinity();
  Kronecker3 seq;
  for (int s = 0; s < samples; ++s) {
    seq.step();
    double u = u_lo + seq.a * (u_hi - u_lo);
    int j = static_cast<int>(seq.c * n) % n;
    double lhs = std::abs(spec.eval(u, j));
    double rhs = spec.growth_k * std::abs(u) + spec.growth_offset[j];
    ++report.checked;
    double margin = rhs - lhs + 1e-12 * (1.0 + rhs);
    if (margin < worst_margin) {
      worst_margin = margin;
      report.witness_u = u;
      report.witness_x = grid.x(j);
      report.lhs = lhs;
      report.rhs = rhs;
    }
  }
  report.passed = worst_margin >= 0.0;
  return report;
}

}  // namespace dkpp
