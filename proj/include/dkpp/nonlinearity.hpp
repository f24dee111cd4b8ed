#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dkpp/fourier.hpp"
#include "dkpp/grid.hpp"

namespace dkpp {

enum class NonlinearityKind { linear, saturating, sine };

/// Additive baseline profile g0(x); the rate is F(u, x) = core(u) + g0(x),
/// so F(0, .) = g0 and the declared growth offset is h = |g0|.
struct BaselineSpec {
  enum class Kind { none, gaussian, band, tabulated } kind = Kind::none;
  double amplitude = 0.0;
  double width = 1.0;      // gaussian: amplitude * exp(-(x/width)^2)
  double center = 3.0;     // band: spectral triangle around |p| = center
  double halfwidth = 1.0;  // band: spectral support is ||p| - center| <= halfwidth
  std::vector<double> samples;  // tabulated
};

/// The proliferation rate F(u, x): a globally Lipschitz core in u plus an
/// additive baseline in x.  Carries the declared sublinear-growth data
/// (growth_k, growth offset h >= 0) and the declared Lipschitz constant.
/// Measurability in x is assumed by construction (the baseline is sampled);
/// continuity in u holds for every built-in core.
struct NonlinearitySpec {
  NonlinearityKind kind = NonlinearityKind::linear;
  double coeff = 0.0;  // c for linear, slope scale for saturating/sine
  std::string label;

  std::function<double(double)> core;  // u -> core rate, core(0) = 0
  std::vector<double> baseline;        // g0(x_j) = F(0, x_j)
  SpectralField baseline_spectrum;
  std::vector<double> growth_offset;  // h(x_j) = |g0(x_j)|

  double growth_k = 0.0;   // declared k in |F| <= k|u| + h
  double lipschitz = 0.0;  // declared l in |F(u1,.) - F(u2,.)| <= l|u1-u2|

  double eval(double u, int j) const { return core(u) + baseline[j]; }
};

/// Built-in factories.  Declared constants default to the analytic values
/// (|c| for linear, the slope scale for saturating/sine, floored at 1e-12 to
/// stay positive); pass declared_l / declared_k to override.
NonlinearitySpec make_linear(double c, const BaselineSpec& baseline, const Grid& grid,
                             double declared_l = -1.0, double declared_k = -1.0);
NonlinearitySpec make_saturating(double k, const BaselineSpec& baseline, const Grid& grid,
                                 double declared_l = -1.0, double declared_k = -1.0);
NonlinearitySpec make_sine(double k, const BaselineSpec& baseline, const Grid& grid,
                           double declared_l = -1.0, double declared_k = -1.0);

/// Pointwise application F(u(x_j), x_j); throws DataError naming the node on
/// a non-finite result.
std::vector<double> evaluate(const NonlinearitySpec& spec, std::span<const double> field,
                             const Grid& grid);

/// Max sampled difference quotient over a deterministic low-discrepancy
/// sweep of (u1, u2, x) triples plus centered small-increment quotients.
/// Sampling can only under-estimate the true supremum; if the estimate
/// nevertheless exceeds the declared constant, throws AssumptionViolation
/// carrying the witnessing triple.
double estimate_lipschitz(const NonlinearitySpec& spec, double u_lo, double u_hi,
                          int samples, const Grid& grid);

struct GrowthReport {
  bool passed = true;
  long checked = 0;
  // witness of the worst violation (or tightest margin when passed)
  double witness_u = 0.0;
  double witness_x = 0.0;
  double lhs = 0.0;  // |F(u, x)|
  double rhs = 0.0;  // k|u| + h(x)
};

/// Samples |F(u, x)| <= k|u| + h(x) over the same deterministic sweep.
GrowthReport verify_growth(const NonlinearitySpec& spec, double u_lo, double u_hi,
                           int samples, const Grid& grid);

}  // namespace dkpp
