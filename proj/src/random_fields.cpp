#include "dkpp/random_fields.hpp"

#include <cmath>

namespace dkpp {

SmoothSpaceTimeField random_smooth_field(const Grid& grid, const TimeWindow& window,
                                         std::mt19937_64& rng, int n_modes,
                                         int max_wavenumber) {
  const int n = grid.n_points;
  max_wavenumber = std::min(max_wavenumber, grid.n_points / 4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> kdist(0, max_wavenumber);

  struct Mode {
    double amp, p, theta, omega, chi;
  };
  std::vector<Mode> modes(n_modes);
  for (auto& md : modes) {
    int k = kdist(rng);
    md.amp = (2.0 * unif(rng) - 1.0) / (1.0 + k * k);
    md.p = grid.dp() * k;
    md.theta = 2.0 * M_PI * unif(rng);
    md.omega = 6.0 * unif(rng) / window.horizon;
    md.chi = 2.0 * M_PI * unif(rng);
  }

  SmoothSpaceTimeField out;
  out.values = SpaceTimeField(window.levels(), n);
  out.rate = SpaceTimeField(window.levels(), n);
  for (int m = 0; m < window.levels(); ++m) {
    double t = window.t(m);
    auto v = out.values.level(m);
    auto r = out.rate.level(m);
    for (int j = 0; j < n; ++j) {
      double x = grid.x(j);
      double val = 0.0, rate = 0.0;
      for (const auto& md : modes) {
        double sx = std::cos(md.p * x + md.theta);
        val += md.amp * sx * std::cos(md.omega * t + md.chi);
        rate += -md.amp * md.omega * sx * std::sin(md.omega * t + md.chi);
      }
      v[j] = val;
      r[j] = rate;
    }
  }
  return out;
}

}  // namespace dkpp
