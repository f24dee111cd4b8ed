#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dkpp/grid.hpp"

namespace dkpp {

/// Uniform time levels t_m = T * m / M on [0, T].  The horizon and step
/// count are the stored representation; dt and the level times are derived
/// so that t(M) == T exactly.
struct TimeWindow {
  double horizon = 0.0;  // T > 0
  int steps = 0;         // M >= 1

  TimeWindow(double T, int M) : horizon(T), steps(M) {
    if (!(T > 0.0)) throw ParameterError("time window: horizon must be positive");
    if (M < 1) throw ParameterError("time window: need at least one step");
  }

  double dt() const { return horizon / steps; }
  double t(int m) const { return horizon * (static_cast<double>(m) / steps); }
  int levels() const { return steps + 1; }

  bool operator==(const TimeWindow&) const = default;
};

/// Real samples u(x_j, t_m) on a grid x window block, time-major.  Spectra
/// per level are cached lazily; the cache is not synchronized, so populate
/// it from one thread (algorithms that parallelize do their own transforms).
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  SpaceTimeField(int levels, int n_points)
      : levels_(levels), n_(n_points), values_(static_cast<size_t>(levels) * n_points, 0.0) {}

  static SpaceTimeField constant_in_time(std::span<const double> level0, int levels);

  int levels() const { return levels_; }
  int n_points() const { return n_; }

  std::span<double> level(int m) {
    spectra_.clear();  // writable access invalidates cached spectra
    return {values_.data() + static_cast<size_t>(m) * n_, static_cast<size_t>(n_)};
  }
  std::span<const double> level(int m) const {
    return {values_.data() + static_cast<size_t>(m) * n_, static_cast<size_t>(n_)};
  }

  /// Lazily cached forward transform of level m.
  const std::vector<std::complex<double>>& spectrum(int m, const Grid& grid) const;

  /// Pointwise a - b (used for residuals and seam checks).
  static SpaceTimeField difference(const SpaceTimeField& a, const SpaceTimeField& b);

  bool same_shape(const SpaceTimeField& other) const {
    return levels_ == other.levels_ && n_ == other.n_;
  }

 private:
  int levels_ = 0;
  int n_ = 0;
  std::vector<double> values_;
  mutable std::vector<std::vector<std::complex<double>>> spectra_;
};

}  // namespace dkpp
