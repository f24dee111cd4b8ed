#include "dkpp/spacetime.hpp"

#include <algorithm>

#include "dkpp/fourier.hpp"

namespace dkpp {

SpaceTimeField SpaceTimeField::constant_in_time(std::span<const double> level0,
                                                int levels) {
  SpaceTimeField f(levels, static_cast<int>(level0.size()));
  for (int m = 0; m < levels; ++m)
    std::copy(level0.begin(), level0.end(), f.level(m).begin());
  return f;
}

const std::vector<std::complex<double>>& SpaceTimeField::spectrum(int m,
                                                                  const Grid& grid) const {
  if (spectra_.empty()) spectra_.resize(levels_);
  auto& slot = spectra_[m];
  if (slot.empty()) slot = forward_transform(level(m), grid).c;
  return slot;
}

SpaceTimeField SpaceTimeField::difference(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (!a.same_shape(b)) throw DimensionError("field difference: shape mismatch");
  SpaceTimeField d(a.levels_, a.n_);
  for (size_t i = 0; i < d.values_.size(); ++i) d.values_[i] = a.values_[i] - b.values_[i];
  return d;
}

}  // namespace dkpp
