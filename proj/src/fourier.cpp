#include "dkpp/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace dkpp {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2*pi)

// Unnormalized complex DFT pair of a fixed size.  Plans are created once per
// size under a global mutex (the FFTW planner is not thread-safe); execution
// through fftw_execute_dft on caller buffers is safe from many threads.
class DftPlan {
 public:
  explicit DftPlan(int n) : n_(n) {
    in_ = fftw_alloc_complex(static_cast<size_t>(n));
    out_ = fftw_alloc_complex(static_cast<size_t>(n));
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft_1d(n, in_, out_, FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_1d(n, in_, out_, FFTW_BACKWARD, flags);
  }

  ~DftPlan() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(in_);
    fftw_free(out_);
  }

  DftPlan(const DftPlan&) = delete;
  DftPlan& operator=(const DftPlan&) = delete;

  // out_m = sum_j in_j e^{-2 pi i j m / n}
  void forward(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(forward_,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

  // out_j = sum_m in_m e^{+2 pi i j m / n}
  void backward(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(backward_,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

 private:
  int n_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan forward_;
  fftw_plan backward_;
};

const DftPlan& plan_for(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<DftPlan>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(n);
  if (it == registry.end())
    it = registry.emplace(n, std::make_unique<DftPlan>(n)).first;
  return *it->second;
}

// Storage index i holds wavenumber k = i - N/2; the matching DFT bin is
// k mod N = (i + N/2) mod N, and the node offset x_0 = -L contributes the
// exact phase e^{i pi k} = (-1)^k.
inline int dft_bin(int i, int n) { return (i + n / 2) % n; }
inline double parity(int i, int n) { return ((i - n / 2) % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

SpectralField forward_transform(std::span<const double> field, const Grid& grid) {
  const int n = grid.n_points;
  if (static_cast<int>(field.size()) != n)
    throw DimensionError("forward_transform: field length does not match grid");
  std::vector<std::complex<double>> buf(n), dft(n);
  for (int j = 0; j < n; ++j) buf[j] = field[j];
  plan_for(n).forward(buf.data(), dft.data());

  SpectralField spec;
  spec.c.resize(n);
  const double scale = grid.dx() * kInvSqrt2Pi;
  for (int i = 0; i < n; ++i) spec.c[i] = scale * parity(i, n) * dft[dft_bin(i, n)];
  return spec;
}

std::vector<std::complex<double>> inverse_transform_complex(const SpectralField& spec,
                                                            const Grid& grid) {
  const int n = grid.n_points;
  if (spec.size() != n)
    throw DimensionError("inverse_transform: spectrum length does not match grid");
  std::vector<std::complex<double>> buf(n), out(n);
  for (int i = 0; i < n; ++i) buf[dft_bin(i, n)] = parity(i, n) * spec.c[i];
  plan_for(n).backward(buf.data(), out.data());

  const double scale = grid.dp() * kInvSqrt2Pi;
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> inverse_transform(const SpectralField& spec, const Grid& grid) {
  auto z = inverse_transform_complex(spec, grid);
  std::vector<double> out(z.size());
  for (size_t j = 0; j < z.size(); ++j) out[j] = z[j].real();
  return out;
}

std::vector<double> apply_fractional_laplacian(std::span<const double> field,
                                               const Grid& grid, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ParameterError("fractional exponent alpha must lie in (0, 1]");
  SpectralField spec = forward_transform(field, grid);
  for (int i = 0; i < spec.size(); ++i)
    spec.c[i] *= std::pow(std::abs(grid.p(i)), 2.0 * alpha);
  return inverse_transform(spec, grid);
}

double l2_norm(std::span<const double> field, const Grid& grid) {
  double acc = 0.0;
  for (size_t j = 0; j < field.size(); ++j) {
    if (!std::isfinite(field[j]))
      throw DataError("l2_norm: non-finite sample at index " + std::to_string(j));
    acc += field[j] * field[j];
  }
  return std::sqrt(grid.dx() * acc);
}

double l1_norm(std::span<const double> field, const Grid& grid) {
  double acc = 0.0;
  for (double v : field) {
    if (!std::isfinite(v)) throw DataError("l1_norm: non-finite sample");
    acc += std::abs(v);
  }
  return grid.dx() * acc;
}

double l2_norm_spectral(const SpectralField& spec, const Grid& grid) {
  double acc = 0.0;
  for (const auto& c : spec.c) acc += std::norm(c);
  return std::sqrt(grid.dp() * acc);
}

double h2alpha_norm(std::span<const double> field, const Grid& grid, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ParameterError("fractional exponent alpha must lie in (0, 1]");
  double l2 = l2_norm(field, grid);
  SpectralField spec = forward_transform(field, grid);
  double acc = 0.0;
  for (int i = 0; i < spec.size(); ++i) {
    double mult = std::pow(std::abs(grid.p(i)), 2.0 * alpha);
    acc += mult * mult * std::norm(spec.c[i]);
  }
  return std::sqrt(l2 * l2 + grid.dp() * acc);
}

Symbol full_symbol(const Grid& grid, double alpha, double a, double b) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ParameterError("fractional exponent alpha must lie in (0, 1]");
  Symbol s;
  s.m.resize(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    double p = grid.p(i);
    double drift = (i == grid.nyquist_index()) ? 0.0 : b * p;
    s.m[i] = std::complex<double>(a - std::pow(std::abs(p), 2.0 * alpha), drift);
  }
  return s;
}

SpectralField apply_symbol(const Symbol& symbol, const SpectralField& spec) {
  if (symbol.m.size() != spec.c.size())
    throw DimensionError("apply_symbol: size mismatch");
  SpectralField out;
  out.c.resize(spec.c.size());
  for (size_t i = 0; i < spec.c.size(); ++i) out.c[i] = symbol.m[i] * spec.c[i];
  return out;
}

}  // namespace dkpp
