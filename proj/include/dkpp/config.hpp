#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "dkpp/picard.hpp"
#include "dkpp/problem.hpp"

namespace dkpp {

/// One run configuration: a single versioned JSON document.  Unknown keys
/// are errors, not warnings, so a config is either fully understood or
/// rejected.  With the seed fixed, every derived artifact is bit-identical
/// across runs.
struct RunConfig {
  // grid
  double half_width = 16.0 * M_PI;
  int n_points = 256;
  // problem coefficients
  double alpha = 0.5;
  double a = 0.0;
  double b = 0.0;
  bool classical_mode = false;
  // kernel descriptor
  KernelKind kernel_kind = KernelKind::gaussian;
  KernelParams kernel_params;
  std::string kernel_csv;  // tabulated
  // nonlinearity descriptor
  NonlinearityKind rate_kind = NonlinearityKind::linear;
  double rate_coeff = 0.05;
  double declared_lipschitz = -1.0;  // <= 0: use the analytic default
  double declared_growth_k = -1.0;
  BaselineSpec baseline;
  std::string baseline_csv;
  // initial condition
  enum class IcKind { gaussian, zero, cosine, csv } ic_kind = IcKind::gaussian;
  double ic_amplitude = 1.0;
  double ic_width = 1.0;     // gaussian: amplitude * exp(-(x/width)^2)
  double ic_wavenumber = 1;  // cosine: amplitude * cos(p_k x), integer k
  std::string ic_csv;
  // window
  double horizon = 1.0;
  int steps = 1000;
  // solver
  SolverConfig solver;
  // run
  std::string output_dir;
  std::uint64_t seed = 0;
};

RunConfig load_run_config(const std::filesystem::path& json_path);
RunConfig parse_run_config(const std::string& json_text);

struct BuiltProblem {
  ProblemSpec problem;
  TimeWindow window;
};

/// Instantiates kernel, nonlinearity, and initial condition on the grid.
/// Kernel admissibility failures surface here as AdmissibilityError.
BuiltProblem build_problem(const RunConfig& config);

/// Two-column decimal CSV (x, value); the row count must equal N and the
/// abscissae must match the grid nodes.
void load_two_column_csv(const std::filesystem::path& path, std::vector<double>& x,
                         std::vector<double>& value);

}  // namespace dkpp
