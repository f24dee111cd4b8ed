#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dkpp/certificate.hpp"
#include "dkpp/duhamel.hpp"
#include "dkpp/problem.hpp"

namespace dkpp {

/// Space-time norm sqrt(||du/dt||^2 + ||d2u/dx2||^2 + ||u||^2) over
/// L2(R x [0,T]): spatial pieces by Parseval (p^2 multiplier for the second
/// derivative), time integral by the trapezoid rule over the stored levels.
double w122_norm(const SpaceTimeField& u, const SpaceTimeField& du_dt, const Grid& grid,
                 const TimeWindow& window);

enum class InitialGuess { u0_constant, zero, random };

struct SolverConfig {
  double tolerance = 1e-10;  // W^{1,2,2} residual target
  int max_iter = 200;
  double ratio_slack = 0.05;  // allowance over C for discretization effects
  InitialGuess guess = InitialGuess::u0_constant;
  bool allow_uncertified = false;
  bool compute_duhamel_residual = true;  // O(M^2 N); switch off for sweeps
  std::uint64_t seed = 0;                // drives the random initial guess
};

enum class Nontriviality { nontrivial_guaranteed, inconclusive };

struct NontrivialityDetail {
  Nontriviality verdict = Nontriviality::inconclusive;
  int kernel_support = 0;    // modes with |G_hat| above threshold
  int baseline_support = 0;  // modes of (F(0,.))^hat above threshold
  int intersection = 0;
  int longest_run = 0;  // longest contiguous run of shared modes
};

struct SolveReport {
  bool converged = false;
  /// Picard steps to the fixed point; a final exactly-zero residual is the
  /// confirmation step and is not counted (the map was already stationary).
  int iterations = 0;
  double tolerance = 0.0;
  std::vector<double> residuals;  // ||u^{n+1} - u^n||_{W^{1,2,2}}
  std::vector<double> ratios;     // successive residual quotients
  double max_ratio = 0.0;
  bool ratio_bound_ok = true;  // every ratio <= C + slack
  double duhamel_residual = -1.0;
  double final_l2 = 0.0;      // of u(., T)
  double final_h2alpha = 0.0; // of u(., T)
  double w122 = 0.0;          // of the full block
  ContractionCertificate certificate;
  NontrivialityDetail nontriviality;
  std::uint64_t seed = 0;
  std::string failure = "";  // non-empty when converged == false
};

struct SolveResult {
  SolveReport report;
  SpaceTimeField field;
  SpaceTimeField du_dt;
};

/// Picard iteration of the block map to its fixed point.  Refuses
/// inadmissible certificates unless allow_uncertified is set (throws
/// InadmissibleError).  Non-convergence within max_iter is reported through
/// report.converged / report.failure, with all artifacts populated.
SolveResult solve(const ProblemSpec& problem, const TimeWindow& window,
                  const SolverConfig& config);

struct MarchResult {
  std::vector<SolveResult> windows;
  std::vector<double> window_start;  // absolute start time per window
  std::vector<double> seam_jumps;    // L2 jump against the previous window
  bool completed = false;
  int failed_window = -1;
};

/// Repeated window solves covering [0, total_time]; each window starts from
/// the previous final level.  Requires step_horizon <= 0.9 * max_horizon
/// unless config.allow_uncertified is set.  Inner non-convergence stops the
/// march and records the window index.
MarchResult march_global(const ProblemSpec& problem, double step_horizon,
                         int steps_per_window, double total_time,
                         const SolverConfig& config);

/// Grid surrogate of the support-overlap condition: the verdict is
/// nontrivial_guaranteed when supp (F(0,.))^hat and supp G_hat share at
/// least two contiguous modes (both supports thresholded at 1e-12 of their
/// peak), inconclusive otherwise.
NontrivialityDetail check_nontriviality(const ProblemSpec& problem);

}  // namespace dkpp
