#include "dkpp/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace dkpp {

double w122_norm(const SpaceTimeField& u, const SpaceTimeField& du_dt, const Grid& grid,
                 const TimeWindow& window) {
  if (!u.same_shape(du_dt) || u.levels() != window.levels() ||
      u.n_points() != grid.n_points)
    throw DimensionError("w122_norm: fields do not match the window/grid");

  const int n = grid.n_points;
  const double dt = window.dt();
  double total = 0.0;
  for (int m = 0; m < window.levels(); ++m) {
    double a = l2_norm(u.level(m), grid);
    double c = l2_norm(du_dt.level(m), grid);
    const auto& uh = u.spectrum(m, grid);
    double b2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double p2 = grid.p(i) * grid.p(i);
      b2 += p2 * p2 * std::norm(uh[i]);
    }
    b2 *= grid.dp();
    double level_sq = a * a + b2 + c * c;
    double w = (m == 0 || m == window.steps) ? 0.5 * dt : dt;
    total += w * level_sq;
  }
  return std::sqrt(total);
}

namespace {

SpaceTimeField initial_guess_field(const ProblemSpec& problem, const TimeWindow& window,
                                   const SolverConfig& config) {
  const int n = problem.grid.n_points;
  switch (config.guess) {
    case InitialGuess::u0_constant:
      return SpaceTimeField::constant_in_time(problem.initial_condition,
                                              window.levels());
    case InitialGuess::zero:
      return SpaceTimeField(window.levels(), n);
    case InitialGuess::random: {
      std::mt19937_64 rng(config.seed);
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      SpaceTimeField f(window.levels(), n);
      for (int m = 0; m < window.levels(); ++m) {
        auto row = f.level(m);
        for (int j = 0; j < n; ++j) row[j] = unif(rng);
      }
      return f;
    }
  }
  throw ParameterError("unknown initial guess kind");
}

}  // namespace

SolveResult solve(const ProblemSpec& problem, const TimeWindow& window,
                  const SolverConfig& config) {
  problem.validate();
  if (!(config.tolerance > 0.0)) throw ParameterError("solve: tolerance must be positive");

  SolveReport report;
  report.tolerance = config.tolerance;
  report.seed = config.seed;
  report.certificate = certify(problem, window);
  if (!report.certificate.admissible && !config.allow_uncertified)
    throw InadmissibleError(
        "contraction certificate is inadmissible (C = " +
        std::to_string(report.certificate.constant) +
        " >= 1); pass the explicit override to iterate anyway");

  const Grid& grid = problem.grid;
  const double ratio_cap = report.certificate.constant + config.ratio_slack;

  SpaceTimeField prev = initial_guess_field(problem, window, config);
  // Every built-in guess is frozen in time, so its rate of change is zero.
  SpaceTimeField prev_rate(window.levels(), grid.n_points);

  SpaceTimeField current, current_rate;
  bool converged = false;
  int performed = 0;
  for (int iter = 1; iter <= config.max_iter; ++iter) {
    current = apply_map(problem, window, prev);
    current_rate = time_derivative(problem, window, current, prev);
    SpaceTimeField diff = SpaceTimeField::difference(current, prev);
    SpaceTimeField diff_rate = SpaceTimeField::difference(current_rate, prev_rate);
    double residual = w122_norm(diff, diff_rate, grid, window);

    if (!report.residuals.empty()) {
      double denom = report.residuals.back();
      if (denom > 1e2 * std::numeric_limits<double>::epsilon())
        report.ratios.push_back(residual / denom);
    }
    report.residuals.push_back(residual);
    performed = iter;
    prev = std::move(current);
    prev_rate = std::move(current_rate);

    if (residual < config.tolerance) {
      converged = true;
      report.iterations = (residual == 0.0) ? iter - 1 : iter;
      break;
    }
  }

  report.converged = converged;
  if (!converged) {
    report.iterations = performed;
    report.failure = "picard iteration did not reach tolerance within max_iter";
  }
  for (double r : report.ratios) report.max_ratio = std::max(report.max_ratio, r);
  report.ratio_bound_ok = report.max_ratio <= ratio_cap;

  if (config.compute_duhamel_residual && window.steps >= 1) {
    // At the fixed point u solves the map with forcing from itself.
    report.duhamel_residual = duhamel_residual(problem, window, prev, prev);
  }
  report.final_l2 = l2_norm(prev.level(window.steps), grid);
  report.final_h2alpha = h2alpha_norm(prev.level(window.steps), grid, problem.alpha);
  report.w122 = w122_norm(prev, prev_rate, grid, window);
  report.nontriviality = check_nontriviality(problem);

  SolveResult result;
  result.report = std::move(report);
  result.field = std::move(prev);
  result.du_dt = std::move(prev_rate);
  return result;
}

MarchResult march_global(const ProblemSpec& problem, double step_horizon,
                         int steps_per_window, double total_time,
                         const SolverConfig& config) {
  problem.validate();
  if (!(step_horizon > 0.0)) throw ParameterError("march: step horizon must be positive");
  if (total_time < step_horizon - 1e-12 * step_horizon)
    throw ParameterError("march: total_time must be at least one window");
  if (!config.allow_uncertified) {
    double tmax = max_horizon(problem);
    if (step_horizon > 0.9 * tmax)
      throw ParameterError(
          "march: step horizon exceeds 0.9 x the certified maximal horizon (" +
          std::to_string(0.9 * tmax) + ")");
  }

  MarchResult out;
  ProblemSpec window_problem = problem;
  double t0 = 0.0;
  int index = 0;
  while (t0 < total_time - 1e-12 * total_time) {
    double span = std::min(step_horizon, total_time - t0);
    int steps = std::max(
        1, static_cast<int>(std::lround(steps_per_window * span / step_horizon)));
    TimeWindow window(span, steps);

    SolveResult solved = solve(window_problem, window, config);
    out.window_start.push_back(t0);
    if (index > 0) {
      // Level 0 is pinned to the previous final level, so the seam jump is
      // zero by construction; it is still measured and recorded.
      const auto& prev = out.windows.back().field;
      auto a = solved.field.level(0);
      auto b = prev.level(prev.levels() - 1);
      std::vector<double> d(a.size());
      for (size_t j = 0; j < a.size(); ++j) d[j] = a[j] - b[j];
      out.seam_jumps.push_back(l2_norm(d, problem.grid));
    }
    bool ok = solved.report.converged;
    out.windows.push_back(std::move(solved));
    if (!ok) {
      out.failed_window = index;
      return out;
    }
    auto last = out.windows.back().field.level(steps);
    window_problem.initial_condition.assign(last.begin(), last.end());
    t0 += span;
    ++index;
  }
  out.completed = true;
  return out;
}

NontrivialityDetail check_nontriviality(const ProblemSpec& problem) {
  const int n = problem.grid.n_points;
  const auto& ghat = problem.kernel.spectrum.c;
  const auto& fhat = problem.nonlinearity.baseline_spectrum.c;

  auto support = [n](const std::vector<std::complex<double>>& c) {
    double peak = 0.0;
    for (const auto& v : c) peak = std::max(peak, std::abs(v));
    std::vector<char> mask(n, 0);
    if (peak == 0.0) return mask;
    for (int i = 0; i < n; ++i) mask[i] = std::abs(c[i]) > 1e-12 * peak ? 1 : 0;
    return mask;
  };

  auto gm = support(ghat);
  auto fm = support(fhat);
  NontrivialityDetail detail;
  int run = 0;
  for (int i = 0; i < n; ++i) {
    detail.kernel_support += gm[i];
    detail.baseline_support += fm[i];
    if (gm[i] && fm[i]) {
      ++detail.intersection;
      ++run;
      detail.longest_run = std::max(detail.longest_run, run);
    } else {
      run = 0;
    }
  }
  detail.verdict = detail.longest_run >= 2 ? Nontriviality::nontrivial_guaranteed
                                           : Nontriviality::inconclusive;
  return detail;
}

}  // namespace dkpp
