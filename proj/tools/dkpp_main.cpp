// dkpp: certify, solve, march, and study the nonlocal reaction-diffusion
// problem with fractional diffusion and drift on a periodic box.
//
// Exit codes: 0 success, 1 validation error, 2 inadmissible certificate,
// 3 non-convergence.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <json.hpp>

#include "dkpp/config.hpp"
#include "dkpp/oracles.hpp"
#include "dkpp/random_fields.hpp"
#include "dkpp/report_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dkpp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInadmissible = 2;
constexpr int kExitNoConvergence = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool verify = false;
  bool allow_uncertified = false;
};

void warn_on_boundary_mass(const ProblemSpec& problem) {
  auto check = [&](const std::vector<double>& f, const char* name) {
    double peak = 0.0;
    for (double v : f) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return;
    double edge = std::max(std::abs(f.front()), std::abs(f.back()));
    if (edge > 1e-8 * peak)
      std::cerr << "warning: " << name << " carries " << edge / peak
                << " of its peak at the box boundary; enlarge half_width for "
                   "spectral accuracy\n";
  };
  check(problem.initial_condition, "initial condition");
  check(problem.kernel.samples, "kernel");
}

fs::path prepare_out_dir(const RunConfig& cfg, const CommonOpts& opts) {
  std::string dir = !opts.out_dir.empty() ? opts.out_dir : cfg.output_dir;
  if (dir.empty()) throw ConfigError("no output directory (set --out or output.directory)");
  fs::create_directories(dir);
  return dir;
}

RunConfig load_with_overrides(const CommonOpts& opts) {
  RunConfig cfg = load_run_config(opts.config_path);
  if (opts.seed_set) {
    cfg.seed = opts.seed;
    cfg.solver.seed = opts.seed;
  }
  if (opts.allow_uncertified) cfg.solver.allow_uncertified = true;
  return cfg;
}

json assumption_checks(const ProblemSpec& problem, const RunConfig& cfg) {
  const Grid& grid = problem.grid;
  json j;
  j["kernel"]["l1_g"] = problem.kernel.l1_g;
  j["kernel"]["l1_g2"] = problem.kernel.l1_g2;
  j["kernel"]["Q"] = problem.kernel.q;
  j["kernel"]["has_negative_values"] = problem.kernel.has_negative_values;

  double est = estimate_lipschitz(problem.nonlinearity, -10.0, 10.0, 10000, grid);
  j["nonlinearity"]["lipschitz_declared"] = problem.nonlinearity.lipschitz;
  j["nonlinearity"]["lipschitz_estimate"] = est;
  auto growth = verify_growth(problem.nonlinearity, -10.0, 10.0, 10000, grid);
  j["nonlinearity"]["growth_pass"] = growth.passed;
  j["nonlinearity"]["growth_k"] = problem.nonlinearity.growth_k;
  j["nonlinearity"]["h_l2"] = l2_norm(problem.nonlinearity.growth_offset, grid);
  j["seed"] = cfg.seed;
  if (!growth.passed)
    throw AssumptionViolation("growth bound |F(u,x)| <= k|u| + h(x) fails at u = " +
                              std::to_string(growth.witness_u) + ", x = " +
                              std::to_string(growth.witness_x));
  return j;
}

json certificate_json(const ContractionCertificate& c) {
  json j;
  j["Q"] = c.q;
  j["lipschitz"] = c.lipschitz;
  j["growth_k"] = c.growth_k;
  j["a"] = c.a;
  j["b"] = c.b;
  j["horizon"] = c.horizon;
  j["constant"] = c.constant;
  j["admissible"] = c.admissible;
  j["margin"] = c.margin;
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

int cmd_certify(const CommonOpts& opts) {
  RunConfig cfg = load_with_overrides(opts);
  auto built = build_problem(cfg);
  warn_on_boundary_mass(built.problem);

  json checks = assumption_checks(built.problem, cfg);
  auto cert = certify(built.problem, built.window);
  double tmax = 0.0;
  if (built.problem.kernel.q * built.problem.nonlinearity.lipschitz < 1.0)
    tmax = max_horizon(built.problem);

  json doc;
  doc["certificate"] = certificate_json(cert);
  doc["max_horizon"] = tmax;
  doc["assumptions"] = checks;
  std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!opts.out_dir.empty() || !cfg.output_dir.empty()) {
    auto dir = prepare_out_dir(cfg, opts);
    write_text(dir / "certificate.json", text);
  }
  if (!cert.admissible) {
    std::cerr << "inadmissible: C = " << cert.constant
              << " >= 1; maximal certified horizon T_max = " << tmax << "\n";
    return kExitInadmissible;
  }
  return kExitOk;
}

int cmd_solve(const CommonOpts& opts) {
  RunConfig cfg = load_with_overrides(opts);
  auto built = build_problem(cfg);
  warn_on_boundary_mass(built.problem);
  auto dir = prepare_out_dir(cfg, opts);

  json checks = assumption_checks(built.problem, cfg);
  write_text(dir / "assumption_checks.json", checks.dump(2) + "\n");

  SolveResult result = solve(built.problem, built.window, cfg.solver);

  json extras;
  if (opts.verify) {
    extras["duhamel_residual"] = result.report.duhamel_residual;
    extras["max_ratio"] = result.report.max_ratio;
    extras["ratio_bound_ok"] = result.report.ratio_bound_ok;
    if (built.problem.nonlinearity.kind == NonlinearityKind::linear) {
      double num = 0.0, den = 0.0;
      const Grid& g = built.problem.grid;
      for (int m = 0; m <= built.window.steps; ++m) {
        auto exact = inverse_transform(
            oracle::linear_mode_solution(built.problem, built.window.t(m)), g);
        auto got = result.field.level(m);
        double tw =
            (m == 0 || m == built.window.steps) ? 0.5 * built.window.dt() : built.window.dt();
        for (int j = 0; j < g.n_points; ++j) {
          num += tw * (got[j] - exact[j]) * (got[j] - exact[j]);
          den += tw * exact[j] * exact[j];
        }
      }
      extras["oracle_comparison"]["method"] = "linear_mode_solution";
      extras["oracle_comparison"]["relative_l2_error"] =
          den > 0.0 ? std::sqrt(num / den) : 0.0;
    }
  }

  // report.json embeds the optional verification block deterministically
  json report_doc = json::parse(report_to_json(result.report));
  if (!extras.is_null()) report_doc["verification"] = extras;
  write_text(dir / "report.json", report_doc.dump(2) + "\n");
  write_residuals_csv(dir / "residuals.csv", result.report);
  write_field_snapshot(dir / "field.bin", result.field, built.problem.grid, built.window);

  std::cout << "solve: " << (result.report.converged ? "converged" : "NOT converged")
            << " in " << result.report.iterations
            << " iterations; C = " << result.report.certificate.constant
            << "; artifacts in " << dir.string() << "\n";
  return result.report.converged ? kExitOk : kExitNoConvergence;
}

int cmd_march(const CommonOpts& opts, double total_time) {
  RunConfig cfg = load_with_overrides(opts);
  auto built = build_problem(cfg);
  warn_on_boundary_mass(built.problem);
  auto dir = prepare_out_dir(cfg, opts);

  json checks = assumption_checks(built.problem, cfg);
  write_text(dir / "assumption_checks.json", checks.dump(2) + "\n");

  MarchResult march = march_global(built.problem, built.window.horizon,
                                   built.window.steps, total_time, cfg.solver);

  std::string seams = "window,start,seam_jump\n";
  char buf[64];
  for (size_t w = 0; w < march.windows.size(); ++w) {
    auto wdir = dir / ("window_" + std::to_string(w));
    fs::create_directories(wdir);
    const auto& solved = march.windows[w];
    write_report_json(wdir / "report.json", solved.report);
    write_residuals_csv(wdir / "residuals.csv", solved.report);
    TimeWindow wwin(solved.field.levels() > 1
                        ? built.window.horizon * (solved.field.levels() - 1) /
                              built.window.steps
                        : built.window.horizon,
                    solved.field.levels() - 1);
    write_field_snapshot(wdir / "field.bin", solved.field, built.problem.grid, wwin);
    std::snprintf(buf, sizeof(buf), "%.17g", march.window_start[w]);
    seams += std::to_string(w) + "," + buf + ",";
    if (w >= 1) {
      std::snprintf(buf, sizeof(buf), "%.17g", march.seam_jumps[w - 1]);
      seams += buf;
    }
    seams += "\n";
  }
  write_text(dir / "seams.csv", seams);

  if (!march.completed) {
    std::cerr << "march: window " << march.failed_window << " failed to converge\n";
    return kExitNoConvergence;
  }
  std::cout << "march: " << march.windows.size() << " windows to t = " << total_time
            << "; artifacts in " << dir.string() << "\n";
  return kExitOk;
}

int cmd_study(const CommonOpts& opts, const std::string& mode) {
  RunConfig cfg = load_with_overrides(opts);
  auto built = build_problem(cfg);
  auto dir = prepare_out_dir(cfg, opts);
  const Grid& g = built.problem.grid;
  char buf[192];

  if (mode == "dt") {
    // solve at M, 2M, 4M and fit the observed order on common levels
    std::vector<int> steps = {built.window.steps, 2 * built.window.steps,
                              4 * built.window.steps};
    std::vector<SolveResult> runs;
    SolverConfig sc = cfg.solver;
    sc.compute_duhamel_residual = false;
    for (int M : steps) runs.push_back(solve(built.problem, TimeWindow(built.window.horizon, M), sc));
    auto block_diff = [&](const SolveResult& fine, const SolveResult& coarse, int ratio) {
      double acc = 0.0;
      int M = coarse.field.levels() - 1;
      double dt = built.window.horizon / M;
      for (int m = 0; m <= M; ++m) {
        auto a = coarse.field.level(m);
        auto b = fine.field.level(m * ratio);
        double level = 0.0;
        for (int j = 0; j < g.n_points; ++j) {
          double d = a[j] - b[j];
          level += d * d;
        }
        acc += ((m == 0 || m == M) ? 0.5 * dt : dt) * g.dx() * level;
      }
      return std::sqrt(acc);
    };
    double e1 = block_diff(runs[1], runs[0], 2);
    double e2 = block_diff(runs[2], runs[1], 2);
    double order = std::log2(e1 / e2);
    std::string csv = "steps,dt,block_diff,order\n";
    for (int c = 0; c < 2; ++c) {
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,", steps[c],
                    built.window.horizon / steps[c], c == 0 ? e1 : e2);
      csv += buf;
      if (c == 1) {
        std::snprintf(buf, sizeof(buf), "%.17g", order);
        csv += buf;
      }
      csv += "\n";
    }
    write_text(dir / "study_dt.csv", csv);
    std::cout << "dt study: observed order " << order << "\n";
    return kExitOk;
  }

  if (mode == "N") {
    SolverConfig sc = cfg.solver;
    sc.compute_duhamel_residual = false;
    auto run = solve(built.problem, built.window, sc);
    std::string csv = "k,p,max_abs_coefficient\n";
    for (int i = 0; i < g.n_points; ++i) {
      double peak = 0.0;
      for (int m = 0; m <= built.window.steps; m += std::max(1, built.window.steps / 16)) {
        const auto& c = run.field.spectrum(m, g);
        peak = std::max(peak, std::abs(c[i]));
      }
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", g.wavenumber(i), g.p(i), peak);
      csv += buf;
    }
    write_text(dir / "study_N.csv", csv);
    std::cout << "N study: spectral decay table written\n";
    return kExitOk;
  }

  if (mode == "picard") {
    auto run = solve(built.problem, built.window, cfg.solver);
    auto cert = run.report.certificate;
    std::string csv = "iteration,residual,ratio,theoretical_cap\n";
    for (size_t i = 0; i < run.report.residuals.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%zu,%.17g,", i + 1, run.report.residuals[i]);
      csv += buf;
      if (i >= 1) {
        std::snprintf(buf, sizeof(buf), "%.17g", run.report.ratios[i - 1]);
        csv += buf;
      }
      std::snprintf(buf, sizeof(buf), ",%.17g\n", cert.constant + cfg.solver.ratio_slack);
      csv += buf;
    }
    write_text(dir / "study_picard.csv", csv);
    std::cout << "picard study: " << run.report.residuals.size() << " iterations\n";
    return kExitOk;
  }

  if (mode == "contraction") {
    auto cert = certify(built.problem, built.window);
    std::mt19937_64 rng(cfg.seed);
    std::string csv = "pair,measured_ratio,constant,cap,within\n";
    double worst = 0.0;
    const int pairs = 20;
    for (int q = 0; q < pairs; ++q) {
      auto v1 = random_smooth_field(g, built.window, rng);
      auto v2 = random_smooth_field(g, built.window, rng);
      auto u1 = apply_map(built.problem, built.window, v1.values);
      auto u2 = apply_map(built.problem, built.window, v2.values);
      auto d1 = time_derivative(built.problem, built.window, u1, v1.values);
      auto d2 = time_derivative(built.problem, built.window, u2, v2.values);
      double den = w122_norm(SpaceTimeField::difference(v1.values, v2.values),
                             SpaceTimeField::difference(v1.rate, v2.rate), g,
                             built.window);
      double num = w122_norm(SpaceTimeField::difference(u1, u2),
                             SpaceTimeField::difference(d1, d2), g, built.window);
      double ratio = den > 0.0 ? num / den : 0.0;
      worst = std::max(worst, ratio);
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%d\n", q, ratio,
                    cert.constant, cert.constant + cfg.solver.ratio_slack,
                    ratio <= cert.constant + cfg.solver.ratio_slack ? 1 : 0);
      csv += buf;
    }
    write_text(dir / "study_contraction.csv", csv);
    std::cout << "contraction study: max measured ratio " << worst << " vs C = "
              << cert.constant << "\n";
    return kExitOk;
  }

  throw ConfigError("unknown study mode \"" + mode + "\" (dt|N|picard|contraction)");
}

int cmd_emit_plot(const std::string& run_dir, const std::string& what,
                  const std::string& out_file) {
  std::string csv;
  if (what == "field")
    csv = emit_plot_field(run_dir);
  else if (what == "norms")
    csv = emit_plot_norms(run_dir);
  else if (what == "residuals")
    csv = emit_plot_residuals(run_dir);
  else
    throw ConfigError("unknown plot artifact \"" + what + "\" (field|norms|residuals)");
  if (out_file.empty())
    std::cout << csv;
  else
    write_text(out_file, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral solver and contraction certifier for a nonlocal "
               "reaction-diffusion-transport equation with fractional diffusion"};
  app.require_subcommand(1);

  CommonOpts opts;
  double total_time = 0.0;
  std::string mode, run_dir, what, out_file;

  auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
    if (needs_config)
      cmd->add_option("--config", opts.config_path, "JSON run configuration")->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "RNG seed override")
        ->each([&](const std::string&) { opts.seed_set = true; });
    cmd->add_flag("--verify", opts.verify, "include oracle and ratio checks in the report");
    cmd->add_flag("--allow-uncertified", opts.allow_uncertified,
                  "iterate even when the certificate is inadmissible");
  };

  auto* certify_cmd = app.add_subcommand("certify", "evaluate the contraction certificate");
  add_common(certify_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Picard-iterate the block map");
  add_common(solve_cmd);

  auto* march_cmd = app.add_subcommand("march", "window-by-window global solve");
  add_common(march_cmd);
  march_cmd->add_option("--total-time", total_time, "total time span")->required();

  auto* study_cmd = app.add_subcommand("study", "convergence and contraction sweeps");
  add_common(study_cmd);
  study_cmd->add_option("--mode", mode, "dt|N|picard|contraction")->required();

  auto* plot_cmd = app.add_subcommand("emit-plot", "flatten run artifacts to CSV");
  plot_cmd->add_option("--run-dir", run_dir, "run directory")->required();
  plot_cmd->add_option("--what", what, "field|norms|residuals")->required();
  plot_cmd->add_option("--out", out_file, "output CSV (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (certify_cmd->parsed()) return cmd_certify(opts);
    if (solve_cmd->parsed()) return cmd_solve(opts);
    if (march_cmd->parsed()) return cmd_march(opts, total_time);
    if (study_cmd->parsed()) return cmd_study(opts, mode);
    if (plot_cmd->parsed()) return cmd_emit_plot(run_dir, what, out_file);
  } catch (const InadmissibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInadmissible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
