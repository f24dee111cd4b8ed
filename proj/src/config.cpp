#include "dkpp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dkpp {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key()))
      throw ConfigError("unknown key \"" + path + it.key() + "\"");
  }
}

double get_num(const json& obj, const std::string& path, const char* key,
               double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ConfigError("key \"" + path + key + "\" must be a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw ConfigError("key \"" + path + key + "\" must be an integer");
  return obj[key].get<int>();
}

std::string get_str(const json& obj, const std::string& path, const char* key,
                    const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string())
    throw ConfigError("key \"" + path + key + "\" must be a string");
  return obj[key].get<std::string>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean())
    throw ConfigError("key \"" + path + key + "\" must be a boolean");
  return obj[key].get<bool>();
}

KernelKind kernel_kind_from(const std::string& s) {
  if (s == "gaussian") return KernelKind::gaussian;
  if (s == "bump") return KernelKind::bump;
  if (s == "sinc_sq") return KernelKind::sinc_sq;
  if (s == "laplace") return KernelKind::laplace;
  if (s == "tabulated") return KernelKind::tabulated;
  throw ConfigError("unknown kernel kind \"" + s + "\"");
}

NonlinearityKind rate_kind_from(const std::string& s) {
  if (s == "linear") return NonlinearityKind::linear;
  if (s == "saturating") return NonlinearityKind::saturating;
  if (s == "sine") return NonlinearityKind::sine;
  throw ConfigError("unknown nonlinearity kind \"" + s + "\"");
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  check_keys(doc, "", {"schema_version", "grid", "problem", "kernel", "nonlinearity",
                       "initial_condition", "window", "solver", "output", "seed"});
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != 1)
    throw ConfigError("config requires \"schema_version\": 1");

  RunConfig cfg;

  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    check_keys(g, "grid.", {"half_width", "n_points"});
    cfg.half_width = get_num(g, "grid.", "half_width", cfg.half_width);
    cfg.n_points = get_int(g, "grid.", "n_points", cfg.n_points);
  }

  if (doc.contains("problem")) {
    const auto& p = doc["problem"];
    check_keys(p, "problem.", {"alpha", "a", "b", "classical_mode"});
    cfg.alpha = get_num(p, "problem.", "alpha", cfg.alpha);
    cfg.a = get_num(p, "problem.", "a", cfg.a);
    cfg.b = get_num(p, "problem.", "b", cfg.b);
    cfg.classical_mode = get_bool(p, "problem.", "classical_mode", cfg.classical_mode);
  }

  if (doc.contains("kernel")) {
    const auto& k = doc["kernel"];
    check_keys(k, "kernel.", {"kind", "sigma", "width", "p_cut", "amplitude", "path"});
    cfg.kernel_kind = kernel_kind_from(get_str(k, "kernel.", "kind", "gaussian"));
    cfg.kernel_params.sigma = get_num(k, "kernel.", "sigma", cfg.kernel_params.sigma);
    cfg.kernel_params.width = get_num(k, "kernel.", "width", cfg.kernel_params.width);
    cfg.kernel_params.p_cut = get_num(k, "kernel.", "p_cut", cfg.kernel_params.p_cut);
    cfg.kernel_params.amplitude =
        get_num(k, "kernel.", "amplitude", cfg.kernel_params.amplitude);
    cfg.kernel_csv = get_str(k, "kernel.", "path", "");
    if (cfg.kernel_kind == KernelKind::tabulated && cfg.kernel_csv.empty())
      throw ConfigError("tabulated kernel requires \"kernel.path\"");
  }

  if (doc.contains("nonlinearity")) {
    const auto& f = doc["nonlinearity"];
    check_keys(f, "nonlinearity.",
               {"kind", "coeff", "lipschitz", "growth_k", "baseline"});
    cfg.rate_kind = rate_kind_from(get_str(f, "nonlinearity.", "kind", "linear"));
    cfg.rate_coeff = get_num(f, "nonlinearity.", "coeff", cfg.rate_coeff);
    cfg.declared_lipschitz = get_num(f, "nonlinearity.", "lipschitz", -1.0);
    cfg.declared_growth_k = get_num(f, "nonlinearity.", "growth_k", -1.0);
    if (f.contains("baseline")) {
      const auto& b = f["baseline"];
      check_keys(b, "nonlinearity.baseline.",
                 {"kind", "amplitude", "width", "center", "halfwidth", "path"});
      std::string kind = get_str(b, "nonlinearity.baseline.", "kind", "none");
      if (kind == "none")
        cfg.baseline.kind = BaselineSpec::Kind::none;
      else if (kind == "gaussian")
        cfg.baseline.kind = BaselineSpec::Kind::gaussian;
      else if (kind == "band")
        cfg.baseline.kind = BaselineSpec::Kind::band;
      else if (kind == "tabulated")
        cfg.baseline.kind = BaselineSpec::Kind::tabulated;
      else
        throw ConfigError("unknown baseline kind \"" + kind + "\"");
      cfg.baseline.amplitude =
          get_num(b, "nonlinearity.baseline.", "amplitude", cfg.baseline.amplitude);
      cfg.baseline.width = get_num(b, "nonlinearity.baseline.", "width", cfg.baseline.width);
      cfg.baseline.center =
          get_num(b, "nonlinearity.baseline.", "center", cfg.baseline.center);
      cfg.baseline.halfwidth =
          get_num(b, "nonlinearity.baseline.", "halfwidth", cfg.baseline.halfwidth);
      cfg.baseline_csv = get_str(b, "nonlinearity.baseline.", "path", "");
      if (cfg.baseline.kind == BaselineSpec::Kind::tabulated && cfg.baseline_csv.empty())
        throw ConfigError("tabulated baseline requires \"nonlinearity.baseline.path\"");
    }
  }

  if (doc.contains("initial_condition")) {
    const auto& ic = doc["initial_condition"];
    check_keys(ic, "initial_condition.",
               {"kind", "amplitude", "width", "wavenumber", "path"});
    std::string kind = get_str(ic, "initial_condition.", "kind", "gaussian");
    if (kind == "gaussian")
      cfg.ic_kind = RunConfig::IcKind::gaussian;
    else if (kind == "zero")
      cfg.ic_kind = RunConfig::IcKind::zero;
    else if (kind == "cosine")
      cfg.ic_kind = RunConfig::IcKind::cosine;
    else if (kind == "csv")
      cfg.ic_kind = RunConfig::IcKind::csv;
    else
      throw ConfigError("unknown initial condition kind \"" + kind + "\"");
    cfg.ic_amplitude = get_num(ic, "initial_condition.", "amplitude", cfg.ic_amplitude);
    cfg.ic_width = get_num(ic, "initial_condition.", "width", cfg.ic_width);
    cfg.ic_wavenumber = get_num(ic, "initial_condition.", "wavenumber", cfg.ic_wavenumber);
    cfg.ic_csv = get_str(ic, "initial_condition.", "path", "");
    if (cfg.ic_kind == RunConfig::IcKind::csv && cfg.ic_csv.empty())
      throw ConfigError("csv initial condition requires \"initial_condition.path\"");
  }

  if (doc.contains("window")) {
    const auto& w = doc["window"];
    check_keys(w, "window.", {"horizon", "steps"});
    cfg.horizon = get_num(w, "window.", "horizon", cfg.horizon);
    cfg.steps = get_int(w, "window.", "steps", cfg.steps);
  }

  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    check_keys(s, "solver.",
               {"tolerance", "max_iter", "ratio_slack", "initial_guess",
                "duhamel_residual"});
    cfg.solver.tolerance = get_num(s, "solver.", "tolerance", cfg.solver.tolerance);
    cfg.solver.max_iter = get_int(s, "solver.", "max_iter", cfg.solver.max_iter);
    cfg.solver.ratio_slack = get_num(s, "solver.", "ratio_slack", cfg.solver.ratio_slack);
    cfg.solver.compute_duhamel_residual =
        get_bool(s, "solver.", "duhamel_residual", cfg.solver.compute_duhamel_residual);
    std::string guess = get_str(s, "solver.", "initial_guess", "u0");
    if (guess == "u0")
      cfg.solver.guess = InitialGuess::u0_constant;
    else if (guess == "zero")
      cfg.solver.guess = InitialGuess::zero;
    else if (guess == "random")
      cfg.solver.guess = InitialGuess::random;
    else
      throw ConfigError("unknown initial guess \"" + guess + "\"");
  }

  if (doc.contains("output")) {
    const auto& o = doc["output"];
    check_keys(o, "output.", {"directory"});
    cfg.output_dir = get_str(o, "output.", "directory", "");
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
      throw ConfigError("\"seed\" must be an integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  cfg.solver.seed = cfg.seed;
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw ConfigError("cannot open config file " + json_path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

void load_two_column_csv(const std::filesystem::path& path, std::vector<double>& x,
                         std::vector<double>& value) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV file " + path.string());
  x.clear();
  value.clear();
  std::string line;
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a = 0.0, b = 0.0;
    if (!(ls >> a >> b))
      throw ConfigError("CSV " + path.string() + ": row " + std::to_string(row) +
                        " is not two decimal columns");
    x.push_back(a);
    value.push_back(b);
  }
}

BuiltProblem build_problem(const RunConfig& cfg) {
  Grid grid(cfg.half_width, cfg.n_points);
  ProblemSpec problem(grid);
  problem.alpha = cfg.alpha;
  problem.a = cfg.a;
  problem.b = cfg.b;
  problem.classical_mode = cfg.classical_mode;

  if (cfg.kernel_kind == KernelKind::tabulated) {
    std::vector<double> x, g;
    load_two_column_csv(cfg.kernel_csv, x, g);
    problem.kernel = build_kernel_tabulated(x, g, grid);
  } else {
    problem.kernel = build_kernel(cfg.kernel_kind, cfg.kernel_params, grid);
  }

  BaselineSpec baseline = cfg.baseline;
  if (baseline.kind == BaselineSpec::Kind::tabulated) {
    std::vector<double> x;
    load_two_column_csv(cfg.baseline_csv, x, baseline.samples);
    if (static_cast<int>(baseline.samples.size()) != grid.n_points)
      throw ConfigError("baseline CSV row count must equal n_points");
  }
  switch (cfg.rate_kind) {
    case NonlinearityKind::linear:
      problem.nonlinearity = make_linear(cfg.rate_coeff, baseline, grid,
                                         cfg.declared_lipschitz, cfg.declared_growth_k);
      break;
    case NonlinearityKind::saturating:
      problem.nonlinearity = make_saturating(
          cfg.rate_coeff, baseline, grid, cfg.declared_lipschitz, cfg.declared_growth_k);
      break;
    case NonlinearityKind::sine:
      problem.nonlinearity = make_sine(cfg.rate_coeff, baseline, grid,
                                       cfg.declared_lipschitz, cfg.declared_growth_k);
      break;
  }

  problem.initial_condition.assign(grid.n_points, 0.0);
  switch (cfg.ic_kind) {
    case RunConfig::IcKind::gaussian:
      for (int j = 0; j < grid.n_points; ++j) {
        double s = grid.x(j) / cfg.ic_width;
        problem.initial_condition[j] = cfg.ic_amplitude * std::exp(-s * s);
      }
      break;
    case RunConfig::IcKind::zero:
      break;
    case RunConfig::IcKind::cosine: {
      int k = static_cast<int>(std::lround(cfg.ic_wavenumber));
      double p = grid.dp() * k;
      for (int j = 0; j < grid.n_points; ++j)
        problem.initial_condition[j] = cfg.ic_amplitude * std::cos(p * grid.x(j));
      break;
    }
    case RunConfig::IcKind::csv: {
      std::vector<double> x, u0;
      load_two_column_csv(cfg.ic_csv, x, u0);
      if (static_cast<int>(u0.size()) != grid.n_points)
        throw ConfigError("initial condition CSV row count must equal n_points");
      problem.initial_condition = std::move(u0);
      break;
    }
  }

  TimeWindow window(cfg.horizon, cfg.steps);
  problem.validate();
  return BuiltProblem{std::move(problem), window};
}

}  // namespace dkpp
