#include "dkpp/report_io.hpp"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dkpp {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "snapshot container assumes a little-endian host");

namespace {
constexpr char kMagic[4] = {'D', 'K', 'P', 'P'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw DataError("snapshot file truncated");
  return v;
}
}  // namespace

void write_field_snapshot(const std::filesystem::path& path, const SpaceTimeField& field,
                          const Grid& grid, const TimeWindow& window) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open snapshot file for writing: " + path.string());
  out.write(kMagic, 4);
  put(out, kVersion);
  put(out, static_cast<std::uint64_t>(grid.n_points));
  put(out, static_cast<std::uint64_t>(window.steps));
  put(out, grid.half_width);
  put(out, window.horizon);
  for (int m = 0; m < field.levels(); ++m) {
    auto row = field.level(m);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!out) throw DataError("snapshot write failed: " + path.string());
}

SnapshotData read_field_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open snapshot file: " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("not a field snapshot: " + path.string());
  auto version = take<std::uint32_t>(in);
  if (version != kVersion)
    throw DataError("unsupported snapshot version " + std::to_string(version));
  auto n = static_cast<int>(take<std::uint64_t>(in));
  auto steps = static_cast<int>(take<std::uint64_t>(in));
  SnapshotData data;
  data.half_width = take<double>(in);
  data.horizon = take<double>(in);
  data.field = SpaceTimeField(steps + 1, n);
  for (int m = 0; m <= steps; ++m) {
    auto row = data.field.level(m);
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(double)));
    if (!in) throw DataError("snapshot file truncated");
  }
  return data;
}

namespace {

json certificate_to_json(const ContractionCertificate& c) {
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

const char* verdict_name(Nontriviality v) {
  return v == Nontriviality::nontrivial_guaranteed ? "nontrivial_guaranteed"
                                                   : "inconclusive";
}

}  // namespace

std::string report_to_json(const SolveReport& report) {
  json j;
  j["schema_version"] = 1;
  j["converged"] = report.converged;
  j["iterations"] = report.iterations;
  j["tolerance"] = report.tolerance;
  j["residuals"] = report.residuals;
  j["ratios"] = report.ratios;
  j["max_ratio"] = report.max_ratio;
  j["ratio_bound_ok"] = report.ratio_bound_ok;
  if (report.duhamel_residual >= 0.0) j["duhamel_residual"] = report.duhamel_residual;
  j["norms"]["l2"] = report.final_l2;
  j["norms"]["h2alpha"] = report.final_h2alpha;
  j["norms"]["w122"] = report.w122;
  j["certificate"] = certificate_to_json(report.certificate);
  j["nontriviality"]["verdict"] = verdict_name(report.nontriviality.verdict);
  j["nontriviality"]["kernel_support"] = report.nontriviality.kernel_support;
  j["nontriviality"]["baseline_support"] = report.nontriviality.baseline_support;
  j["nontriviality"]["intersection"] = report.nontriviality.intersection;
  j["nontriviality"]["longest_run"] = report.nontriviality.longest_run;
  j["seed"] = report.seed;
  if (!report.failure.empty()) j["failure"] = report.failure;
  return j.dump(2) + "\n";
}

void write_report_json(const std::filesystem::path& path, const SolveReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open report file for writing: " + path.string());
  out << report_to_json(report);
}

void write_residuals_csv(const std::filesystem::path& path, const SolveReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open residual CSV for writing: " + path.string());
  out << "iteration,residual,ratio\n";
  char buf[64];
  for (size_t i = 0; i < report.residuals.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", report.residuals[i]);
    out << (i + 1) << ',' << buf << ',';
    if (i >= 1 && i - 1 < report.ratios.size()) {
      std::snprintf(buf, sizeof(buf), "%.17g", report.ratios[i - 1]);
      out << buf;
    }
    out << '\n';
  }
}

std::string emit_plot_field(const std::filesystem::path& run_dir) {
  SnapshotData snap = read_field_snapshot(run_dir / "field.bin");
  const int n = snap.field.n_points();
  const int levels = snap.field.levels();
  Grid grid(snap.half_width, n);
  std::ostringstream out;
  out << "x,t,value\n";
  char buf[64];
  for (int m = 0; m < levels; ++m) {
    double t = snap.horizon * (static_cast<double>(m) / (levels - 1));
    auto row = snap.field.level(m);
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", grid.x(j));
      out << buf << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", t);
      out << buf << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
      out << buf << '\n';
    }
  }
  return out.str();
}

std::string emit_plot_norms(const std::filesystem::path& run_dir) {
  std::ifstream in(run_dir / "report.json");
  if (!in) throw DataError("missing report.json in " + run_dir.string());
  json j = json::parse(in);
  if (!j.contains("norms")) throw DataError("report.json carries no norms block");
  // Re-serialize the parsed numbers so the CSV digits match the JSON exactly.
  std::ostringstream out;
  out << "l2,h2alpha,w122\n";
  out << j["norms"]["l2"].dump() << ',' << j["norms"]["h2alpha"].dump() << ','
      << j["norms"]["w122"].dump() << '\n';
  return out.str();
}

std::string emit_plot_residuals(const std::filesystem::path& run_dir) {
  std::ifstream in(run_dir / "residuals.csv");
  if (!in) throw DataError("missing residuals.csv in " + run_dir.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace dkpp
