#pragma once

#include <filesystem>
#include <string>

#include "dkpp/picard.hpp"

namespace dkpp {

/// Field snapshot container: magic "DKPP", format version u32, then N and M
/// as u64, then L and T as 64-bit floats, then (M+1)*N 64-bit floats
/// row-major (time-major).  All little-endian; round trips are bit exact.
void write_field_snapshot(const std::filesystem::path& path, const SpaceTimeField& field,
                          const Grid& grid, const TimeWindow& window);

struct SnapshotData {
  SpaceTimeField field;
  double half_width = 0.0;
  double horizon = 0.0;
};
SnapshotData read_field_snapshot(const std::filesystem::path& path);

/// SolveReport as a single JSON document (stable key order, shortest
/// round-trip number formatting).
std::string report_to_json(const SolveReport& report);
void write_report_json(const std::filesystem::path& path, const SolveReport& report);

/// Residual history CSV: iteration,residual,ratio (ratio empty on row 1).
void write_residuals_csv(const std::filesystem::path& path, const SolveReport& report);

/// Plot-data emission from a run directory.
std::string emit_plot_field(const std::filesystem::path& run_dir);
std::string emit_plot_norms(const std::filesystem::path& run_dir);
std::string emit_plot_residuals(const std::filesystem::path& run_dir);

}  // namespace dkpp
