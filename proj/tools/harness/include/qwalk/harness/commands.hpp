#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/evolution.hpp"
#include "qwalk/harness/config.hpp"

namespace qwalk::harness {

/// Output file could not be created or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the walk described by `config` (assumed validated). Snapshots go to
/// `on_snapshot` when given, otherwise they are dropped.
RunRecord simulate(const RunConfig& config, std::function<void(const DensityProfile&)> on_snapshot = {});

/// Power-law fits of SP and PR over the configured window plus the
/// detrapping detector, as a JSON object. Failures are reported per entry.
nlohmann::json analyze(const RunRecord& record, const RunConfig& config);

/// timeseries.csv, density_<t>.csv, analysis.json and run_meta.json.
void cmd_evolve(RunConfig config);

/// portrait.csv (t, SP, dSP_dt) and run_meta.json.
void cmd_portrait(RunConfig config);

struct SweepRow {
  double chi = 0.0;
  std::optional<std::int64_t> tau_c;
  double baseline_slope = 0.0;
  double trigger_slope = 0.0;
  std::string error;
};

/// One sweep point; failures land in SweepRow::error instead of throwing.
SweepRow run_sweep_point(const RunConfig& base, double chi);

/// All points of the sweep on up to config.jobs threads, ordered by chi.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

void write_tau_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// tau_c.csv and sweep_meta.json.
void cmd_sweep(SweepConfig config);

struct FitRequest {
  std::filesystem::path series_file;
  std::string column = "SP";
  std::optional<std::int64_t> t_min;
  std::optional<std::int64_t> t_max;
  double bin_ratio = 1.2;
  /// Defaults to <series stem>_<column>_fit.json beside the input.
  std::optional<std::filesystem::path> out;
};

/// Fits the column and writes the report; returns the same JSON.
nlohmann::json cmd_fit(const FitRequest& request);

struct RenderRequest {
  std::filesystem::path series_file;
  std::vector<std::string> columns;
  /// Defaults to the first CSV column.
  std::optional<std::string> x_column;
  bool log_x = false;
  bool log_y = false;
  bool scatter = false;
  std::string title;
  /// Defaults to the input path with an .svg extension.
  std::optional<std::filesystem::path> out;
};

/// Writes the SVG and returns its path.
std::filesystem::path cmd_render(const RenderRequest& request);

}  // namespace qwalk::harness
