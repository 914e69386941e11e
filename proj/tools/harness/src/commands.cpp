#include "qwalk/harness/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "qwalk/analysis.hpp"
#include "qwalk/harness/csv.hpp"
#include "qwalk/harness/svg.hpp"

namespace qwalk::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out = open_for_write(path);
  out << text;
  finish(out, path);
}

json optional_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json fit_json(const PowerLawFit& fit) {
  return json{{"exponent", fit.exponent},        {"stderr", fit.stderr_exponent}, {"amplitude", fit.amplitude},
              {"r_squared", fit.r_squared},      {"t_min", fit.window.first},     {"t_max", fit.window.last},
              {"bins", fit.bins}};
}

void write_meta(const fs::path& dir, json meta, const char* command) {
  meta["command"] = command;
  write_text(dir / (std::string(command) == "sweep" ? "sweep_meta.json" : "run_meta.json"), meta.dump(2) + "\n");
}

void write_density(const fs::path& dir, const DensityProfile& profile) {
  const fs::path path = dir / ("density_" + std::to_string(profile.time) + ".csv");
  std::ofstream out = open_for_write(path);
  CsvWriter csv(out);
  csv.row({"n", "pL", "pS", "pR", "pTotal"});
  for (std::size_t i = 0; i < profile.sites.size(); ++i) {
    const SiteProbability& p = profile.sites[i];
    csv.cell(static_cast<std::int64_t>(profile.lowest_site + static_cast<Site>(i)))
        .cell(p.left)
        .cell(p.stay)
        .cell(p.right)
        .cell(p.total)
        .end_row();
  }
  finish(out, path);
}

}  // namespace

RunRecord simulate(const RunConfig& config, std::function<void(const DensityProfile&)> on_snapshot) {
  EvolveOptions options;
  options.steps = config.steps;
  options.record_every = config.record_every;
  options.survival_site = config.start_position;
  options.on_snapshot = on_snapshot ? std::move(on_snapshot) : [](const DensityProfile&) {};
  return evolve(new_localized(config.start_position, coin_basis(config.input)), StepParams{config.chi}, options);
}

json analyze(const RunRecord& record, const RunConfig& config) {
  json out;
  const auto guarded = [&](const char* key, auto&& body) {
    try {
      out[key] = body();
    } catch (const std::exception& e) {
      out[key] = json{{"error", e.what()}};
    }
  };
  guarded("sp_fit", [&] {
    return fit_json(fit_power_law(record.survival, config.fit.t_min, config.fit.t_max, config.fit.bin_ratio));
  });
  guarded("pr_fit", [&] {
    return fit_json(fit_power_law(record.participation, config.fit.t_min, config.fit.t_max, config.fit.bin_ratio));
  });
  guarded("detrap", [&] {
    const DetrapResult r = detect_detrapping_time(record.participation, config.detrap);
    return json{{"tau_c", r.tau_c ? json(*r.tau_c) : json(nullptr)},
                {"baseline_slope", r.baseline_slope},
                {"trigger_slope", optional_number(r.trigger_slope)},
                {"threshold", r.threshold}};
  });
  return out;
}

void cmd_evolve(RunConfig config) {
  validate(config);
  ensure_dir(config.output_dir);
  const fs::path dir = config.output_dir;

  const RunRecord record = simulate(config, [&](const DensityProfile& p) { write_density(dir, p); });

  const fs::path ts_path = dir / "timeseries.csv";
  std::ofstream out = open_for_write(ts_path);
  CsvWriter csv(out);
  csv.row({"t", "SP", "PR", "norm"});
  for (std::size_t i = 0; i < record.survival.size(); ++i) {
    csv.cell(record.survival.start + static_cast<std::int64_t>(i))
        .cell(record.survival.values[i])
        .cell(record.participation.values[i])
        .cell(record.norm.values[i])
        .end_row();
  }
  finish(out, ts_path);

  write_text(dir / "analysis.json", analyze(record, config).dump(2) + "\n");
  write_meta(dir, to_json(config), "evolve");
}

void cmd_portrait(RunConfig config) {
  validate(config);
  ensure_dir(config.output_dir);
  const fs::path dir = config.output_dir;

  const RunRecord record = simulate(config);
  const fs::path path = dir / "portrait.csv";
  std::ofstream out = open_for_write(path);
  CsvWriter csv(out);
  csv.row({"t", "SP", "dSP_dt"});
  for (const PortraitPoint& p : phase_portrait(record.survival, config.portrait_stride)) {
    csv.cell(p.time).cell(p.value).cell(p.velocity).end_row();
  }
  finish(out, path);
  write_meta(dir, to_json(config), "portrait");
}

SweepRow run_sweep_point(const RunConfig& base, double chi) {
  SweepRow row;
  row.chi = chi;
  row.baseline_slope = std::numeric_limits<double>::quiet_NaN();
  row.trigger_slope = std::numeric_limits<double>::quiet_NaN();
  try {
    RunConfig config = base;
    config.chi = chi;
    const RunRecord record = simulate(config);
    const DetrapResult r = detect_detrapping_time(record.participation, config.detrap);
    row.tau_c = r.tau_c;
    row.baseline_slope = r.baseline_slope;
    row.trigger_slope = r.trigger_slope;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  const std::size_t n = config.chi_values.size();
  std::vector<SweepRow> rows(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) rows[i] = run_sweep_point(config.base, config.chi_values[i]);
  };
  const std::size_t threads = std::min<std::size_t>(config.jobs, n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.chi < b.chi; });
  return rows;
}

void write_tau_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  CsvWriter csv(out);
  csv.row({"chi", "tau_c", "baseline_slope", "trigger_slope", "error"});
  for (const SweepRow& r : rows) {
    csv.cell(r.chi);
    if (r.tau_c) {
      csv.cell(*r.tau_c);
    } else {
      csv.cell(std::string_view{});
    }
    csv.cell(r.baseline_slope).cell(r.trigger_slope).cell(std::string_view(r.error)).end_row();
  }
}

void cmd_sweep(SweepConfig config) {
  validate(config);
  ensure_dir(config.base.output_dir);
  const std::vector<SweepRow> rows = run_sweep(config);
  const fs::path path = config.base.output_dir / "tau_c.csv";
  std::ofstream out = open_for_write(path);
  write_tau_csv(out, rows);
  finish(out, path);
  write_meta(config.base.output_dir, to_json(config), "sweep");
}

json cmd_fit(const FitRequest& request) {
  const CsvTable table = read_csv(request.series_file);
  const TimeSeries series = series_from_table(table, request.column);
  const std::int64_t t_min = request.t_min.value_or(std::max<std::int64_t>(1, series.start));
  const std::int64_t t_max = request.t_max.value_or(series.end() - 1);
  const PowerLawFit fit = fit_power_law(series, t_min, t_max, request.bin_ratio);

  json report = fit_json(fit);
  report["column"] = request.column;
  report["series_file"] = request.series_file.string();
  report["bin_ratio"] = request.bin_ratio;

  const fs::path out = request.out.value_or(request.series_file.parent_path() /
                                            (request.series_file.stem().string() + "_" + request.column + "_fit.json"));
  write_text(out, report.dump(2) + "\n");
  return report;
}

fs::path cmd_render(const RenderRequest& request) {
  if (request.columns.empty()) throw CsvError("render: no columns given");
  const CsvTable table = read_csv(request.series_file);
  const std::string x_name = request.x_column.value_or(table.header.at(0));
  const std::vector<double> x = table.numeric_column(x_name);

  std::vector<PlotSeries> series;
  for (const std::string& col : request.columns) series.push_back({col, x, table.numeric_column(col)});

  PlotOptions options;
  options.title = request.title;
  options.x_label = x_name;
  options.y_label = request.columns.size() == 1 ? request.columns.front() : std::string{};
  options.log_x = request.log_x;
  options.log_y = request.log_y;
  options.scatter = request.scatter;

  fs::path out = request.out.value_or(fs::path(request.series_file).replace_extension(".svg"));
  write_text(out, render_svg(series, options));
  return out;
}

}  // namespace qwalk::harness
