// qwalk: command-line front end for the nonlinear three-state walk.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/harness/commands.hpp"
#include "qwalk/harness/config.hpp"

namespace {

using namespace qwalk;
using namespace qwalk::harness;

/// Flags shared by evolve, portrait and sweep. Values only override the
/// config when the flag was actually given.
struct RunFlags {
  std::string config_file;
  std::string input;
  Site start_position = 0;
  std::int64_t steps = 0;
  std::int64_t record_every = 0;
  std::string out;
  std::int64_t t_min = 0;
  std::int64_t t_max = 0;
  double bin_ratio = 0.0;
  std::int64_t window = 0;
  double threshold = 0.0;
  std::int64_t sustain = 0;
  double multiplier = 0.0;
  std::size_t portrait_stride = 0;

  CLI::Option* o_input = nullptr;
  CLI::Option* o_start = nullptr;
  CLI::Option* o_steps = nullptr;
  CLI::Option* o_record = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_t_min = nullptr;
  CLI::Option* o_t_max = nullptr;
  CLI::Option* o_bin_ratio = nullptr;
  CLI::Option* o_window = nullptr;
  CLI::Option* o_threshold = nullptr;
  CLI::Option* o_sustain = nullptr;
  CLI::Option* o_multiplier = nullptr;
  CLI::Option* o_stride = nullptr;
};

void add_run_flags(CLI::App* app, RunFlags& f) {
  app->add_option("--config", f.config_file, "JSON config; explicit flags take precedence")->check(CLI::ExistingFile);
  f.o_input = app->add_option("--input", f.input, "Initial coin: L, S, R, sigma_plus, sigma_minus_1, sigma_minus_2");
  f.o_start = app->add_option("--start-position", f.start_position, "Initial site (default 0)");
  f.o_steps = app->add_option("--steps", f.steps, "Number of steps T (default 10000)");
  f.o_record = app->add_option("--record-every", f.record_every, "Density snapshot interval (default 1000)");
  f.o_out = app->add_option("--out", f.out, "Output directory (default out)");
  f.o_t_min = app->add_option("--t-min", f.t_min, "Power-law fit window start (default 1000)");
  f.o_t_max = app->add_option("--t-max", f.t_max, "Power-law fit window end (default: steps)");
  f.o_bin_ratio = app->add_option("--bin-ratio", f.bin_ratio, "Geometric bin ratio for fits (default 1.2)");
  f.o_window = app->add_option("--detrap-window", f.window, "Sliding window for PR slopes (default 100)");
  f.o_threshold = app->add_option("--detrap-threshold", f.threshold, "Minimum slope threshold (default 0.05)");
  f.o_sustain = app->add_option("--detrap-sustain", f.sustain, "Consecutive windows above threshold (default 50)");
  f.o_multiplier =
      app->add_option("--detrap-multiplier", f.multiplier, "Threshold floor as a multiple of |baseline slope| (default 5)");
  f.o_stride = app->add_option("--portrait-stride", f.portrait_stride, "Keep every k-th portrait point (default 1)");
}

void apply_run_flags(const RunFlags& f, RunConfig& c) {
  if (f.o_input->count() > 0) {
    const auto parsed = parse_basis_name(f.input);
    if (!parsed) throw ConfigError("unknown --input '" + f.input + "'");
    c.input = *parsed;
  }
  if (f.o_start->count() > 0) c.start_position = f.start_position;
  if (f.o_steps->count() > 0) c.steps = f.steps;
  if (f.o_record->count() > 0) c.record_every = f.record_every;
  if (f.o_out->count() > 0) c.output_dir = f.out;
  if (f.o_t_min->count() > 0) c.fit.t_min = f.t_min;
  if (f.o_t_max->count() > 0) c.fit.t_max = f.t_max;
  if (f.o_bin_ratio->count() > 0) c.fit.bin_ratio = f.bin_ratio;
  if (f.o_window->count() > 0) c.detrap.window = f.window;
  if (f.o_threshold->count() > 0) c.detrap.slope_threshold = f.threshold;
  if (f.o_sustain->count() > 0) c.detrap.sustain = f.sustain;
  if (f.o_multiplier->count() > 0) c.detrap.baseline_multiplier = f.multiplier;
  if (f.o_stride->count() > 0) c.portrait_stride = f.portrait_stride;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear three-state quantum walk on a line"};
  app.require_subcommand(1);

  // evolve / portrait
  RunFlags evolve_flags;
  double evolve_chi = 0.0;
  CLI::App* evolve_cmd = app.add_subcommand("evolve", "Run one walk; write timeseries, density snapshots and fits");
  CLI::Option* evolve_chi_opt = evolve_cmd->add_option("--chi", evolve_chi, "Nonlinearity strength");
  add_run_flags(evolve_cmd, evolve_flags);

  RunFlags portrait_flags;
  double portrait_chi = 0.0;
  CLI::App* portrait_cmd = app.add_subcommand("portrait", "Run one walk; write the (SP, dSP/dt) phase portrait");
  CLI::Option* portrait_chi_opt = portrait_cmd->add_option("--chi", portrait_chi, "Nonlinearity strength");
  add_run_flags(portrait_cmd, portrait_flags);

  // sweep
  RunFlags sweep_flags;
  std::vector<double> sweep_chi;
  double chi_min = 0.0;
  double chi_max = 0.0;
  std::size_t chi_count = 0;
  unsigned jobs = 1;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Detrapping time over a range of chi");
  CLI::Option* sweep_chi_opt = sweep_cmd->add_option("--chi", sweep_chi, "Explicit chi values")->delimiter(',');
  CLI::Option* chi_min_opt = sweep_cmd->add_option("--chi-min", chi_min, "Grid start");
  CLI::Option* chi_max_opt = sweep_cmd->add_option("--chi-max", chi_max, "Grid end");
  CLI::Option* chi_count_opt = sweep_cmd->add_option("--chi-count", chi_count, "Grid size");
  chi_min_opt->needs(chi_max_opt, chi_count_opt)->excludes(sweep_chi_opt);
  chi_max_opt->needs(chi_min_opt);
  chi_count_opt->needs(chi_min_opt);
  CLI::Option* jobs_opt = sweep_cmd->add_option("--jobs", jobs, "Worker threads (default 1)")->check(CLI::PositiveNumber);
  add_run_flags(sweep_cmd, sweep_flags);

  // fit
  FitRequest fit_request;
  std::string fit_file;
  std::string fit_out;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Power-law fit of one column of a timeseries CSV");
  fit_cmd->add_option("file", fit_file, "CSV with a t column")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--column", fit_request.column, "Column to fit (default SP)");
  CLI::Option* fit_t_min = fit_cmd->add_option("--t-min", "Window start (default: first t >= 1)");
  CLI::Option* fit_t_max = fit_cmd->add_option("--t-max", "Window end (default: last t)");
  fit_cmd->add_option("--bin-ratio", fit_request.bin_ratio, "Geometric bin ratio (default 1.2)");
  CLI::Option* fit_out_opt = fit_cmd->add_option("--out", fit_out, "Report path (default <stem>_<column>_fit.json)");

  // render
  RenderRequest render_request;
  std::string render_file;
  std::string render_x;
  std::string render_out;
  CLI::App* render_cmd = app.add_subcommand("render", "Plot CSV columns as SVG");
  render_cmd->add_option("file", render_file, "CSV to plot")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--columns", render_request.columns, "Columns to plot against x")->required()->delimiter(',');
  CLI::Option* render_x_opt = render_cmd->add_option("--x", render_x, "Abscissa column (default: first column)");
  render_cmd->add_flag("--log-x", render_request.log_x, "Logarithmic x axis");
  render_cmd->add_flag("--log-y", render_request.log_y, "Logarithmic y axis");
  render_cmd->add_flag("--scatter", render_request.scatter, "Draw points instead of lines");
  render_cmd->add_option("--title", render_request.title, "Plot title");
  CLI::Option* render_out_opt = render_cmd->add_option("--out", render_out, "SVG path (default <file>.svg)");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto load_run = [](const RunFlags& flags, CLI::Option* chi_opt, double chi) {
      RunConfig config;
      if (!flags.config_file.empty()) merge_json(load_json_file(flags.config_file), config);
      if (chi_opt->count() > 0) config.chi = chi;
      apply_run_flags(flags, config);
      return config;
    };

    if (*evolve_cmd) {
      cmd_evolve(load_run(evolve_flags, evolve_chi_opt, evolve_chi));
    } else if (*portrait_cmd) {
      cmd_portrait(load_run(portrait_flags, portrait_chi_opt, portrait_chi));
    } else if (*sweep_cmd) {
      SweepConfig config;
      if (!sweep_flags.config_file.empty()) merge_json(load_json_file(sweep_flags.config_file), config);
      apply_run_flags(sweep_flags, config.base);
      if (sweep_chi_opt->count() > 0) config.chi_values = sweep_chi;
      if (chi_min_opt->count() > 0) config.chi_values = chi_grid(chi_min, chi_max, chi_count);
      if (jobs_opt->count() > 0) config.jobs = jobs;
      cmd_sweep(std::move(config));
    } else if (*fit_cmd) {
      fit_request.series_file = fit_file;
      if (fit_t_min->count() > 0) fit_request.t_min = fit_t_min->as<std::int64_t>();
      if (fit_t_max->count() > 0) fit_request.t_max = fit_t_max->as<std::int64_t>();
      if (fit_out_opt->count() > 0) fit_request.out = fit_out;
      std::cout << cmd_fit(fit_request).dump(2) << '\n';
    } else if (*render_cmd) {
      render_request.series_file = render_file;
      if (render_x_opt->count() > 0) render_request.x_column = render_x;
      if (render_out_opt->count() > 0) render_request.out = render_out;
      std::cout << cmd_render(render_request).string() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
