#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "qwalk/analysis.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/walker_state.hpp"

namespace qwalk::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitConfig {
  std::int64_t t_min = 1000;
  /// 0 resolves to the run length.
  std::int64_t t_max = 0;
  double bin_ratio = 1.2;
};

/// Everything needed to reproduce one simulation and its analysis. There is
/// no seed: the evolution is deterministic.
struct RunConfig {
  double chi = 0.0;
  BasisName input = BasisName::sigma_plus;
  Site start_position = 0;
  std::int64_t steps = 10000;
  std::int64_t record_every = 1000;
  std::size_t portrait_stride = 1;
  FitConfig fit;
  DetrapOptions detrap;
  std::filesystem::path output_dir = "out";
};

struct SweepConfig {
  RunConfig base;
  std::vector<double> chi_values;
  unsigned jobs = 1;
};

/// Builds a chi grid of `count` evenly spaced values in [min, max].
std::vector<double> chi_grid(double min, double max, std::size_t count);

/// Throws ConfigError on invalid values; fills fit.t_max when it is 0.
void validate(RunConfig& config);
void validate(SweepConfig& config);

nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const SweepConfig& config);

/// Applies keys present in `j` on top of `config`. Unknown keys are errors,
/// except the "command" and "qwalk_version" tags written into run_meta.json.
void merge_json(const nlohmann::json& j, RunConfig& config);
void merge_json(const nlohmann::json& j, SweepConfig& config);

nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace qwalk::harness
