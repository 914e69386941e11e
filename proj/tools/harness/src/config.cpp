#include "qwalk/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

namespace qwalk::harness {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
void read_if(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::vector<double> chi_grid(double min, double max, std::size_t count) {
  if (count == 0) throw ConfigError("chi grid: count must be >= 1");
  if (count == 1) return {min};
  if (!(max > min)) throw ConfigError("chi grid: max must exceed min");
  std::vector<double> out(count);
  const double step = (max - min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = min + step * static_cast<double>(i);
  out.back() = max;
  return out;
}

void validate(RunConfig& config) {
  if (!(config.chi >= 0.0) || !std::isfinite(config.chi)) throw ConfigError("chi must be finite and >= 0");
  if (config.chi > 2.0) {
    std::clog << "warning: chi = " << config.chi << " > 2; the phase 2*pi*chi*|psi|^2 wraps past 4*pi\n";
  }
  if (config.steps < 1) throw ConfigError("steps must be >= 1");
  if (config.record_every < 1) throw ConfigError("record_every must be >= 1");
  if (config.portrait_stride < 1) throw ConfigError("portrait_stride must be >= 1");
  if (config.fit.t_max == 0) config.fit.t_max = config.steps;
  if (config.fit.t_min < 1) throw ConfigError("fit.t_min must be >= 1");
  if (!(config.fit.bin_ratio > 1.0)) throw ConfigError("fit.bin_ratio must be > 1");
  if (config.detrap.window < 10) throw ConfigError("detrap.window must be >= 10");
  if (config.detrap.sustain < 1) throw ConfigError("detrap.sustain must be >= 1");
  if (!(config.detrap.baseline_multiplier >= 0.0)) throw ConfigError("detrap.baseline_multiplier must be >= 0");
  if (config.output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

void validate(SweepConfig& config) {
  validate(config.base);
  if (config.chi_values.empty()) throw ConfigError("sweep needs at least one chi value");
  for (std::size_t i = 0; i < config.chi_values.size(); ++i) {
    const double chi = config.chi_values[i];
    if (!(chi >= 0.0) || !std::isfinite(chi)) throw ConfigError("sweep chi values must be finite and >= 0");
    if (i > 0 && !(chi > config.chi_values[i - 1])) throw ConfigError("sweep chi values must be strictly increasing");
  }
  if (config.jobs < 1) throw ConfigError("jobs must be >= 1");
}

json to_json(const RunConfig& c) {
  return json{
      {"chi", c.chi},
      {"input", std::string(to_string(c.input))},
      {"start_position", c.start_position},
      {"steps", c.steps},
      {"record_every", c.record_every},
      {"portrait_stride", c.portrait_stride},
      {"fit", {{"t_min", c.fit.t_min}, {"t_max", c.fit.t_max}, {"bin_ratio", c.fit.bin_ratio}}},
      {"detrap",
       {{"window", c.detrap.window},
        {"threshold", c.detrap.slope_threshold},
        {"sustain", c.detrap.sustain},
        {"baseline_multiplier", c.detrap.baseline_multiplier}}},
      {"output_dir", c.output_dir.string()},
      {"qwalk_version", kVersion},
  };
}

json to_json(const SweepConfig& c) {
  json j = to_json(c.base);
  j.erase("chi");
  j["chi_values"] = c.chi_values;
  j["jobs"] = c.jobs;
  return j;
}

namespace {

void merge_run_keys(const json& j, RunConfig& c) {
  read_if(j, "chi", c.chi);
  if (j.contains("input")) {
    std::string name;
    read_if(j, "input", name);
    const auto parsed = parse_basis_name(name);
    if (!parsed) throw ConfigError("unknown input coin '" + name + "'");
    c.input = *parsed;
  }
  read_if(j, "start_position", c.start_position);
  read_if(j, "steps", c.steps);
  read_if(j, "record_every", c.record_every);
  read_if(j, "portrait_stride", c.portrait_stride);
  if (j.contains("fit")) {
    const json& f = j.at("fit");
    check_keys(f, {"t_min", "t_max", "bin_ratio"}, "fit");
    read_if(f, "t_min", c.fit.t_min);
    read_if(f, "t_max", c.fit.t_max);
    read_if(f, "bin_ratio", c.fit.bin_ratio);
  }
  if (j.contains("detrap")) {
    const json& d = j.at("detrap");
    check_keys(d, {"window", "threshold", "sustain", "baseline_multiplier"}, "detrap");
    read_if(d, "window", c.detrap.window);
    read_if(d, "threshold", c.detrap.slope_threshold);
    read_if(d, "sustain", c.detrap.sustain);
    read_if(d, "baseline_multiplier", c.detrap.baseline_multiplier);
  }
  if (j.contains("output_dir")) {
    std::string dir;
    read_if(j, "output_dir", dir);
    c.output_dir = dir;
  }
}

const std::set<std::string> kRunKeys = {"chi",    "input",  "start_position", "steps",    "record_every", "portrait_stride",
                                        "fit",    "detrap", "output_dir",     "command",  "qwalk_version"};

}  // namespace

void merge_json(const json& j, RunConfig& config) {
  check_keys(j, kRunKeys, "run config");
  merge_run_keys(j, config);
}

void merge_json(const json& j, SweepConfig& config) {
  std::set<std::string> allowed = kRunKeys;
  allowed.insert({"chi_values", "chi_grid", "jobs"});
  check_keys(j, allowed, "sweep config");
  merge_run_keys(j, config.base);
  if (j.contains("chi_values") && j.contains("chi_grid")) {
    throw ConfigError("sweep config: give either chi_values or chi_grid, not both");
  }
  read_if(j, "chi_values", config.chi_values);
  if (j.contains("chi_grid")) {
    const json& g = j.at("chi_grid");
    check_keys(g, {"min", "max", "count"}, "chi_grid");
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
    read_if(g, "min", min);
    read_if(g, "max", max);
    read_if(g, "count", count);
    config.chi_values = chi_grid(min, max, count);
  }
  read_if(j, "jobs", config.jobs);
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
}

}  // namespace qwalk::harness
