#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwalk/observables.hpp"

namespace qwalk {

/// Raised when a series cannot support the requested analysis.
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed interval of time steps [first, last].
struct TimeWindow {
  std::int64_t first = 0;
  std::int64_t last = 0;
};

/// v(t) ~ amplitude * t^exponent.
struct PowerLawFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  double stderr_exponent = 0.0;
  double r_squared = 0.0;
  TimeWindow window;
  std::size_t bins = 0;
};

/// Averages v(t) over geometrically growing bins starting at t_min (each edge
/// is bin_ratio times the previous, at least one step wide) and fits a line to
/// (log mean t, log mean v) by ordinary least squares.
///
/// Throws AnalysisError when the window is invalid, fewer than five bins
/// result, or a bin average is not positive.
PowerLawFit fit_power_law(const TimeSeries& series, std::int64_t t_min, std::int64_t t_max,
                          double bin_ratio = 1.2);

struct SaturationResult {
  bool saturated = false;
  double level = 0.0;
  double early_mean = 0.0;
};

/// Saturated iff |mean(late) - mean(early)| <= rel_tol * mean(early).
SaturationResult detect_saturation(const TimeSeries& series, TimeWindow early, TimeWindow late,
                                   double rel_tol);

struct DetrapOptions {
  std::int64_t window = 100;
  double slope_threshold = 0.05;
  std::int64_t sustain = 50;
  double baseline_multiplier = 5.0;
};

struct DetrapResult {
  std::optional<std::int64_t> tau_c;
  double baseline_slope = 0.0;
  /// Slope of the first triggering window; NaN when nothing triggered.
  double trigger_slope = 0.0;
  /// max(slope_threshold, baseline_multiplier * |baseline_slope|)
  double threshold = 0.0;
};

/// Least-squares slope of every `window`-wide run of the series, indexed by
/// the run's first sample. Result has size() - window + 1 entries.
std::vector<double> sliding_window_slopes(const TimeSeries& series, std::int64_t window);

/// First time the participation-ratio slope jumps above the threshold and
/// stays there for `sustain` consecutive windows. The search starts after the
/// first window whose slope is at or below the threshold, which skips the
/// initial spreading of a localized input. Only the first transition is
/// reported.
DetrapResult detect_detrapping_time(const TimeSeries& pr, const DetrapOptions& options = {});

}  // namespace qwalk
