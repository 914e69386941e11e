#include "qwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qwalk {

namespace {

double window_mean(const TimeSeries& series, TimeWindow w) {
  if (w.last < w.first) throw AnalysisError("empty window");
  if (!series.contains(w.first) || !series.contains(w.last)) {
    throw AnalysisError("window [" + std::to_string(w.first) + ", " + std::to_string(w.last) +
                        "] outside series '" + series.name + "'");
  }
  double sum = 0.0;
  for (std::int64_t t = w.first; t <= w.last; ++t) sum += series.at(t);
  return sum / static_cast<double>(w.last - w.first + 1);
}

}  // namespace

PowerLawFit fit_power_law(const TimeSeries& series, std::int64_t t_min, std::int64_t t_max,
                          double bin_ratio) {
  if (t_min < 1) throw AnalysisError("fit_power_law: t_min must be >= 1");
  if (t_max <= t_min) throw AnalysisError("fit_power_law: t_max must exceed t_min");
  if (!(bin_ratio > 1.0)) throw AnalysisError("fit_power_law: bin_ratio must be > 1");
  if (!series.contains(t_min) || !series.contains(t_max)) {
    throw AnalysisError("fit_power_law: window outside series '" + series.name + "'");
  }

  std::vector<double> xs;
  std::vector<double> ys;
  std::int64_t lo = t_min;
  while (lo <= t_max) {
    auto hi = static_cast<std::int64_t>(std::ceil(static_cast<double>(lo) * bin_ratio));
    hi = std::min(std::max(hi, lo + 1), t_max + 1);
    double t_sum = 0.0;
    double v_sum = 0.0;
    for (std::int64_t t = lo; t < hi; ++t) {
      t_sum += static_cast<double>(t);
      v_sum += series.at(t);
    }
    const double n = static_cast<double>(hi - lo);
    const double v_mean = v_sum / n;
    if (!(v_mean > 0.0)) {
      throw AnalysisError("fit_power_law: non-positive bin average over [" + std::to_string(lo) +
                          ", " + std::to_string(hi - 1) + "]");
    }
    xs.push_back(std::log(t_sum / n));
    ys.push_back(std::log(v_mean));
    lo = hi;
  }
  if (xs.size() < 5) {
    throw AnalysisError("fit_power_law: only " + std::to_string(xs.size()) + " bins (need 5)");
  }

  const double n = static_cast<double>(xs.size());
  const double x_bar = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double y_bar = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - x_bar;
    const double dy = ys[i] - y_bar;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  const double intercept = y_bar - slope * x_bar;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ssr += r * r;
  }

  PowerLawFit fit;
  fit.exponent = slope;
  fit.amplitude = std::exp(intercept);
  fit.stderr_exponent = std::sqrt(ssr / (n - 2.0) / sxx);
  fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  fit.window = {t_min, t_max};
  fit.bins = xs.size();
  return fit;
}

SaturationResult detect_saturation(const TimeSeries& series, TimeWindow early, TimeWindow late,
                                   double rel_tol) {
  if (late.first <= early.last) throw AnalysisError("detect_saturation: windows overlap or are out of order");
  SaturationResult result;
  result.early_mean = window_mean(series, early);
  result.level = window_mean(series, late);
  result.saturated = std::abs(result.level - result.early_mean) <= rel_tol * result.early_mean;
  return result;
}

std::vector<double> sliding_window_slopes(const TimeSeries& series, std::int64_t window) {
  if (window < 2) throw AnalysisError("sliding_window_slopes: window must be >= 2");
  const auto w = static_cast<std::size_t>(window);
  if (series.size() < w) return {};

  // Abscissae are 0..w-1 within each window, so sxx is a constant.
  const double x_bar = (static_cast<double>(w) - 1.0) / 2.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < w; ++k) sxx += (static_cast<double>(k) - x_bar) * (static_cast<double>(k) - x_bar);

  std::vector<double> slopes(series.size() - w + 1);
  for (std::size_t s = 0; s < slopes.size(); ++s) {
    double sxy = 0.0;
    for (std::size_t k = 0; k < w; ++k) sxy += (static_cast<double>(k) - x_bar) * series.values[s + k];
    slopes[s] = sxy / sxx;
  }
  return slopes;
}

DetrapResult detect_detrapping_time(const TimeSeries& pr, const DetrapOptions& options) {
  if (options.window < 10) throw AnalysisError("detect_detrapping_time: window must be >= 10");
  if (options.sustain < 1) throw AnalysisError("detect_detrapping_time: sustain must be >= 1");
  if (static_cast<std::int64_t>(pr.size()) < 2 * options.window) {
    throw AnalysisError("detect_detrapping_time: series shorter than two windows");
  }

  const std::vector<double> slopes = sliding_window_slopes(pr, options.window);

  // Baseline: median slope over windows starting in the first 10% of the series.
  const std::size_t head = std::clamp<std::size_t>(pr.size() / 10, 1, slopes.size());
  std::vector<double> early(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(head));
  const auto mid = early.begin() + static_cast<std::ptrdiff_t>(early.size() / 2);
  std::nth_element(early.begin(), mid, early.end());
  double median = *mid;
  if (early.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(early.begin(), mid));
  }

  DetrapResult result;
  result.baseline_slope = median;
  result.threshold = std::max(options.slope_threshold, options.baseline_multiplier * std::abs(median));
  result.trigger_slope = std::numeric_limits<double>::quiet_NaN();

  // A walk released from a single site spreads before anything can be
  // trapped, so the detector arms only once the slope has dropped to the
  // threshold; a series that never settles has no metastable state to leave.
  const auto sustain = static_cast<std::size_t>(options.sustain);
  bool armed = false;
  std::size_t run = 0;
  for (std::size_t s = 0; s < slopes.size(); ++s) {
    if (!armed) {
      armed = slopes[s] <= result.threshold;
      continue;
    }
    run = slopes[s] > result.threshold ? run + 1 : 0;
    if (run == sustain) {
      const std::size_t first = s + 1 - sustain;
      result.tau_c = pr.start + static_cast<std::int64_t>(first);
      result.trigger_slope = slopes[first];
      break;
    }
  }
  return result;
}

}  // namespace qwalk
