#pragma once

#include <string>
#include <vector>

namespace qwalk::harness {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  /// Points as circles instead of one polyline per series.
  bool scatter = false;
  int width = 800;
  int height = 500;
};

/// Standalone SVG document with axes, tick labels and one polyline (or
/// point cloud) per series. Non-finite points, and non-positive ones on log
/// axes, are dropped.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options);

}  // namespace qwalk::harness
