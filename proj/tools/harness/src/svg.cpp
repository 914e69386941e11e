#include "qwalk/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qwalk::harness {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Axis {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;
  double pix_lo = 0.0;
  double pix_hi = 1.0;

  double transform(double v) const { return log ? std::log10(v) : v; }
  double to_pixel(double v) const { return pix_lo + (transform(v) - lo) / (hi - lo) * (pix_hi - pix_lo); }

  // Tick values in data units.
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
      if (out.size() < 2) {
        out.clear();
        out.push_back(std::pow(10.0, lo));
        out.push_back(std::pow(10.0, hi));
      }
      return out;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      step = m * mag;
      if (step >= raw) break;
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
      out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    }
    return out;
  }
};

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

void fit_range(Axis& axis, double lo, double hi) {
  if (!(lo <= hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  lo = axis.transform(lo);
  hi = axis.transform(hi);
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(lo))) {
    const double pad = axis.log ? 0.5 : std::max(1e-12, std::abs(lo) * 0.05 + 1e-12);
    lo -= pad;
    hi += pad;
  } else if (!axis.log) {
    const double pad = (hi - lo) * 0.03;
    lo -= pad;
    hi += pad;
  }
  axis.lo = lo;
  axis.hi = hi;
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options) {
  const double left = 80;
  const double right = 20;
  const double top = options.title.empty() ? 20 : 40;
  const double bottom = 60;
  const double w = options.width;
  const double h = options.height;

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const PlotSeries& s : series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!usable(s.x[i], options.log_x) || !usable(s.y[i], options.log_y)) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!(x_lo <= x_hi)) {
    x_lo = options.log_x ? 1.0 : 0.0;
    x_hi = options.log_x ? 10.0 : 1.0;
    y_lo = x_lo;
    y_hi = x_hi;
  }

  Axis xa{options.log_x, 0, 1, left, w - right};
  Axis ya{options.log_y, 0, 1, h - bottom, top};
  fit_range(xa, x_lo, x_hi);
  fit_range(ya, y_lo, y_hi);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << px(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(options.title)
        << "</text>\n";
  }

  // Frame and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(w - left - right) << "\" height=\""
      << px(h - top - bottom) << "\"/>\n";
  for (double v : xa.ticks()) {
    const double p = xa.to_pixel(v);
    svg << "<line x1=\"" << px(p) << "\" y1=\"" << px(h - bottom) << "\" x2=\"" << px(p) << "\" y2=\"" << px(h - bottom + 5)
        << "\"/>\n";
  }
  for (double v : ya.ticks()) {
    const double p = ya.to_pixel(v);
    svg << "<line x1=\"" << px(left - 5) << "\" y1=\"" << px(p) << "\" x2=\"" << px(left) << "\" y2=\"" << px(p) << "\"/>\n";
  }
  svg << "</g>\n<g fill=\"black\">\n";
  for (double v : xa.ticks()) {
    svg << "<text x=\"" << px(xa.to_pixel(v)) << "\" y=\"" << px(h - bottom + 18) << "\" text-anchor=\"middle\">"
        << tick_text(v) << "</text>\n";
  }
  for (double v : ya.ticks()) {
    svg << "<text x=\"" << px(left - 8) << "\" y=\"" << px(ya.to_pixel(v) + 4) << "\" text-anchor=\"end\">" << tick_text(v)
        << "</text>\n";
  }
  if (!options.x_label.empty()) {
    svg << "<text x=\"" << px(left + (w - left - right) / 2) << "\" y=\"" << px(h - 15) << "\" text-anchor=\"middle\">"
        << xml_escape(options.x_label) << "</text>\n";
  }
  if (!options.y_label.empty()) {
    const double cy = top + (h - top - bottom) / 2;
    svg << "<text x=\"18\" y=\"" << px(cy) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << px(cy) << ")\">"
        << xml_escape(options.y_label) << "</text>\n";
  }
  svg << "</g>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (options.scatter) {
      svg << "<g fill=\"" << color << "\" stroke=\"none\">\n";
      for (std::size_t i = 0; i < n; ++i) {
        if (!usable(s.x[i], options.log_x) || !usable(s.y[i], options.log_y)) continue;
        svg << "<circle cx=\"" << px(xa.to_pixel(s.x[i])) << "\" cy=\"" << px(ya.to_pixel(s.y[i])) << "\" r=\"1.5\"/>\n";
      }
      svg << "</g>\n";
    } else {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
      bool first = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (!usable(s.x[i], options.log_x) || !usable(s.y[i], options.log_y)) continue;
        if (!first) svg << ' ';
        first = false;
        svg << px(xa.to_pixel(s.x[i])) << ',' << px(ya.to_pixel(s.y[i]));
      }
      svg << "\"/>\n";
    }
    svg << "<text x=\"" << px(w - right - 10) << "\" y=\"" << px(top + 16 + 16 * static_cast<double>(k))
        << "\" text-anchor=\"end\" fill=\"" << color << "\">" << xml_escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qwalk::harness
