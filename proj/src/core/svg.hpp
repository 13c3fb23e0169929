#pragma once

#include <string>
#include <vector>

namespace alphadisk {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Line plot with optional logarithmic axes. Points that cannot be placed
// (non-finite, or non-positive on a log axis) are skipped.
struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<SvgSeries> series;
};

std::string render_svg(const SvgPlot& plot);

}  // namespace alphadisk
