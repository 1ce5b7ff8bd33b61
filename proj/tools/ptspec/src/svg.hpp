#pragma once

#include <string>
#include <vector>

#include "ptspec/model.hpp"

namespace ptspec::cli {

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  Parity parity = Parity::Even;
};

struct PlotLine {
  std::vector<double> x;
  std::vector<double> y;  // NaN breaks the line
};

struct Plot {
  std::string title;
  std::string xLabel;
  std::string yLabel;
  double xMin = 0.0, xMax = 1.0;
  double yMin = 0.0, yMax = 1.0;
  std::vector<PlotPoint> points;
  std::vector<PlotLine> lines;
};

/// Static SVG: frame, ticks, polylines, and markers ("+" even, "x" odd).
/// Output depends only on the plot contents.
std::string render_svg(const Plot& plot);

}  // namespace ptspec::cli
