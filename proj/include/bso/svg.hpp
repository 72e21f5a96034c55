#pragma once

#include <string>
#include <vector>

namespace bso {

struct SvgSeries {
  std::string label;
  std::string color;
  const std::vector<double>* x = nullptr;
  const std::vector<double>* y = nullptr;
};

// Minimal static polyline plot: white background, axes with tick labels,
// one or two series, legend. No external plotting dependency.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series, int width = 960,
                    int height = 540);

}  // namespace bso
