#pragma once

#include <string>
#include <vector>

namespace mkdv {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Static SVG line plot with axes, ticks and a legend. Output depends only on
/// the inputs; non-finite points break the polyline.
std::string render_svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                            const std::vector<PlotSeries>& series, bool log_y = false);

}  // namespace mkdv
