#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "comove/series.hpp"

namespace comove {

struct PlotLine {
    std::string label;
    std::string color;          ///< any SVG colour
    OptionalValues values;      ///< x is the index; missing values break the line
    double width = 1.5;
    double opacity = 1.0;
};

struct LinePlot {
    std::string title;
    std::string x_label = "window start (step)";
    std::string y_label;
    std::vector<PlotLine> lines;
};

/// Static SVG line chart with axes, ticks and a legend. An isolated present
/// value (missing on both sides) is drawn as a dot. The y range is fitted
/// to the present values; an empty plot gets the range [0, 1].
std::string render_svg(const LinePlot& plot);
void write_svg(const LinePlot& plot, const std::filesystem::path& path);

}  // namespace comove
