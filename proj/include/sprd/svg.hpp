#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sprd {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Self-contained SVG 1.1 line plot (no external assets), with optional
/// log10 axes. Non-positive values are dropped on log axes.
void write_line_plot(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<PlotSeries>& series,
                     bool log_x = false, bool log_y = false);

} // namespace sprd
