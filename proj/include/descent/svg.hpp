#pragma once

#include <string>
#include <utility>
#include <vector>

namespace descent {

// Minimal polyline line plot, no external plotting dependency.
void write_svg_line_plot(const std::string& path, const std::string& title,
                         const std::vector<std::pair<double, double>>& samples);

}  // namespace descent
