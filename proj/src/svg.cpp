#include "descent/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace descent {

namespace {

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void write_svg_line_plot(const std::string& path, const std::string& title,
                         const std::vector<std::pair<double, double>>& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("svg: cannot open " + path);

  const int width = 640, height = 360;
  const int left = 70, right = 20, top = 40, bottom = 40;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  if (!samples.empty()) {
    x_min = x_max = samples.front().first;
    y_min = y_max = samples.front().second;
    for (const auto& [x, y] : samples) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) {
    y_max += 0.5;
    y_min -= 0.5;
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << title << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#888\"/>\n";

  // axis extremes
  out << "<text x=\"" << left - 6 << "\" y=\"" << top + 10
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << format(y_max)
      << "</text>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << top + plot_h
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << format(y_min)
      << "</text>\n";
  out << "<text x=\"" << left << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << format(x_min)
      << "</text>\n";
  out << "<text x=\"" << left + plot_w << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << format(x_max)
      << "</text>\n";

  if (!samples.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : samples) {
      const double px = left + (x - x_min) / (x_max - x_min) * plot_w;
      const double py = top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;
      out << format(px) << "," << format(py) << " ";
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace descent
