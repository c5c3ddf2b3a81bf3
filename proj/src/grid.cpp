#include "descent/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace descent {

namespace {

void check_axis(int n, double l) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("grid: points per axis must be positive and even");
  if (!(l > 0.0)) throw std::invalid_argument("grid: box lengths must be positive");
}

}  // namespace

Grid Grid::make_2d(int nx, int ny, double lx, double ly) {
  check_axis(nx, lx);
  check_axis(ny, ly);
  Grid g;
  g.dim = 2;
  g.points = {nx, ny, 1};
  g.lengths = {lx, ly, 1.0};
  return g;
}

Grid Grid::make_3d(int nx, int ny, int nz, double lx, double ly, double lz) {
  check_axis(nx, lx);
  check_axis(ny, ly);
  check_axis(nz, lz);
  Grid g;
  g.dim = 3;
  g.points = {nx, ny, nz};
  g.lengths = {lx, ly, lz};
  return g;
}

double Grid::min_spacing() const {
  double s = spacing(0);
  for (int a = 1; a < dim; ++a) s = std::min(s, spacing(a));
  return s;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= spacing(a);
  return v;
}

std::vector<double> Grid::wavenumbers(int axis) const {
  const int n = points[axis];
  const double base = 2.0 * M_PI / lengths[axis];
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) k[static_cast<std::size_t>(m)] = base * (m < n / 2 ? m : m - n);
  return k;
}

bool Grid::operator==(const Grid& other) const {
  return dim == other.dim && points == other.points && lengths == other.lengths;
}

}  // namespace descent
