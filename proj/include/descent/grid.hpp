#pragma once

#include <array>
#include <vector>

namespace descent {

// Periodic uniform grid in 2 or 3 spatial dimensions. Index order is
// x-fastest: idx = ix + nx*(iy + ny*iz).
struct Grid {
  int dim = 2;
  std::array<int, 3> points{1, 1, 1};
  std::array<double, 3> lengths{1.0, 1.0, 1.0};

  static Grid make_2d(int nx, int ny, double lx, double ly);
  static Grid make_3d(int nx, int ny, int nz, double lx, double ly, double lz);

  long total_points() const {
    return static_cast<long>(points[0]) * points[1] * points[2];
  }
  double spacing(int axis) const { return lengths[axis] / points[axis]; }
  double min_spacing() const;
  double cell_volume() const;
  int index(int ix, int iy, int iz = 0) const {
    return ix + points[0] * (iy + points[1] * iz);
  }
  // Wavenumbers along one axis in FFT ordering: 2*pi*m/L for
  // m = 0..n/2-1, then m-n for the upper half.
  std::vector<double> wavenumbers(int axis) const;

  bool operator==(const Grid& other) const;
  bool operator!=(const Grid& other) const { return !(*this == other); }
};

}  // namespace descent
