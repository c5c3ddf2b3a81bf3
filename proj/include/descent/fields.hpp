#pragma once

#include <array>
#include <complex>
#include <vector>

#include "descent/grid.hpp"
#include "descent/matrix.hpp"

namespace descent {

// Multi-component complex field on a periodic grid, component-major:
// values[c * points + idx].
struct SpinorField {
  Grid grid;
  int components = 4;
  double mass = 0.0;
  double charge = 0.0;
  std::vector<cplx> values;

  static SpinorField zeros(const Grid& g, int components, double mass = 0.0, double charge = 0.0);

  cplx& at(int c, long idx) { return values[static_cast<std::size_t>(c) * static_cast<std::size_t>(grid.total_points()) + static_cast<std::size_t>(idx)]; }
  const cplx& at(int c, long idx) const { return values[static_cast<std::size_t>(c) * static_cast<std::size_t>(grid.total_points()) + static_cast<std::size_t>(idx)]; }
  cplx* component(int c) { return values.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(grid.total_points()); }
  const cplx* component(int c) const { return values.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(grid.total_points()); }

  bool finite() const;
};

struct RealField {
  Grid grid;
  std::vector<double> values;

  static RealField zeros(const Grid& g);

  double& operator[](long idx) { return values[static_cast<std::size_t>(idx)]; }
  const double& operator[](long idx) const { return values[static_cast<std::size_t>(idx)]; }

  double max_abs() const;
  double mean() const;
};

// Electromagnetic state on the grid. Two storage forms:
//  - Fields: E and B component arrays (used by the field-formulation solver);
//  - Potentials: A^0..A^3 plus the time derivatives of the spatial
//    potentials (temporal-gauge evolution variables), E and B derived.
// In the temporal gauge A^0 is identically zero.
struct GaugeFieldState {
  enum class Form { Fields, Potentials };

  Grid grid;
  Form form = Form::Fields;
  double time = 0.0;

  std::array<RealField, 3> electric;
  std::array<RealField, 3> magnetic;

  std::array<RealField, 4> potential;
  std::array<RealField, 3> potential_rate;  // d/dt of A^1..A^3

  static GaugeFieldState fields_on(const Grid& g);
  static GaugeFieldState potentials_on(const Grid& g);

  void require_temporal_gauge(double tol = 1e-14) const;
};

}  // namespace descent
