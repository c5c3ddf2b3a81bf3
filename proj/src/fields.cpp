#include "descent/fields.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace descent {

SpinorField SpinorField::zeros(const Grid& g, int components, double mass, double charge) {
  if (components != 2 && components != 4)
    throw std::invalid_argument("SpinorField: components must be 2 or 4");
  if (mass < 0.0) throw std::invalid_argument("SpinorField: mass must be nonnegative");
  SpinorField f;
  f.grid = g;
  f.components = components;
  f.mass = mass;
  f.charge = charge;
  f.values.assign(static_cast<std::size_t>(components) * static_cast<std::size_t>(g.total_points()),
                  cplx(0.0, 0.0));
  return f;
}

bool SpinorField::finite() const {
  for (const cplx& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

RealField RealField::zeros(const Grid& g) {
  RealField f;
  f.grid = g;
  f.values.assign(static_cast<std::size_t>(g.total_points()), 0.0);
  return f;
}

double RealField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double RealField::mean() const {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

GaugeFieldState GaugeFieldState::fields_on(const Grid& g) {
  GaugeFieldState s;
  s.grid = g;
  s.form = Form::Fields;
  for (int i = 0; i < 3; ++i) {
    s.electric[static_cast<std::size_t>(i)] = RealField::zeros(g);
    s.magnetic[static_cast<std::size_t>(i)] = RealField::zeros(g);
  }
  return s;
}

GaugeFieldState GaugeFieldState::potentials_on(const Grid& g) {
  GaugeFieldState s;
  s.grid = g;
  s.form = Form::Potentials;
  for (int i = 0; i < 4; ++i) s.potential[static_cast<std::size_t>(i)] = RealField::zeros(g);
  for (int i = 0; i < 3; ++i) s.potential_rate[static_cast<std::size_t>(i)] = RealField::zeros(g);
  return s;
}

void GaugeFieldState::require_temporal_gauge(double tol) const {
  if (form != Form::Potentials)
    throw std::invalid_argument("GaugeFieldState: potentials form required");
  if (potential[0].max_abs() > tol)
    throw std::invalid_argument("GaugeFieldState: temporal gauge requires A^0 = 0");
}

}  // namespace descent
