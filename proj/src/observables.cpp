#include "descent/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace descent {

double total_charge(const SpinorField& psi) {
  double sum = 0.0;
  for (const cplx& v : psi.values) sum += std::norm(v);
  return sum * psi.grid.cell_volume();
}

double quadratic_form(const SpinorField& psi, const ComplexMatrix& m) {
  const int nc = psi.components;
  if (m.rows() != nc || m.cols() != nc)
    throw std::invalid_argument("quadratic_form: matrix order does not match component count");
  const long npts = psi.grid.total_points();
  cplx sum(0.0, 0.0);
  for (long p = 0; p < npts; ++p) {
    for (int r = 0; r < nc; ++r) {
      cplx mv(0.0, 0.0);
      for (int c = 0; c < nc; ++c) mv += m(r, c) * psi.at(c, p);
      sum += std::conj(psi.at(r, p)) * mv;
    }
  }
  return (sum * psi.grid.cell_volume()).real();
}

double kappa3_charge(const SpinorField& psi, const DescentDecomposition& d) {
  if (psi.components != 4) throw std::invalid_argument("kappa3_charge: 4-component field required");
  return quadratic_form(psi, d.kappa3);
}

double sector_norm(const SpinorField& psi, const ComplexMatrix& projection) {
  if (projection.rows() != psi.components)
    throw std::invalid_argument("sector_norm: projection order does not match component count");
  const long npts = psi.grid.total_points();
  const int nc = psi.components;
  double sum = 0.0;
  for (long p = 0; p < npts; ++p) {
    for (int r = 0; r < nc; ++r) {
      cplx mv(0.0, 0.0);
      for (int c = 0; c < nc; ++c) mv += projection(r, c) * psi.at(c, p);
      sum += std::norm(mv);
    }
  }
  return std::sqrt(sum * psi.grid.cell_volume());
}

std::array<RealField, 4> spinor_current_field(const SpinorField& psi, const GammaRepresentation& rep) {
  if (psi.components != rep.order())
    throw std::invalid_argument("spinor_current_field: representation order mismatch");
  const int nc = psi.components;
  const long npts = psi.grid.total_points();

  std::array<RealField, 4> j{RealField::zeros(psi.grid), RealField::zeros(psi.grid),
                             RealField::zeros(psi.grid), RealField::zeros(psi.grid)};
  const int count = rep.count();
  std::vector<ComplexMatrix> bilinear;  // g0 g^mu
  for (int mu = 0; mu < count; ++mu) bilinear.push_back(rep.gamma(0) * rep.gamma(mu));

  for (long p = 0; p < npts; ++p) {
    for (int mu = 0; mu < count && mu < 4; ++mu) {
      cplx val(0.0, 0.0);
      for (int r = 0; r < nc; ++r) {
        cplx mv(0.0, 0.0);
        for (int c = 0; c < nc; ++c) mv += bilinear[static_cast<std::size_t>(mu)](r, c) * psi.at(c, p);
        val += std::conj(psi.at(r, p)) * mv;
      }
      j[static_cast<std::size_t>(mu)][p] = val.real();
    }
  }
  return j;
}

void normalize_total_charge(SpinorField& psi) {
  const double q = total_charge(psi);
  if (q <= 0.0) throw std::invalid_argument("normalize_total_charge: zero field");
  const double scale = 1.0 / std::sqrt(q);
  for (cplx& v : psi.values) v *= scale;
}

}  // namespace descent
