#pragma once

#include <array>

#include "descent/descent_algebra.hpp"
#include "descent/fields.hpp"

namespace descent {

// Integral of Psi+Psi over the grid (spacing-weighted sum on the torus).
double total_charge(const SpinorField& psi);

// Integral of psi+ M psi for a per-point matrix M acting on the components.
double quadratic_form(const SpinorField& psi, const ComplexMatrix& m);

// Q_kappa3 = integral of |Psi_+|^2 - |Psi_-|^2.
double kappa3_charge(const SpinorField& psi, const DescentDecomposition& d);

// Grid L2 norm of the projected field, sqrt(integral |P psi|^2).
double sector_norm(const SpinorField& psi, const ComplexMatrix& projection);

// Pointwise Noether current j^mu = Psibar gamma^mu Psi.
std::array<RealField, 4> spinor_current_field(const SpinorField& psi, const GammaRepresentation& rep);

// Scale so total_charge == 1; throws on a zero field.
void normalize_total_charge(SpinorField& psi);

}  // namespace descent
