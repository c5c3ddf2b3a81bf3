#pragma once

#include <array>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "descent/clifford.hpp"

namespace descent {

// Everything needed to split a 3+1 representation into its two 2+1 sectors:
// the projections P+-, the superselection operator kappa3 = g3 g5, the
// block-diagonalizing unitary, the two order-2 sub-representations, and the
// off-diagonal blocks of g3.
struct DescentDecomposition {
  GammaRepresentation parent;
  ComplexMatrix p_plus, p_minus;
  ComplexMatrix kappa3;
  ComplexMatrix u_block;
  GammaRepresentation sub_plus, sub_minus;
  ComplexMatrix gamma3_plus_minus, gamma3_minus_plus;
};

// g3 g5 = i g0 g1 g2; Hermitian, involutive, traceless; commutes with
// g0, g1, g2 and anticommutes with g3 (all verified).
ComplexMatrix kappa3_operator(const GammaRepresentation& rep);

// Basis of the commutant of {g0, g1, g2} inside the 16-element matrix basis,
// found by a linear solve. For a valid representation this is exactly
// span{I, g3 g5}.
std::vector<ComplexMatrix> reduced_commutant(const GammaRepresentation& rep);

// Solves for the idempotent elements of the commutant and returns the unique
// nontrivial complementary pair, P+- = (I +- g3 g5)/2. Throws if the
// commutant dimension is not 2.
std::pair<ComplexMatrix, ComplexMatrix> solve_decoupling_projections(const GammaRepresentation& rep);

// Unitary whose conjugation sends P+ to diag(I2, 0) and P- to diag(0, I2).
// Rows come from the projected standard basis vectors, ordered by descending
// norm (ties by index) and orthonormalized by modified Gram-Schmidt.
ComplexMatrix block_diagonalizer(const ComplexMatrix& p_plus, const ComplexMatrix& p_minus);

DescentDecomposition make_descent_decomposition(const GammaRepresentation& rep);

struct DecompositionResiduals {
  double projection_laws = 0.0;   // idempotence, orthogonality, completeness, rank
  double commutation = 0.0;       // [P+, g^a], a = 0..2
  double kappa3_algebra = 0.0;    // {g3, k3} = 0, [g3, k3] = -2 g5, k3 properties
  double block_pattern = 0.0;     // off-pattern entries of conjugated gammas
  double sub_algebra = 0.0;       // 2+1 Clifford axioms of both sub-representations
  double max() const;
};
DecompositionResiduals decomposition_residuals(const DescentDecomposition& d);

// psi -> the two 2-component blocks of U psi.
std::pair<Eigen::Vector2cd, Eigen::Vector2cd> split_spinor(const Eigen::Vector4cd& psi,
                                                           const DescentDecomposition& d);
Eigen::Vector4cd merge_spinor(const Eigen::Vector2cd& plus, const Eigen::Vector2cd& minus,
                              const DescentDecomposition& d);

// Sector decomposition of the vector current for a single spinor value:
// j_+-^a = Psi_+-^+ g0_+- g^a_+- Psi_+- and the two complex g3 cross terms.
struct SectorCurrents {
  std::array<double, 3> plus{};
  std::array<double, 3> minus{};
  cplx cross_plus_minus{};
  cplx cross_minus_plus{};
};
SectorCurrents sector_currents(const Eigen::Vector4cd& psi, const DescentDecomposition& d);

// D = exp(-i/2 theta Sigma3) exp(-1/2 (eta1 alpha1 + eta2 alpha2)) must leave
// kappa3 and the projections invariant.
struct CovarianceReport {
  double kappa3_residual = 0.0;
  double projection_residual = 0.0;
  bool within(double tol) const { return kappa3_residual < tol && projection_residual < tol; }
};
CovarianceReport covariance_check(const DescentDecomposition& d, double theta,
                                  std::array<double, 2> boost);

// Flipping the sign of the third sub-gamma (the y-reflection on the reduced
// Dirac operator) must map the plus sub-representation onto the minus one.
struct ReflectionReport {
  double mapped_mismatch = 0.0;        // |(G+^0, G+^1, -G+^2) - (G-^0, G-^1, G-^2)|
  double unreflected_difference = 0.0; // entrywise difference before the flip
};
ReflectionReport reflection_relation_check(const DescentDecomposition& d);

nlohmann::json decomposition_to_json(const DescentDecomposition& d);

}  // namespace descent
