#pragma once

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "descent/matrix.hpp"

namespace descent {

// Minkowski metric diag(+1, -1, ..., -1) with n spatial dimensions.
struct MinkowskiMetric {
  int spatial_dim = 3;

  int dimension() const { return spatial_dim + 1; }
  double sign(int index) const { return index == 0 ? 1.0 : -1.0; }
  std::vector<double> signature() const;
};

// An ordered family {gamma^0, ..., gamma^n} of order N = 2^floor((n+1)/2)
// satisfying {gamma^A, gamma^B} = 2 eta^{AB} and gamma^A+ = g0 gamma^A g0.
struct GammaRepresentation {
  MinkowskiMetric metric;
  std::vector<ComplexMatrix> gammas;
  std::string label;

  int order() const { return gammas.empty() ? 0 : static_cast<int>(gammas.front().rows()); }
  int count() const { return static_cast<int>(gammas.size()); }
  const ComplexMatrix& gamma(int a) const { return gammas.at(static_cast<std::size_t>(a)); }
};

int expected_order(int spatial_dim);

struct RepresentationResiduals {
  double clifford = 0.0;     // max |{g^A, g^B} - 2 eta^{AB} I|
  double hermiticity = 0.0;  // max |g^A+ - g0 g^A g0|
  double unitarity = 0.0;    // max |g^A g^A+ - I|
  double trace = 0.0;        // max |tr g^A|
  double max() const;
};

RepresentationResiduals representation_residuals(const GammaRepresentation& rep);
void require_valid(const GammaRepresentation& rep, double tol = kAlgebraTol);

ComplexMatrix pauli(int i);  // sigma^1..sigma^3

// The standard (Dirac) representation: g0 = diag(I, -I), g^i = offdiag(s^i, -s^i).
GammaRepresentation dirac_representation();

// i g0 g1 g2 g3; Hermitian, involutive, anticommutes with every gamma (verified).
ComplexMatrix gamma5(const GammaRepresentation& rep);

// Rotation generators Sigma^i = (i/2) eps^{ijk} g^j g^k and boosts alpha^i = g0 g^i.
struct SpinGenerators {
  std::array<ComplexMatrix, 3> sigma;
  std::array<ComplexMatrix, 3> alpha;
};
SpinGenerators spin_generators(const GammaRepresentation& rep);

// {U g^A U+} for unitary U; preserves all representation invariants.
GammaRepresentation transform(const GammaRepresentation& rep, const ComplexMatrix& u,
                              const std::string& label = "");

// Coefficients over the 16-element matrix basis, in the fixed order
//   I; g^0..g^3; g^mu g^nu (mu<nu, lexicographic); g^mu g5; g5.
struct BasisCoefficients {
  cplx scalar{};
  std::array<cplx, 4> vector{};
  std::array<cplx, 6> tensor{};
  std::array<cplx, 4> axial{};
  cplx pseudoscalar{};

  cplx flat(int i) const;
  void set_flat(int i, cplx v);
};

std::array<ComplexMatrix, 16> clifford_basis(const GammaRepresentation& rep);
BasisCoefficients basis_decompose(const ComplexMatrix& m, const GammaRepresentation& rep);
ComplexMatrix recombine(const BasisCoefficients& coeffs, const GammaRepresentation& rep);

// Gamma matrices for 1 <= n <= 8 spatial dimensions by the tensor-product
// recursion (Pauli seed; the odd-dimension step adjoins the chirality element).
GammaRepresentation generate_gammas(int spatial_dim);

nlohmann::json representation_to_json(const GammaRepresentation& rep);
GammaRepresentation representation_from_json(const nlohmann::json& j);

}  // namespace descent
