#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "descent/clifford.hpp"
#include "test_support.hpp"

using namespace descent;
using namespace descent::test;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("dirac representation matches the standard matrices") {
  const GammaRepresentation rep = dirac_representation();
  REQUIRE(rep.order() == 4);

  CHECK(max_abs(rep.gamma(0) - diag4(1, 1, -1, -1)) == 0.0);
  // sigma^1 in the upper-right block, -sigma^1 in the lower-left
  CHECK(max_abs(rep.gamma(1) - block4(zeros2(), pauli(1), -pauli(1), zeros2())) == 0.0);
  CHECK(max_abs(rep.gamma(2) - block4(zeros2(), pauli(2), -pauli(2), zeros2())) == 0.0);
  CHECK(max_abs(rep.gamma(3) - block4(zeros2(), pauli(3), -pauli(3), zeros2())) == 0.0);

  // distinct spatial gammas anticommute exactly
  CHECK(max_abs(anticommutator(rep.gamma(1), rep.gamma(2))) == 0.0);

  const RepresentationResiduals res = representation_residuals(rep);
  CHECK(res.clifford < 1e-12);
  CHECK(res.hermiticity < 1e-12);
  CHECK(res.unitarity < 1e-12);
  CHECK(res.trace < 1e-12);

  const ComplexMatrix id = identity_matrix(4);
  CHECK(max_abs(rep.gamma(0) * rep.gamma(0) - id) < 1e-12);
  for (int i = 1; i <= 3; ++i) CHECK(max_abs(rep.gamma(i) * rep.gamma(i) + id) < 1e-12);
}

TEST_CASE("gamma5 of the dirac representation") {
  const GammaRepresentation rep = dirac_representation();
  const ComplexMatrix g5 = gamma5(rep);

  // identity blocks off-diagonal, zero blocks on the diagonal
  CHECK(max_abs(g5 - block4(zeros2(), id2(), id2(), zeros2())) < 1e-14);
  CHECK(max_abs(g5 * g5 - identity_matrix(4)) < 1e-14);
  CHECK(max_abs(ComplexMatrix(g5.adjoint()) - g5) < 1e-14);
  for (int mu = 0; mu < 4; ++mu) CHECK(max_abs(anticommutator(g5, rep.gamma(mu))) < 1e-12);
}

TEST_CASE("gamma5 transforms covariantly") {
  const GammaRepresentation rep = dirac_representation();
  Deviates dev(2024);
  const ComplexMatrix u = random_unitary(4, dev);
  const GammaRepresentation moved = transform(rep, u);
  CHECK(max_abs(gamma5(moved) - u * gamma5(rep) * u.adjoint()) < 1e-12);
}

TEST_CASE("spin generators in the dirac representation") {
  const GammaRepresentation rep = dirac_representation();
  const SpinGenerators gen = spin_generators(rep);

  for (int i = 0; i < 3; ++i) {
    CHECK(max_abs(gen.sigma[static_cast<std::size_t>(i)] -
                  block4(pauli(i + 1), zeros2(), zeros2(), pauli(i + 1))) < 1e-14);
    CHECK(max_abs(gen.alpha[static_cast<std::size_t>(i)] -
                  block4(zeros2(), pauli(i + 1), pauli(i + 1), zeros2())) < 1e-14);
    CHECK(max_abs(ComplexMatrix(gen.sigma[static_cast<std::size_t>(i)].adjoint()) -
                  gen.sigma[static_cast<std::size_t>(i)]) < 1e-14);
    CHECK(max_abs(ComplexMatrix(gen.alpha[static_cast<std::size_t>(i)].adjoint()) -
                  gen.alpha[static_cast<std::size_t>(i)]) < 1e-14);
  }
  CHECK(max_abs(gen.sigma[2] - diag4(1, -1, 1, -1)) < 1e-14);
}

TEST_CASE("transform by the identity and by the block permutation") {
  const GammaRepresentation rep = dirac_representation();

  const GammaRepresentation same = transform(rep, identity_matrix(4));
  for (int mu = 0; mu < 4; ++mu) CHECK(max_abs(same.gamma(mu) - rep.gamma(mu)) == 0.0);

  // Permutation sending (phi_up, phi_dn, chi_dn, chi_up) to
  // (phi_up, chi_up, phi_dn, chi_dn).
  ComplexMatrix perm = ComplexMatrix::Zero(4, 4);
  perm(0, 0) = perm(1, 3) = perm(2, 1) = perm(3, 2) = 1.0;
  const GammaRepresentation hat = transform(rep, perm, "block-diagonal");

  CHECK(max_abs(hat.gamma(0) - block4(pauli(3), zeros2(), zeros2(), pauli(3))) == 0.0);
  CHECK(max_abs(hat.gamma(1) - block4(I * pauli(2), zeros2(), zeros2(), I * pauli(2))) == 0.0);
  CHECK(max_abs(hat.gamma(2) - block4(-I * pauli(1), zeros2(), zeros2(), I * pauli(1))) == 0.0);
  CHECK(max_abs(hat.gamma(3) - block4(zeros2(), pauli(1), -pauli(1), zeros2())) == 0.0);
}

TEST_CASE("random unitary transforms preserve the algebra") {
  const GammaRepresentation rep = dirac_representation();
  Deviates dev(7);
  for (int trial = 0; trial < 20; ++trial) {
    const GammaRepresentation moved = transform(rep, random_unitary(4, dev));
    CHECK(representation_residuals(moved).max() < 1e-12);
  }
}

TEST_CASE("transform rejects bad input") {
  const GammaRepresentation rep = dirac_representation();
  ComplexMatrix not_unitary = identity_matrix(4);
  not_unitary(0, 0) = 2.0;
  CHECK_THROWS_AS(transform(rep, not_unitary), std::invalid_argument);
  CHECK_THROWS_AS(transform(rep, identity_matrix(2)), std::invalid_argument);
}

TEST_CASE("basis decomposition of simple elements") {
  const GammaRepresentation rep = dirac_representation();

  const BasisCoefficients id_coeffs = basis_decompose(identity_matrix(4), rep);
  CHECK(std::abs(id_coeffs.scalar - cplx(1.0, 0.0)) < 1e-14);
  for (int i = 1; i < 16; ++i) CHECK(std::abs(id_coeffs.flat(i)) < 1e-14);

  // kappa3 = g3 g5 is itself the axial-3 basis element, coefficient +1.
  const ComplexMatrix k3 = rep.gamma(3) * gamma5(rep);
  const BasisCoefficients k3_coeffs = basis_decompose(k3, rep);
  CHECK(std::abs(k3_coeffs.axial[3] - cplx(1.0, 0.0)) < 1e-14);
  for (int i = 0; i < 16; ++i) {
    if (i == 14) continue;
    CHECK(std::abs(k3_coeffs.flat(i)) < 1e-14);
  }
}

TEST_CASE("basis decomposition round-trips random matrices") {
  const GammaRepresentation rep = dirac_representation();
  const std::array<ComplexMatrix, 16> basis = clifford_basis(rep);
  Deviates dev(99);

  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix m(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = cplx(dev.normal(), dev.normal());

    const BasisCoefficients coeffs = basis_decompose(m, rep);
    // independent recombination
    ComplexMatrix rebuilt = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 16; ++i) rebuilt += coeffs.flat(i) * basis[static_cast<std::size_t>(i)];
    CHECK(max_abs(rebuilt - m) < 1e-10);
  }
}

TEST_CASE("basis decomposition flags a defective representation") {
  GammaRepresentation broken = dirac_representation();
  broken.gammas[1] = broken.gammas[0];  // duplicate gamma -> degenerate basis
  CHECK_THROWS_AS(basis_decompose(identity_matrix(4), broken), std::runtime_error);
}

TEST_CASE("generated gamma families satisfy the algebra in every dimension") {
  for (int n = 1; n <= 8; ++n) {
    const GammaRepresentation rep = generate_gammas(n);
    CHECK(rep.count() == n + 1);
    CHECK(rep.order() == expected_order(n));
    CHECK(representation_residuals(rep).max() < 1e-12);
  }
  CHECK_THROWS_AS(generate_gammas(0), std::invalid_argument);
  CHECK_THROWS_AS(generate_gammas(9), std::invalid_argument);
}

TEST_CASE("generated n=2 family is the standard 2+1 choice") {
  const GammaRepresentation rep = generate_gammas(2);
  CHECK(max_abs(rep.gamma(0) - pauli(3)) == 0.0);
  CHECK(max_abs(rep.gamma(1) - I * pauli(2)) == 0.0);
  CHECK(max_abs(rep.gamma(2) - (-I) * pauli(1)) == 0.0);
}

TEST_CASE("generated n=3 family has order 4; n=4 keeps order 4 with 5 generators") {
  CHECK(generate_gammas(3).order() == 4);
  const GammaRepresentation five = generate_gammas(4);
  CHECK(five.order() == 4);
  CHECK(five.count() == 5);
}

TEST_CASE("representation json round-trip is exact") {
  Deviates dev(11);
  const GammaRepresentation rep = transform(dirac_representation(), random_unitary(4, dev));
  const nlohmann::json j = representation_to_json(rep);
  const GammaRepresentation back = representation_from_json(nlohmann::json::parse(j.dump()));
  REQUIRE(back.count() == rep.count());
  CHECK(back.label == rep.label);
  CHECK(back.metric.spatial_dim == rep.metric.spatial_dim);
  for (int mu = 0; mu < 4; ++mu) CHECK(max_abs(back.gamma(mu) - rep.gamma(mu)) == 0.0);
}

TEST_CASE("matrix exponential agrees with closed forms") {
  // exp(i t sigma^2) = cos(t) I + i sin(t) sigma^2
  const double t = 0.83;
  const ComplexMatrix expected = std::cos(t) * identity_matrix(2) + I * std::sin(t) * pauli(2);
  CHECK(max_abs(matrix_exponential(ComplexMatrix(I * t * pauli(2))) - expected) < 1e-14);

  // exp of a boost-like Hermitian generator: cosh / sinh
  const ComplexMatrix h = 1.7 * pauli(1);
  const ComplexMatrix expected_boost =
      std::cosh(1.7) * identity_matrix(2) + std::sinh(1.7) * pauli(1);
  CHECK(max_abs(matrix_exponential(h) - expected_boost) < 1e-12);

  CHECK(max_abs(matrix_exponential(ComplexMatrix::Zero(3, 3)) - identity_matrix(3)) == 0.0);
}
