#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <nlohmann/json.hpp>
#include <doctest.h>

#include <cmath>

#include "descent/descent_algebra.hpp"
#include "test_support.hpp"

using namespace descent;
using namespace descent::test;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("kappa3 in the dirac representation") {
  const GammaRepresentation rep = dirac_representation();
  const ComplexMatrix k3 = kappa3_operator(rep);
  CHECK(max_abs(k3 - diag4(1, -1, -1, 1)) < 1e-14);
  CHECK(max_abs(commutator(k3, rep.gamma(2))) < 1e-12);
  CHECK(max_abs(anticommutator(k3, rep.gamma(3))) < 1e-12);
  CHECK(max_abs(commutator(rep.gamma(3), k3) + 2.0 * gamma5(rep)) < 1e-12);
}

TEST_CASE("kappa3 eigenvalues are +1 +1 -1 -1 in any representation") {
  Deviates dev(31);
  for (int trial = 0; trial < 10; ++trial) {
    const GammaRepresentation rep = transform(dirac_representation(), random_unitary(4, dev));
    const ComplexMatrix k3 = kappa3_operator(rep);
    const Eigen::Matrix4cd k3_fixed = k3;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es{k3_fixed};
    REQUIRE(es.info() == Eigen::Success);
    CHECK(std::abs(es.eigenvalues()(0) + 1.0) < 1e-12);
    CHECK(std::abs(es.eigenvalues()(1) + 1.0) < 1e-12);
    CHECK(std::abs(es.eigenvalues()(2) - 1.0) < 1e-12);
    CHECK(std::abs(es.eigenvalues()(3) - 1.0) < 1e-12);
  }
}

TEST_CASE("commutant of the reduced gammas is exactly two-dimensional") {
  const GammaRepresentation rep = dirac_representation();
  const std::vector<ComplexMatrix> commutant = reduced_commutant(rep);
  REQUIRE(commutant.size() == 2);

  // every element is a0 I + d3 g3 g5
  for (const ComplexMatrix& m : commutant) {
    const BasisCoefficients coeffs = basis_decompose(m, rep);
    for (int i = 1; i < 16; ++i) {
      if (i == 14) continue;
      CHECK(std::abs(coeffs.flat(i)) < 1e-10);
    }
  }
}

TEST_CASE("projection solver returns the canonical pair in the dirac representation") {
  const GammaRepresentation rep = dirac_representation();
  const auto [p_plus, p_minus] = solve_decoupling_projections(rep);
  CHECK(max_abs(p_plus - diag4(1, 0, 0, 1)) < 1e-12);
  CHECK(max_abs(p_minus - diag4(0, 1, 1, 0)) < 1e-12);
  CHECK(max_abs(p_plus + p_minus - identity_matrix(4)) < 1e-12);
  CHECK(max_abs(p_plus * p_minus) < 1e-12);
}

TEST_CASE("projection solver commutes with unitary changes of representation") {
  const GammaRepresentation dirac = dirac_representation();
  const ComplexMatrix k3_dirac = kappa3_operator(dirac);
  Deviates dev(47);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix u = random_unitary(4, dev);
    const GammaRepresentation moved = transform(dirac, u);
    const auto [p_plus, p_minus] = solve_decoupling_projections(moved);
    // transform-the-answer oracle
    const ComplexMatrix expected_plus = 0.5 * (identity_matrix(4) + u * k3_dirac * u.adjoint());
    CHECK(max_abs(p_plus - expected_plus) < 1e-10);
    CHECK(max_abs(p_minus - (identity_matrix(4) - expected_plus)) < 1e-10);
  }
}

TEST_CASE("projection solver rejects a corrupted representation") {
  GammaRepresentation broken = dirac_representation();
  broken.gammas[3] = broken.gammas[2];
  CHECK_THROWS(solve_decoupling_projections(broken));
}

TEST_CASE("block diagonalizer reproduces the component permutation for the dirac representation") {
  const GammaRepresentation rep = dirac_representation();
  const DescentDecomposition d = make_descent_decomposition(rep);

  ComplexMatrix perm = ComplexMatrix::Zero(4, 4);
  perm(0, 0) = perm(1, 3) = perm(2, 1) = perm(3, 2) = 1.0;
  CHECK(max_abs(d.u_block - perm) == 0.0);

  // sub-representations are exactly (s3, i s2, -i s1) and (s3, i s2, +i s1)
  CHECK(max_abs(d.sub_plus.gamma(0) - pauli(3)) == 0.0);
  CHECK(max_abs(d.sub_plus.gamma(1) - I * pauli(2)) == 0.0);
  CHECK(max_abs(d.sub_plus.gamma(2) - (-I) * pauli(1)) == 0.0);
  CHECK(max_abs(d.sub_minus.gamma(0) - pauli(3)) == 0.0);
  CHECK(max_abs(d.sub_minus.gamma(1) - I * pauli(2)) == 0.0);
  CHECK(max_abs(d.sub_minus.gamma(2) - I * pauli(1)) == 0.0);

  // off-diagonal blocks of g3
  CHECK(max_abs(d.gamma3_plus_minus - pauli(1)) == 0.0);
  CHECK(max_abs(d.gamma3_minus_plus + pauli(1)) == 0.0);
}

TEST_CASE("decomposition invariants hold for dirac, block and random representations") {
  const GammaRepresentation dirac = dirac_representation();
  CHECK(decomposition_residuals(make_descent_decomposition(dirac)).max() < 1e-12);

  ComplexMatrix perm = ComplexMatrix::Zero(4, 4);
  perm(0, 0) = perm(1, 3) = perm(2, 1) = perm(3, 2) = 1.0;
  CHECK(decomposition_residuals(make_descent_decomposition(transform(dirac, perm, "block-diagonal")))
            .max() < 1e-12);

  Deviates dev(5);
  for (int trial = 0; trial < 10; ++trial) {
    const GammaRepresentation moved = transform(dirac, random_unitary(4, dev));
    const DescentDecomposition d = make_descent_decomposition(moved);
    CHECK(decomposition_residuals(d).max() < 1e-10);
    // conjugated g3 has zero diagonal blocks
    const ComplexMatrix hat3 = d.u_block * moved.gamma(3) * d.u_block.adjoint();
    CHECK(max_abs(ComplexMatrix(hat3.block(0, 0, 2, 2))) < 1e-12);
    CHECK(max_abs(ComplexMatrix(hat3.block(2, 2, 2, 2))) < 1e-12);
  }
}

TEST_CASE("spinor splitting and recombination") {
  const DescentDecomposition d = make_descent_decomposition(dirac_representation());

  Eigen::Vector4cd e0;
  e0 << 1, 0, 0, 0;
  auto [plus0, minus0] = split_spinor(e0, d);
  CHECK(std::abs(plus0(0) - cplx(1.0, 0.0)) == 0.0);
  CHECK(std::abs(plus0(1)) == 0.0);
  CHECK(minus0.norm() == 0.0);

  Eigen::Vector4cd e1;
  e1 << 0, 1, 0, 0;
  auto [plus1, minus1] = split_spinor(e1, d);
  CHECK(plus1.norm() == 0.0);
  CHECK(std::abs(minus1(0) - cplx(1.0, 0.0)) == 0.0);

  Deviates dev(13);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector4cd psi;
    for (int i = 0; i < 4; ++i) psi(i) = cplx(dev.normal(), dev.normal());
    auto [plus, minus] = split_spinor(psi, d);
    CHECK(std::abs(psi.squaredNorm() - plus.squaredNorm() - minus.squaredNorm()) < 1e-12);
    CHECK((merge_spinor(plus, minus, d) - psi).norm() < 1e-12);
  }
}

TEST_CASE("sector currents decompose the full bilinears") {
  const GammaRepresentation rep = dirac_representation();
  const DescentDecomposition d = make_descent_decomposition(rep);

  // pure plus-sector spinor: minus currents and both cross terms vanish
  Eigen::Vector4cd e0;
  e0 << 1, 0, 0, 0;
  const SectorCurrents pure = sector_currents(e0, d);
  CHECK(pure.plus[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (int a = 0; a < 3; ++a) CHECK(std::abs(pure.minus[static_cast<std::size_t>(a)]) < 1e-14);
  CHECK(std::abs(pure.cross_plus_minus) < 1e-14);
  CHECK(std::abs(pure.cross_minus_plus) < 1e-14);

  Deviates dev(17);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector4cd psi;
    for (int i = 0; i < 4; ++i) psi(i) = cplx(dev.normal(), dev.normal());
    const SectorCurrents sc = sector_currents(psi, d);
    // direct 4x4 bilinear oracle
    for (int a = 0; a < 3; ++a) {
      const cplx full = (psi.adjoint() * (rep.gamma(0) * rep.gamma(a)) * psi)(0);
      CHECK(std::abs(full.real() - sc.plus[static_cast<std::size_t>(a)] -
                     sc.minus[static_cast<std::size_t>(a)]) < 1e-12);
    }
    const cplx full3 = (psi.adjoint() * (rep.gamma(0) * rep.gamma(3)) * psi)(0);
    CHECK(std::abs(full3 - sc.cross_plus_minus - sc.cross_minus_plus) < 1e-12);
  }
}

TEST_CASE("restricted lorentz transformations leave kappa3 invariant") {
  const DescentDecomposition d = make_descent_decomposition(dirac_representation());

  // theta = 2 pi is the spinor double cover: D = -I
  {
    const SpinGenerators gen = spin_generators(d.parent);
    const ComplexMatrix rotation =
        matrix_exponential(ComplexMatrix(-0.5 * I * (2.0 * M_PI) * gen.sigma[2]));
    CHECK(max_abs(rotation + identity_matrix(4)) < 1e-10);
    CHECK(covariance_check(d, 2.0 * M_PI, {0.0, 0.0}).within(1e-10));
  }

  // closed-form oracle for a pure rotation: cos - i sin on Sigma3
  {
    const double theta = 0.7;
    const SpinGenerators gen = spin_generators(d.parent);
    const ComplexMatrix expected =
        std::cos(theta / 2.0) * identity_matrix(4) - I * std::sin(theta / 2.0) * gen.sigma[2];
    const ComplexMatrix actual = matrix_exponential(ComplexMatrix(-0.5 * I * theta * gen.sigma[2]));
    CHECK(max_abs(actual - expected) < 1e-13);
    CHECK(covariance_check(d, theta, {0.0, 0.0}).within(1e-10));
  }

  // closed-form oracle for a pure boost: cosh - sinh on (eta . alpha)/|eta|
  {
    const std::array<double, 2> eta{0.3, -0.5};
    const double r = std::hypot(eta[0], eta[1]);
    const SpinGenerators gen = spin_generators(d.parent);
    const ComplexMatrix dir = (eta[0] * gen.alpha[0] + eta[1] * gen.alpha[1]) / r;
    const ComplexMatrix expected =
        std::cosh(r / 2.0) * identity_matrix(4) - std::sinh(r / 2.0) * dir;
    const ComplexMatrix actual =
        matrix_exponential(ComplexMatrix(-0.5 * (eta[0] * gen.alpha[0] + eta[1] * gen.alpha[1])));
    CHECK(max_abs(actual - expected) < 1e-13);
    CHECK(covariance_check(d, 0.0, eta).within(1e-10));
  }

  // mixed rotation and boost
  CHECK(covariance_check(d, 1.2, {0.4, 0.1}).within(1e-10));
}

TEST_CASE("y-reflection maps one sub-representation onto the other") {
  const DescentDecomposition d = make_descent_decomposition(dirac_representation());
  const ReflectionReport rep = reflection_relation_check(d);
  CHECK(rep.mapped_mismatch == 0.0);
  CHECK(rep.unreflected_difference > 0.5);  // the triples differ in the +-i s1 entry

  // reflecting twice is the identity
  GammaRepresentation reflected = d.sub_plus;
  reflected.gammas[2] = -reflected.gammas[2];
  reflected.gammas[2] = -reflected.gammas[2];
  CHECK(max_abs(reflected.gamma(2) - d.sub_plus.gamma(2)) == 0.0);
}

TEST_CASE("decomposition exports to json") {
  const DescentDecomposition d = make_descent_decomposition(dirac_representation());
  const nlohmann::json j = decomposition_to_json(d);
  for (const char* key : {"parent", "p_plus", "p_minus", "kappa3", "u_block", "sub_plus", "sub_minus",
                          "gamma3_plus_minus", "gamma3_minus_plus"})
    CHECK(j.contains(key));
  // the parent block round-trips through the representation codec
  const GammaRepresentation back = representation_from_json(j["parent"]);
  for (int mu = 0; mu < 4; ++mu) CHECK(max_abs(back.gamma(mu) - d.parent.gamma(mu)) == 0.0);
}

TEST_CASE("reduced lagrangian density splits into sector terms") {
  const GammaRepresentation rep = dirac_representation();
  const DescentDecomposition d = make_descent_decomposition(rep);
  const double mass = 0.75;
  Deviates dev(23);

  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector4cd psi;
    std::array<Eigen::Vector4cd, 3> v;  // stand-ins for the derivatives d_a Psi
    for (int i = 0; i < 4; ++i) {
      psi(i) = cplx(dev.normal(), dev.normal());
      for (int a = 0; a < 3; ++a) v[static_cast<std::size_t>(a)](i) = cplx(dev.normal(), dev.normal());
    }

    auto lagrangian = [&](const ComplexMatrix& p) {
      const Eigen::Vector4cd psi_p = p * psi;
      cplx sum(0.0, 0.0);
      for (int a = 0; a < 3; ++a) {
        const ComplexMatrix ga = p * rep.gamma(a) * p;
        sum += (psi_p.adjoint() * (p * rep.gamma(0) * p) * ga * (I * (p * v[static_cast<std::size_t>(a)])))(0);
      }
      sum -= mass * (psi_p.adjoint() * (p * rep.gamma(0) * p) * psi_p)(0);
      return sum;
    };

    cplx full(0.0, 0.0);
    for (int a = 0; a < 3; ++a)
      full += (psi.adjoint() * rep.gamma(0) * rep.gamma(a) * (I * v[static_cast<std::size_t>(a)]))(0);
    full -= mass * (psi.adjoint() * rep.gamma(0) * psi)(0);

    CHECK(std::abs(full - lagrangian(d.p_plus) - lagrangian(d.p_minus)) < 1e-12);
  }
}
