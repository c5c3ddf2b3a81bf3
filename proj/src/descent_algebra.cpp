#include "descent/descent_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace descent {

namespace {

const cplx kI(0.0, 1.0);

void require_reduced_input(const GammaRepresentation& rep) {
  if (rep.metric.spatial_dim != 3 || rep.count() != 4)
    throw std::invalid_argument("descent: requires a 3+1 representation");
}

}  // namespace

ComplexMatrix kappa3_operator(const GammaRepresentation& rep) {
  require_reduced_input(rep);
  const ComplexMatrix k3 = rep.gamma(3) * gamma5(rep);
  const ComplexMatrix alt = kI * rep.gamma(0) * rep.gamma(1) * rep.gamma(2);
  const ComplexMatrix id = identity_matrix(4);
  if (max_abs(k3 - alt) > kAlgebraTol) throw std::runtime_error("kappa3: g3 g5 != i g0 g1 g2");
  if (max_abs(ComplexMatrix(k3.adjoint()) - k3) > kAlgebraTol || max_abs(k3 * k3 - id) > kAlgebraTol ||
      std::abs(k3.trace()) > kAlgebraTol)
    throw std::runtime_error("kappa3: not Hermitian involutive traceless");
  for (int a = 0; a < 3; ++a)
    if (max_abs(commutator(k3, rep.gamma(a))) > kAlgebraTol)
      throw std::runtime_error("kappa3: fails to commute with the reduced gammas");
  if (max_abs(anticommutator(k3, rep.gamma(3))) > kAlgebraTol)
    throw std::runtime_error("kappa3: fails to anticommute with g3");
  return k3;
}

std::vector<ComplexMatrix> reduced_commutant(const GammaRepresentation& rep) {
  require_reduced_input(rep);
  const std::array<ComplexMatrix, 16> basis = clifford_basis(rep);

  // Linear map c |-> coefficients of [sum_i c_i B_i, g^a] for a = 0, 1, 2;
  // the commutant is its kernel.
  ComplexMatrix system = ComplexMatrix::Zero(48, 16);
  for (int i = 0; i < 16; ++i) {
    for (int a = 0; a < 3; ++a) {
      const BasisCoefficients col =
          basis_decompose(commutator(basis[static_cast<std::size_t>(i)], rep.gamma(a)), rep);
      for (int r = 0; r < 16; ++r) system(16 * a + r, i) = col.flat(r);
    }
  }

  Eigen::FullPivLU<ComplexMatrix> lu(system);
  lu.setThreshold(1e-8);
  const ComplexMatrix kernel = lu.kernel();

  std::vector<ComplexMatrix> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 16; ++i) m += kernel(i, c) * basis[static_cast<std::size_t>(i)];
    out.push_back(m);
  }
  return out;
}

std::pair<ComplexMatrix, ComplexMatrix> solve_decoupling_projections(const GammaRepresentation& rep) {
  const std::vector<ComplexMatrix> commutant = reduced_commutant(rep);
  if (commutant.size() != 2)
    throw std::runtime_error("decoupling projections: commutant dimension " +
                             std::to_string(commutant.size()) + ", expected 2 (corrupt representation)");

  // The commutant must be span{I, g3 g5}: check each basis element has only
  // scalar and g3-g5 components.
  for (const ComplexMatrix& m : commutant) {
    const BasisCoefficients coeffs = basis_decompose(m, rep);
    for (int i = 0; i < 16; ++i) {
      if (i == 0 || i == 14) continue;  // I and g3 g5
      if (std::abs(coeffs.flat(i)) > kSolveTol)
        throw std::runtime_error("decoupling projections: commutant leaves span{I, g3 g5}");
    }
  }

  // Extract the traceless direction, normalize it to an involution, and fix
  // its sign against g3 g5 so that P_plus carries the + sign.
  ComplexMatrix direction = commutant[0] - (commutant[0].trace() / 4.0) * identity_matrix(4);
  if (max_abs(direction) < 1e-6)
    direction = commutant[1] - (commutant[1].trace() / 4.0) * identity_matrix(4);
  const ComplexMatrix dir_sq = direction * direction;
  const double scale = std::sqrt(std::abs(dir_sq.trace().real() / 4.0));
  if (scale < 1e-12)
    throw std::runtime_error("decoupling projections: degenerate commutant direction");
  direction /= scale;
  const cplx overlap = (rep.gamma(3) * gamma5(rep) * direction).trace() / 4.0;
  if (overlap.real() < 0.0) direction = -direction;

  // Idempotence on a0 I + d3 k fixes a0 = 1/2, d3 = +-1/2.
  const ComplexMatrix p_plus = 0.5 * (identity_matrix(4) + direction);
  const ComplexMatrix p_minus = 0.5 * (identity_matrix(4) - direction);

  for (const ComplexMatrix& p : {p_plus, p_minus}) {
    if (max_abs(p * p - p) > kSolveTol || max_abs(ComplexMatrix(p.adjoint()) - p) > kSolveTol ||
        std::abs(p.trace() - cplx(2.0, 0.0)) > kSolveTol)
      throw std::runtime_error("decoupling projections: candidate is not a rank-2 orthogonal projection");
  }
  return {p_plus, p_minus};
}

ComplexMatrix block_diagonalizer(const ComplexMatrix& p_plus, const ComplexMatrix& p_minus) {
  ComplexMatrix columns(4, 4);
  int filled = 0;
  for (const ComplexMatrix* p : {&p_plus, &p_minus}) {
    // Candidate vectors P e_i, ordered by descending norm (ties by index).
    std::array<Eigen::Vector4cd, 4> candidates;
    std::array<int, 4> order{0, 1, 2, 3};
    for (int i = 0; i < 4; ++i) candidates[static_cast<std::size_t>(i)] = (*p).col(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return candidates[static_cast<std::size_t>(a)].norm() > candidates[static_cast<std::size_t>(b)].norm();
    });

    int kept = 0;
    for (int idx : order) {
      if (kept == 2) break;
      Eigen::Vector4cd v = candidates[static_cast<std::size_t>(idx)];
      for (int j = 0; j < filled; ++j) v -= columns.col(j).dot(v) * columns.col(j);
      if (v.norm() > 0.5) {
        columns.col(filled) = v / v.norm();
        ++filled;
        ++kept;
      }
    }
    if (kept != 2)
      throw std::runtime_error("block_diagonalizer: eigenspace dimension != 2");
  }
  const ComplexMatrix u = columns.adjoint();
  if (unitarity_residual(u) > kSolveTol)
    throw std::runtime_error("block_diagonalizer: result not unitary");
  return u;
}

DescentDecomposition make_descent_decomposition(const GammaRepresentation& rep) {
  require_valid(rep);
  DescentDecomposition d;
  d.parent = rep;
  std::tie(d.p_plus, d.p_minus) = solve_decoupling_projections(rep);
  d.kappa3 = kappa3_operator(rep);
  d.u_block = block_diagonalizer(d.p_plus, d.p_minus);

  GammaRepresentation sub_plus, sub_minus;
  sub_plus.metric.spatial_dim = 2;
  sub_minus.metric.spatial_dim = 2;
  sub_plus.label = rep.label + "-plus";
  sub_minus.label = rep.label + "-minus";
  for (int a = 0; a < 3; ++a) {
    const ComplexMatrix hat = d.u_block * rep.gamma(a) * d.u_block.adjoint();
    sub_plus.gammas.push_back(hat.block(0, 0, 2, 2));
    sub_minus.gammas.push_back(hat.block(2, 2, 2, 2));
  }
  const ComplexMatrix hat3 = d.u_block * rep.gamma(3) * d.u_block.adjoint();
  d.gamma3_plus_minus = hat3.block(0, 2, 2, 2);
  d.gamma3_minus_plus = hat3.block(2, 0, 2, 2);
  d.sub_plus = std::move(sub_plus);
  d.sub_minus = std::move(sub_minus);

  const DecompositionResiduals res = decomposition_residuals(d);
  if (res.max() > kSolveTol)
    throw std::runtime_error("descent decomposition: invariants violated (residual " +
                             std::to_string(res.max()) + ")");
  return d;
}

double DecompositionResiduals::max() const {
  return std::max({projection_laws, commutation, kappa3_algebra, block_pattern, sub_algebra});
}

DecompositionResiduals decomposition_residuals(const DescentDecomposition& d) {
  DecompositionResiduals r;
  const ComplexMatrix id = identity_matrix(4);

  for (const ComplexMatrix* p : {&d.p_plus, &d.p_minus}) {
    r.projection_laws = std::max(r.projection_laws, max_abs(*p * *p - *p));
    r.projection_laws = std::max(r.projection_laws, max_abs(ComplexMatrix(p->adjoint()) - *p));
    r.projection_laws = std::max(r.projection_laws, std::abs(p->trace() - cplx(2.0, 0.0)));
  }
  r.projection_laws = std::max(r.projection_laws, max_abs(d.p_plus * d.p_minus));
  r.projection_laws = std::max(r.projection_laws, max_abs(d.p_plus + d.p_minus - id));

  for (int a = 0; a < 3; ++a)
    r.commutation = std::max(r.commutation, max_abs(commutator(d.p_plus, d.parent.gamma(a))));

  const ComplexMatrix g5 = gamma5(d.parent);
  r.kappa3_algebra = max_abs(d.kappa3 - (d.p_plus - d.p_minus));
  r.kappa3_algebra = std::max(r.kappa3_algebra, max_abs(d.kappa3 - d.parent.gamma(3) * g5));
  r.kappa3_algebra = std::max(r.kappa3_algebra, max_abs(ComplexMatrix(d.kappa3.adjoint()) - d.kappa3));
  r.kappa3_algebra = std::max(r.kappa3_algebra, max_abs(d.kappa3 * d.kappa3 - id));
  r.kappa3_algebra = std::max(r.kappa3_algebra, std::abs(d.kappa3.trace()));
  r.kappa3_algebra = std::max(r.kappa3_algebra, max_abs(anticommutator(d.parent.gamma(3), d.kappa3)));
  r.kappa3_algebra =
      std::max(r.kappa3_algebra, max_abs(commutator(d.parent.gamma(3), d.kappa3) + 2.0 * g5));

  // Conjugated projections must be the canonical diagonal pair, the reduced
  // gammas block-diagonal, g3 strictly off-block-diagonal.
  ComplexMatrix canon_plus = ComplexMatrix::Zero(4, 4);
  canon_plus(0, 0) = canon_plus(1, 1) = 1.0;
  ComplexMatrix canon_minus = ComplexMatrix::Zero(4, 4);
  canon_minus(2, 2) = canon_minus(3, 3) = 1.0;
  r.block_pattern = max_abs(d.u_block * d.p_plus * d.u_block.adjoint() - canon_plus);
  r.block_pattern =
      std::max(r.block_pattern, max_abs(d.u_block * d.p_minus * d.u_block.adjoint() - canon_minus));
  for (int a = 0; a < 3; ++a) {
    const ComplexMatrix hat = d.u_block * d.parent.gamma(a) * d.u_block.adjoint();
    r.block_pattern = std::max(r.block_pattern, max_abs(ComplexMatrix(hat.block(0, 2, 2, 2))));
    r.block_pattern = std::max(r.block_pattern, max_abs(ComplexMatrix(hat.block(2, 0, 2, 2))));
  }
  const ComplexMatrix hat3 = d.u_block * d.parent.gamma(3) * d.u_block.adjoint();
  r.block_pattern = std::max(r.block_pattern, max_abs(ComplexMatrix(hat3.block(0, 0, 2, 2))));
  r.block_pattern = std::max(r.block_pattern, max_abs(ComplexMatrix(hat3.block(2, 2, 2, 2))));

  r.sub_algebra = std::max(representation_residuals(d.sub_plus).max(),
                           representation_residuals(d.sub_minus).max());
  return r;
}

std::pair<Eigen::Vector2cd, Eigen::Vector2cd> split_spinor(const Eigen::Vector4cd& psi,
                                                           const DescentDecomposition& d) {
  const Eigen::Vector4cd hat = d.u_block * psi;
  return {hat.head<2>(), hat.tail<2>()};
}

Eigen::Vector4cd merge_spinor(const Eigen::Vector2cd& plus, const Eigen::Vector2cd& minus,
                              const DescentDecomposition& d) {
  Eigen::Vector4cd hat;
  hat << plus(0), plus(1), minus(0), minus(1);
  return d.u_block.adjoint() * hat;
}

SectorCurrents sector_currents(const Eigen::Vector4cd& psi, const DescentDecomposition& d) {
  SectorCurrents out;
  const Eigen::Vector4cd psi_p = d.p_plus * psi;
  const Eigen::Vector4cd psi_m = d.p_minus * psi;
  const ComplexMatrix& g0 = d.parent.gamma(0);
  for (int a = 0; a < 3; ++a) {
    const ComplexMatrix gp = d.p_plus * d.parent.gamma(a) * d.p_plus;
    const ComplexMatrix gm = d.p_minus * d.parent.gamma(a) * d.p_minus;
    out.plus[static_cast<std::size_t>(a)] =
        (psi_p.adjoint() * (d.p_plus * g0 * d.p_plus) * gp * psi_p)(0).real();
    out.minus[static_cast<std::size_t>(a)] =
        (psi_m.adjoint() * (d.p_minus * g0 * d.p_minus) * gm * psi_m)(0).real();
  }
  const ComplexMatrix g3_pm = d.p_plus * d.parent.gamma(3) * d.p_minus;
  const ComplexMatrix g3_mp = d.p_minus * d.parent.gamma(3) * d.p_plus;
  out.cross_plus_minus = (psi_p.adjoint() * (d.p_plus * g0 * d.p_plus) * g3_pm * psi_m)(0);
  out.cross_minus_plus = (psi_m.adjoint() * (d.p_minus * g0 * d.p_minus) * g3_mp * psi_p)(0);
  return out;
}

CovarianceReport covariance_check(const DescentDecomposition& d, double theta,
                                  std::array<double, 2> boost) {
  const SpinGenerators gen = spin_generators(d.parent);
  const ComplexMatrix rotation = matrix_exponential(ComplexMatrix(-0.5 * kI * theta * gen.sigma[2]));
  const ComplexMatrix boost_m = matrix_exponential(
      ComplexMatrix(-0.5 * (boost[0] * gen.alpha[0] + boost[1] * gen.alpha[1])));
  const ComplexMatrix D = rotation * boost_m;
  const ComplexMatrix Dinv = D.inverse();

  CovarianceReport rep;
  rep.kappa3_residual = max_abs(Dinv * d.kappa3 * D - d.kappa3);
  rep.projection_residual = std::max(max_abs(commutator(D, d.p_plus)), max_abs(commutator(D, d.p_minus)));
  return rep;
}

ReflectionReport reflection_relation_check(const DescentDecomposition& d) {
  ReflectionReport rep;
  for (int a = 0; a < 3; ++a) {
    const double flip = (a == 2) ? -1.0 : 1.0;
    rep.mapped_mismatch =
        std::max(rep.mapped_mismatch, max_abs(flip * d.sub_plus.gamma(a) - d.sub_minus.gamma(a)));
    rep.unreflected_difference =
        std::max(rep.unreflected_difference, max_abs(d.sub_plus.gamma(a) - d.sub_minus.gamma(a)));
  }
  return rep;
}

nlohmann::json decomposition_to_json(const DescentDecomposition& d) {
  auto matrix_json = [](const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        row.push_back(nlohmann::json::array({m(r, c).real(), m(r, c).imag()}));
      rows.push_back(row);
    }
    return rows;
  };
  nlohmann::json j;
  j["parent"] = representation_to_json(d.parent);
  j["p_plus"] = matrix_json(d.p_plus);
  j["p_minus"] = matrix_json(d.p_minus);
  j["kappa3"] = matrix_json(d.kappa3);
  j["u_block"] = matrix_json(d.u_block);
  j["sub_plus"] = representation_to_json(d.sub_plus);
  j["sub_minus"] = representation_to_json(d.sub_minus);
  j["gamma3_plus_minus"] = matrix_json(d.gamma3_plus_minus);
  j["gamma3_minus_plus"] = matrix_json(d.gamma3_minus_plus);
  return j;
}

}  // namespace descent
