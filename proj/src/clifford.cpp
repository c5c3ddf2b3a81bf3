#include "descent/clifford.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace descent {

namespace {
const cplx kI(0.0, 1.0);
}

std::vector<double> MinkowskiMetric::signature() const {
  std::vector<double> sig(static_cast<std::size_t>(dimension()), -1.0);
  sig[0] = 1.0;
  return sig;
}

int expected_order(int spatial_dim) {
  return 1 << ((spatial_dim + 1) / 2);
}

double RepresentationResiduals::max() const {
  return std::max(std::max(clifford, hermiticity), std::max(unitarity, trace));
}

RepresentationResiduals representation_residuals(const GammaRepresentation& rep) {
  RepresentationResiduals res;
  const int n = rep.order();
  const ComplexMatrix id = identity_matrix(n);
  const ComplexMatrix& g0 = rep.gamma(0);
  for (int a = 0; a < rep.count(); ++a) {
    const ComplexMatrix& ga = rep.gamma(a);
    res.trace = std::max(res.trace, std::abs(ga.trace()));
    res.hermiticity = std::max(res.hermiticity, max_abs(ComplexMatrix(ga.adjoint()) - g0 * ga * g0));
    res.unitarity = std::max(res.unitarity, unitarity_residual(ga));
    for (int b = 0; b < rep.count(); ++b) {
      const double eta = (a == b) ? rep.metric.sign(a) : 0.0;
      res.clifford = std::max(res.clifford, max_abs(anticommutator(ga, rep.gamma(b)) - 2.0 * eta * id));
    }
  }
  return res;
}

void require_valid(const GammaRepresentation& rep, double tol) {
  if (rep.count() != rep.metric.dimension())
    throw std::invalid_argument("representation: expected " + std::to_string(rep.metric.dimension()) +
                                " gamma matrices, got " + std::to_string(rep.count()));
  const int n = expected_order(rep.metric.spatial_dim);
  for (const ComplexMatrix& g : rep.gammas) {
    if (g.rows() != n || g.cols() != n)
      throw std::invalid_argument("representation: gamma matrices must be " + std::to_string(n) + "x" +
                                  std::to_string(n));
    if (!all_finite(g)) throw std::invalid_argument("representation: non-finite entries");
  }
  const RepresentationResiduals res = representation_residuals(rep);
  if (res.max() > tol)
    throw std::invalid_argument("representation '" + rep.label + "' violates the algebra (residual " +
                                std::to_string(res.max()) + ")");
}

ComplexMatrix pauli(int i) {
  ComplexMatrix s(2, 2);
  switch (i) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, -kI, kI, 0;
      break;
    case 3:
      s << 1, 0, 0, -1;
      break;
    default:
      throw std::invalid_argument("pauli: index must be 1..3");
  }
  return s;
}

GammaRepresentation dirac_representation() {
  const ComplexMatrix id2 = identity_matrix(2);
  const ComplexMatrix zero2 = ComplexMatrix::Zero(2, 2);

  GammaRepresentation rep;
  rep.metric.spatial_dim = 3;
  rep.label = "dirac";
  ComplexMatrix g0(4, 4);
  g0.block(0, 0, 2, 2) = id2;
  g0.block(0, 2, 2, 2) = zero2;
  g0.block(2, 0, 2, 2) = zero2;
  g0.block(2, 2, 2, 2) = -id2;
  rep.gammas.push_back(g0);
  for (int i = 1; i <= 3; ++i) {
    ComplexMatrix gi = ComplexMatrix::Zero(4, 4);
    gi.block(0, 2, 2, 2) = pauli(i);
    gi.block(2, 0, 2, 2) = -pauli(i);
    rep.gammas.push_back(gi);
  }
  return rep;
}

ComplexMatrix gamma5(const GammaRepresentation& rep) {
  if (rep.metric.spatial_dim != 3 || rep.count() != 4)
    throw std::invalid_argument("gamma5: requires a 3+1 representation");
  const ComplexMatrix g5 = kI * rep.gamma(0) * rep.gamma(1) * rep.gamma(2) * rep.gamma(3);
  const ComplexMatrix id = identity_matrix(rep.order());
  if (max_abs(ComplexMatrix(g5.adjoint()) - g5) > kAlgebraTol || max_abs(g5 * g5 - id) > kAlgebraTol)
    throw std::runtime_error("gamma5: result not Hermitian involutive; corrupt representation");
  for (const ComplexMatrix& g : rep.gammas)
    if (max_abs(anticommutator(g5, g)) > kAlgebraTol)
      throw std::runtime_error("gamma5: does not anticommute with every gamma");
  return g5;
}

SpinGenerators spin_generators(const GammaRepresentation& rep) {
  if (rep.metric.spatial_dim != 3)
    throw std::invalid_argument("spin_generators: requires a 3+1 representation");
  SpinGenerators gen;
  // Sigma^i = (i/2) eps^{ijk} g^j g^k = i g^j g^k for (i,j,k) cyclic.
  const int cyc[3][2] = {{2, 3}, {3, 1}, {1, 2}};
  for (int i = 0; i < 3; ++i) {
    gen.sigma[i] = kI * rep.gamma(cyc[i][0]) * rep.gamma(cyc[i][1]);
    gen.alpha[i] = rep.gamma(0) * rep.gamma(i + 1);
  }
  return gen;
}

GammaRepresentation transform(const GammaRepresentation& rep, const ComplexMatrix& u,
                              const std::string& label) {
  if (u.rows() != rep.order() || u.cols() != rep.order())
    throw std::invalid_argument("transform: dimension mismatch");
  if (unitarity_residual(u) > kAlgebraTol)
    throw std::invalid_argument("transform: matrix is not unitary");
  GammaRepresentation out;
  out.metric = rep.metric;
  out.label = label.empty() ? rep.label + "-transformed" : label;
  out.gammas.reserve(rep.gammas.size());
  for (const ComplexMatrix& g : rep.gammas) out.gammas.push_back(u * g * u.adjoint());
  return out;
}

cplx BasisCoefficients::flat(int i) const {
  if (i == 0) return scalar;
  if (i <= 4) return vector[static_cast<std::size_t>(i - 1)];
  if (i <= 10) return tensor[static_cast<std::size_t>(i - 5)];
  if (i <= 14) return axial[static_cast<std::size_t>(i - 11)];
  if (i == 15) return pseudoscalar;
  throw std::out_of_range("BasisCoefficients::flat");
}

void BasisCoefficients::set_flat(int i, cplx v) {
  if (i == 0)
    scalar = v;
  else if (i <= 4)
    vector[static_cast<std::size_t>(i - 1)] = v;
  else if (i <= 10)
    tensor[static_cast<std::size_t>(i - 5)] = v;
  else if (i <= 14)
    axial[static_cast<std::size_t>(i - 11)] = v;
  else if (i == 15)
    pseudoscalar = v;
  else
    throw std::out_of_range("BasisCoefficients::set_flat");
}

std::array<ComplexMatrix, 16> clifford_basis(const GammaRepresentation& rep) {
  if (rep.metric.spatial_dim != 3 || rep.order() != 4)
    throw std::invalid_argument("clifford_basis: requires a 3+1 representation of order 4");
  std::array<ComplexMatrix, 16> basis;
  const ComplexMatrix g5 = gamma5(rep);
  basis[0] = identity_matrix(4);
  for (int mu = 0; mu < 4; ++mu) basis[static_cast<std::size_t>(1 + mu)] = rep.gamma(mu);
  int idx = 5;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) basis[static_cast<std::size_t>(idx++)] = rep.gamma(mu) * rep.gamma(nu);
  for (int mu = 0; mu < 4; ++mu) basis[static_cast<std::size_t>(11 + mu)] = rep.gamma(mu) * g5;
  basis[15] = g5;
  return basis;
}

BasisCoefficients basis_decompose(const ComplexMatrix& m, const GammaRepresentation& rep) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("basis_decompose: 4x4 matrix required");
  const std::array<ComplexMatrix, 16> basis = clifford_basis(rep);

  // The basis must be trace-orthogonal with tr(B+ B) = 4; anything else
  // signals a defective representation.
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const cplx gram = (basis[static_cast<std::size_t>(i)].adjoint() * basis[static_cast<std::size_t>(j)]).trace();
      const cplx expected = (i == j) ? cplx(4.0, 0.0) : cplx(0.0, 0.0);
      if (std::abs(gram - expected) > 1e-8)
        throw std::runtime_error("basis_decompose: basis not trace-orthogonal; defective representation");
    }

  BasisCoefficients coeffs;
  for (int i = 0; i < 16; ++i)
    coeffs.set_flat(i, (basis[static_cast<std::size_t>(i)].adjoint() * m).trace() / 4.0);

  if (max_abs(recombine(coeffs, rep) - m) > kSolveTol)
    throw std::runtime_error("basis_decompose: recombination does not reproduce the input");
  return coeffs;
}

ComplexMatrix recombine(const BasisCoefficients& coeffs, const GammaRepresentation& rep) {
  const std::array<ComplexMatrix, 16> basis = clifford_basis(rep);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 16; ++i) m += coeffs.flat(i) * basis[static_cast<std::size_t>(i)];
  return m;
}

GammaRepresentation generate_gammas(int spatial_dim) {
  if (spatial_dim < 1 || spatial_dim > 8)
    throw std::invalid_argument("generate_gammas: spatial dimension must be in 1..8");

  // Seed: 1+1 dimensions, order 2.
  std::vector<ComplexMatrix> gs = {pauli(3), kI * pauli(2)};
  int spacetime = 2;

  const int target = spatial_dim + 1;
  const int target_even = (target % 2 == 0) ? target : target - 1;
  while (spacetime < target_even) {
    const ComplexMatrix id = identity_matrix(static_cast<int>(gs.front().rows()));
    for (ComplexMatrix& g : gs) g = kronecker(g, pauli(3));
    gs.push_back(kronecker(id, kI * pauli(1)));
    gs.push_back(kronecker(id, kI * pauli(2)));
    spacetime += 2;
  }
  if (target % 2 == 1) {
    // Adjoin the chirality element of the even-dimensional algebra, phased
    // to square to +I, as an extra spatial gamma.
    ComplexMatrix chir = gs.front();
    for (std::size_t a = 1; a < gs.size(); ++a) chir = chir * gs[a];
    const int n = static_cast<int>(chir.rows());
    if (max_abs(chir * chir + identity_matrix(n)) < kAlgebraTol) chir = kI * chir;
    if (max_abs(chir * chir - identity_matrix(n)) > kAlgebraTol)
      throw std::runtime_error("generate_gammas: chirality element does not square to +/-I");
    gs.push_back(-kI * chir);
  }

  GammaRepresentation rep;
  rep.metric.spatial_dim = spatial_dim;
  rep.gammas = std::move(gs);
  rep.label = "generated-n" + std::to_string(spatial_dim);
  require_valid(rep);
  return rep;
}

nlohmann::json representation_to_json(const GammaRepresentation& rep) {
  nlohmann::json j;
  j["label"] = rep.label;
  j["n"] = rep.metric.spatial_dim;
  j["N"] = rep.order();
  nlohmann::json gammas = nlohmann::json::array();
  for (const ComplexMatrix& g : rep.gammas) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < g.cols(); ++c)
        row.push_back(nlohmann::json::array({g(r, c).real(), g(r, c).imag()}));
      rows.push_back(row);
    }
    gammas.push_back(rows);
  }
  j["gammas"] = gammas;
  return j;
}

GammaRepresentation representation_from_json(const nlohmann::json& j) {
  GammaRepresentation rep;
  rep.label = j.at("label").get<std::string>();
  rep.metric.spatial_dim = j.at("n").get<int>();
  const int order = j.at("N").get<int>();
  for (const nlohmann::json& rows : j.at("gammas")) {
    ComplexMatrix g(order, order);
    if (static_cast<int>(rows.size()) != order)
      throw std::invalid_argument("representation_from_json: row count mismatch");
    for (int r = 0; r < order; ++r) {
      const nlohmann::json& row = rows.at(static_cast<std::size_t>(r));
      if (static_cast<int>(row.size()) != order)
        throw std::invalid_argument("representation_from_json: column count mismatch");
      for (int c = 0; c < order; ++c) {
        const nlohmann::json& e = row.at(static_cast<std::size_t>(c));
        g(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
    if (!all_finite(g)) throw std::invalid_argument("representation_from_json: non-finite entries");
    rep.gammas.push_back(g);
  }
  return rep;
}

}  // namespace descent
