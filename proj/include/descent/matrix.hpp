#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace descent {

using cplx = std::complex<double>;

// Dense row-major complex matrix; everything in the algebra layer is of
// order <= 16, so no sparse machinery anywhere.
using ComplexMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;

// Tolerance ladder: pure matrix algebra vs. anything involving a solve.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kSolveTol = 1e-10;

inline ComplexMatrix identity_matrix(int n) {
  return ComplexMatrix::Identity(n, n);
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m);

inline double unitarity_residual(const ComplexMatrix& u) {
  return max_abs(u * u.adjoint() - identity_matrix(static_cast<int>(u.rows())));
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

// exp(m) by scaling-and-squaring with a Taylor series; accurate to roundoff
// for the small generator matrices used here.
ComplexMatrix matrix_exponential(const ComplexMatrix& m);

// Deterministic uniform/normal deviates built on mt19937_64 alone, so
// streams do not depend on the standard library's distribution internals.
class Deviates {
 public:
  explicit Deviates(std::uint64_t seed) : gen_(seed) {}
  double uniform();  // [0, 1)
  double normal();   // standard normal, Box-Muller

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed unitary via QR of a complex Gaussian matrix.
ComplexMatrix random_unitary(int n, Deviates& dev);

}  // namespace descent
