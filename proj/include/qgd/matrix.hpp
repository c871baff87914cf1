#pragma once

#include <complex>

#include <Eigen/Dense>

#include <qgd/rng.hpp>

namespace qgd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline double hermiticity_deviation(const Matrix& a) {
  return (a - a.adjoint()).norm();
}

inline Matrix random_ginibre(Index rows, Index cols, CounterRng& rng) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_gaussian();
  return g;
}

inline Matrix random_hermitian(Index n, CounterRng& rng) {
  const Matrix g = random_ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

// Haar-ish unitary: QR of a Ginibre matrix with the R diagonal phases fixed.
inline Matrix random_unitary(Index n, CounterRng& rng) {
  const Matrix g = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double m = std::abs(d);
    q.col(j) *= (m > 0.0) ? d / m : Complex(1.0, 0.0);
  }
  return q;
}

inline Vector random_unit_vector(Index n, CounterRng& rng) {
  Vector v(n);
  double norm2 = 0.0;
  do {
    for (Index i = 0; i < n; ++i) v(i) = rng.complex_gaussian();
    norm2 = v.squaredNorm();
  } while (norm2 <= 0.0);
  return v / std::sqrt(norm2);
}

}  // namespace qgd
