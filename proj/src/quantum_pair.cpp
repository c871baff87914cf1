#include <qgd/quantum_pair.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qgd {

namespace {

// psi(u) = tr(rho lambda(u)) = sum_s rho(s, us).
Vector translation_coefficients(const GroupTable& g, const Matrix& rho) {
  const int n = g.order;
  Vector psi(n);
  for (int u = 0; u < n; ++u) {
    Complex acc(0.0, 0.0);
    for (int s = 0; s < n; ++s) acc += rho(s, g.mul(u, s));
    psi(u) = acc;
  }
  return psi;
}

}  // namespace

QuantumPair QuantumPair::make(GroupTable g, std::uint64_t seed) {
  QuantumPair pair;
  pair.dim = g.order;
  pair.bundle = irrep_decomposition(g, seed);
  pair.fourier = fourier_unitary(g, pair.bundle);
  pair.w = multiplicative_unitary_permutation(g);
  pair.group = std::move(g);
  return pair;
}

DensityOperator expect_diagonal(const QuantumPair& pair, const DensityOperator& rho) {
  if (!rho.trace.unit_weights())
    throw std::invalid_argument("expect_diagonal: density must carry the unit-weight trace");
  Matrix d = rho.matrix.diagonal().asDiagonal();
  return DensityOperator::make(std::move(d), rho.trace);
}

Matrix project_translation_algebra(const QuantumPair& pair, const Matrix& x) {
  const int n = pair.dim;
  if (x.rows() != n || x.cols() != n)
    throw std::invalid_argument("translation projection: dimension mismatch");
  // (1/n) sum_g tr(x lambda(g)^*) lambda(g); the lambda(g)/sqrt(n) are a
  // Hilbert-Schmidt orthonormal family.
  Matrix out = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    Complex coeff(0.0, 0.0);
    for (int s = 0; s < n; ++s) coeff += x(s, pair.group.mul(pair.group.inv(a), s));
    coeff /= static_cast<double>(n);
    for (int s = 0; s < n; ++s) out(pair.group.mul(a, s), s) += coeff;
  }
  return out;
}

DensityOperator expect_dual(const QuantumPair& pair, const DensityOperator& rho) {
  if (!rho.trace.unit_weights())
    throw std::invalid_argument("expect_dual: density must carry the unit-weight trace");
  return DensityOperator::make(project_translation_algebra(pair, rho.matrix), rho.trace);
}

Matrix correlation_matrix(const QuantumPair& pair, const DensityOperator& rho) {
  const int n = pair.dim;
  if (!rho.trace.unit_weights())
    throw std::invalid_argument("correlation matrix: density must carry the unit-weight trace");
  const Vector psi = translation_coefficients(pair.group, rho.matrix);
  Matrix c(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) c(s, t) = psi(pair.group.mul(pair.group.inv(s), t));
  return c;
}

Matrix theta_channel(const QuantumPair& pair, const Vector& xi, const Matrix& t) {
  const int n = pair.dim;
  if (xi.size() != n) throw std::invalid_argument("theta channel: vector dimension mismatch");
  if (t.rows() != n || t.cols() != n)
    throw std::invalid_argument("theta channel: operator dimension mismatch");

  // X = W^*(1 (x) T)W has X[p,q] = (1 (x) T)[w(p), w(q)]; contract leg one
  // against xi on both sides.
  Matrix out(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      Complex acc(0.0, 0.0);
      for (int s = 0; s < n; ++s) {
        const int p = pair.w.apply_index(s * n + u);
        for (int r = 0; r < n; ++r) {
          const int q = pair.w.apply_index(r * n + v);
          if (p / n != q / n) continue;
          acc += std::conj(xi(s)) * t(p % n, q % n) * xi(r);
        }
      }
      out(u, v) = acc;
    }
  return out;
}

std::vector<Matrix> kraus_decomposition(const QuantumPair& pair, const Vector& xi) {
  const int n = pair.dim;
  if (xi.size() != n) throw std::invalid_argument("kraus decomposition: dimension mismatch");

  // Column t' of what_k is the k-th block of W(xi (x) delta_t').
  std::vector<Matrix> kraus(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  Vector column(static_cast<Index>(n) * n);
  for (int tp = 0; tp < n; ++tp) {
    column.setZero();
    for (int s = 0; s < n; ++s) column(pair.w.apply_index(s * n + tp)) += xi(s);
    for (int k = 0; k < n; ++k)
      for (int t = 0; t < n; ++t) kraus[static_cast<std::size_t>(k)](t, tp) = column(k * n + t);
  }
  return kraus;
}

Vector modular_conjugation(const GroupTable& g, const Vector& xi) {
  if (xi.size() != g.order)
    throw std::invalid_argument("modular conjugation: dimension mismatch");
  Vector out(g.order);
  for (int s = 0; s < g.order; ++s) out(s) = std::conj(xi(g.inv(s)));
  return out;
}

double translation_membership_deviation(const QuantumPair& pair, const Matrix& x) {
  const int n = pair.dim;
  const Matrix xhat = pair.fourier.matrix * x * pair.fourier.matrix.adjoint();
  double dev = 0.0;

  // Outside the class-diagonal blocks everything must vanish.
  const auto& offsets = pair.fourier.class_offset;
  const int classes = static_cast<int>(pair.bundle.classes.size());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int rc = pair.fourier.layout[static_cast<std::size_t>(r)].class_index;
      const int cc = pair.fourier.layout[static_cast<std::size_t>(c)].class_index;
      if (rc != cc) dev = std::max(dev, std::abs(xhat(r, c)));
    }

  // Within a class the block must look like M (x) I: zero unless the second
  // slots agree, and the M part independent of that slot.
  for (int ci = 0; ci < classes; ++ci) {
    const int d = pair.bundle.classes[static_cast<std::size_t>(ci)].dim;
    const int off = offsets[static_cast<std::size_t>(ci)];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const Complex v = xhat(off + i * d + j, off + k * d + l);
            if (j != l) {
              dev = std::max(dev, std::abs(v));
            } else if (j > 0) {
              dev = std::max(dev, std::abs(v - xhat(off + i * d, off + k * d)));
            }
          }
  }
  return dev;
}

ComplementarityReport complementarity_check(const QuantumPair& pair) {
  const int n = pair.dim;
  const double dn = static_cast<double>(n);
  const Matrix& f = pair.fourier.matrix;
  ComplementarityReport report;

  auto tau = [&](const Matrix& x) { return x.trace() / dn; };

  // (i) minimal projections pair like independent events. Diagonal side:
  // point masses. Dual side: rank-one-per-class projections pulled back
  // through F, tau = d_alpha/n each.
  {
    const int classes = static_cast<int>(pair.bundle.classes.size());
    for (int ci = 0; ci < classes; ++ci) {
      const int d = pair.bundle.classes[static_cast<std::size_t>(ci)].dim;
      const int off = pair.fourier.class_offset[static_cast<std::size_t>(ci)];
      std::vector<Vector> directions;
      for (int i = 0; i < d; ++i) {
        Vector v = Vector::Zero(d);
        v(i) = Complex(1.0, 0.0);
        directions.push_back(v);
      }
      if (d > 1) directions.push_back(Vector::Constant(d, Complex(1.0, 0.0) / std::sqrt(dn)));
      for (const Vector& v : directions) {
        const Vector unit = v / v.norm();
        Matrix qhat = Matrix::Zero(n, n);
        for (int i = 0; i < d; ++i)
          for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j)
              qhat(off + i * d + j, off + k * d + j) = unit(i) * std::conj(unit(k));
        const Matrix q = f.adjoint() * qhat * f;
        const Complex tq = tau(q);
        for (int s = 0; s < n; ++s) {
          const Complex tpq = q(s, s) / dn;  // tau(E_ss q)
          report.projection_pairing =
              std::max(report.projection_pairing, std::abs(tpq - tq / dn));
        }
      }
    }
  }

  // (ii) after removing scalar parts the algebras are Hilbert-Schmidt
  // orthogonal; (iii) tau multiplies across the two algebras. Bilinearity
  // reduces both to the basis pairs (E_ss, lambda(g)).
  const Matrix id = Matrix::Identity(n, n);
  for (int g = 0; g < n; ++g) {
    const Matrix lam = regular_representation(pair.group, g);
    const Complex tb = tau(lam);
    for (int s = 0; s < n; ++s) {
      Matrix e = Matrix::Zero(n, n);
      e(s, s) = Complex(1.0, 0.0);
      const Complex ta = tau(e);
      const Matrix a0 = e - ta * id;
      const Matrix b0 = lam - tb * id;
      report.orthogonality =
          std::max(report.orthogonality, std::abs((b0.adjoint() * a0).trace()));
      report.trace_factorization =
          std::max(report.trace_factorization, std::abs(tau(e * lam) - ta * tb));
    }
  }

  // (iv) the dual expectation collapses diagonals to their mean.
  {
    Matrix a = Matrix::Zero(n, n);
    for (int s = 0; s < n; ++s) a(s, s) = Complex(std::cos(1.0 + s), 0.0);
    const Complex mean = a.trace() / dn;
    const Matrix projected = project_translation_algebra(pair, a);
    report.scalar_expectation =
        (projected - mean * Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    for (int s = 0; s < n; ++s) {
      Matrix e = Matrix::Zero(n, n);
      e(s, s) = Complex(1.0, 0.0);
      const Matrix p = project_translation_algebra(pair, e);
      report.scalar_expectation = std::max(
          report.scalar_expectation,
          (p - (1.0 / dn) * Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
    }
  }

  return report;
}

Index span_check(const QuantumPair& pair) {
  const int n = pair.dim;
  const Index dim = static_cast<Index>(n) * n;
  Matrix products(dim, dim);
  for (int s = 0; s < n; ++s) {
    Matrix e = Matrix::Zero(n, n);
    e(s, s) = Complex(1.0, 0.0);
    for (int g = 0; g < n; ++g) {
      const Matrix p = e * regular_representation(pair.group, g);
      products.row(static_cast<Index>(s) * n + g) =
          Eigen::Map<const Vector>(p.data(), dim).transpose();
    }
  }
  Eigen::BDCSVD<Matrix> svd(products);
  const RealVector sv = svd.singularValues();
  const double cutoff = 16.0 * static_cast<double>(dim) *
                        std::numeric_limits<double>::epsilon() * sv(0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

}  // namespace qgd
