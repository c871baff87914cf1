#include <qgd/fourier.hpp>

#include <cmath>
#include <stdexcept>

namespace qgd {

FourierBasis fourier_unitary(const GroupTable& g, const IrrepBundle& bundle) {
  const int n = g.order;
  if (bundle.group_order != n)
    throw std::invalid_argument("fourier unitary: bundle does not match group");
  if (bundle.total_dual_dimension() != n)
    throw std::invalid_argument("fourier unitary: bundle is incomplete");

  FourierBasis basis;
  basis.matrix.resize(n, n);
  basis.layout.resize(static_cast<std::size_t>(n));
  int offset = 0;
  for (int c = 0; c < static_cast<int>(bundle.classes.size()); ++c) {
    const IrrepClass& cls = bundle.classes[static_cast<std::size_t>(c)];
    basis.class_offset.push_back(offset);
    const int d = cls.dim;
    const double scale = std::sqrt(static_cast<double>(d) / static_cast<double>(n));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const int row = offset + i * d + j;
        basis.layout[static_cast<std::size_t>(row)] = FourierSlot{c, i, j};
        for (int s = 0; s < n; ++s)
          basis.matrix(row, s) =
              scale * std::conj(cls.matrices[static_cast<std::size_t>(s)](i, j));
      }
    offset += d * d;
  }
  basis.class_offset.push_back(offset);
  return basis;
}

Matrix MultiplicativeUnitary::to_matrix() const {
  const Index dim = static_cast<Index>(n) * n;
  Matrix w = Matrix::Zero(dim, dim);
  for (Index src = 0; src < dim; ++src)
    w(image[static_cast<std::size_t>(src)], src) = Complex(1.0, 0.0);
  return w;
}

MultiplicativeUnitary multiplicative_unitary_permutation(const GroupTable& g) {
  const int n = g.order;
  MultiplicativeUnitary w;
  w.n = n;
  w.image.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      w.image[static_cast<std::size_t>(a) * n + b] = a * n + g.mul(a, b);
  return w;
}

Matrix multiplicative_unitary(const GroupTable& g) {
  return multiplicative_unitary_permutation(g).to_matrix();
}

bool pentagon_check(const GroupTable& g) {
  const int n = g.order;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        // left side: W23, then W13, then W12
        int x = a, y = b, z = c;
        z = g.mul(y, z);
        z = g.mul(x, z);
        y = g.mul(x, y);
        // right side: W12, then W23
        int u = a, v = b, w = c;
        v = g.mul(u, v);
        w = g.mul(v, w);
        if (x != u || y != v || z != w) return false;
      }
  return true;
}

bool comultiplication_check(const GroupTable& g) {
  const int n = g.order;
  const MultiplicativeUnitary w = multiplicative_unitary_permutation(g);
  // W^*(1 (x) M_f)W is diagonal with entry (s,t) read off at the image index;
  // it must equal f(st) for f ranging over point masses.
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int img = w.apply_index(s * n + t);
      if (img / n != s) return false;
      if (img % n != g.mul(s, t)) return false;
    }
  return true;
}

}  // namespace qgd
