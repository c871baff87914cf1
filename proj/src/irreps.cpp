#include <qgd/irreps.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <qgd/hermitian.hpp>
#include <qgd/rng.hpp>

namespace qgd {

namespace {

// Conjugation average over the left regular representation. The result
// commutes with every lambda(g), i.e. lives in the right-translation
// algebra, so its eigenspaces are invariant subspaces of lambda.
Matrix invariant_average(const GroupTable& g, const Matrix& r) {
  const int n = g.order;
  Matrix t = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int s = 0; s < n; ++s) {
      const int as = g.mul(a, s);
      for (int u = 0; u < n; ++u) t(as, g.mul(a, u)) += r(s, u);
    }
  t /= static_cast<double>(n);
  return 0.5 * (t + t.adjoint());
}

// Restriction of lambda to the column span of an isometry p.
std::vector<Matrix> restrict_lambda(const GroupTable& g, const Matrix& p) {
  const int n = g.order;
  const Index d = p.cols();
  std::vector<Matrix> mats(static_cast<std::size_t>(n));
  Matrix lp(n, d);
  for (int a = 0; a < n; ++a) {
    for (int s = 0; s < n; ++s) lp.row(g.mul(a, s)) = p.row(s);
    mats[static_cast<std::size_t>(a)] = p.adjoint() * lp;
  }
  return mats;
}

Vector character_of(const std::vector<Matrix>& mats) {
  Vector chi(static_cast<Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) chi(static_cast<Index>(i)) = mats[i].trace();
  return chi;
}

double character_norm2(const Vector& chi) {
  return chi.squaredNorm() / static_cast<double>(chi.size());
}

bool characters_equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= 1e-8;
}

// Orders classes by dimension, then by the character sequence compared
// entrywise on a coarse grid; distinct characters of groups this size are
// separated far beyond the grid. Descending within a dimension puts the
// trivial class (character identically 1, the largest possible values)
// at index 0, so label 0 of a dual fusion ring is always the unit.
bool class_before(const IrrepClass& a, const IrrepClass& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  for (Index i = 0; i < a.character.size(); ++i) {
    const double dre = a.character(i).real() - b.character(i).real();
    if (std::abs(dre) > 1e-6) return dre > 0.0;
    const double dim_ = a.character(i).imag() - b.character(i).imag();
    if (std::abs(dim_) > 1e-6) return dim_ > 0.0;
  }
  return false;
}

std::vector<Matrix> eigenvalue_clusters(const Matrix& p, const HermitianSpectrum& s) {
  const Index m = s.eigenvalues.size();
  const double scale = std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
  const double gap = 1e-7 * scale;
  std::vector<Matrix> clusters;
  Index start = 0;
  for (Index i = 1; i <= m; ++i) {
    if (i == m || s.eigenvalues(i) - s.eigenvalues(i - 1) > gap) {
      Matrix basis = p * s.eigenvectors.middleCols(start, i - start);
      // Re-orthonormalize: products of isometries drift slightly.
      Eigen::HouseholderQR<Matrix> qr(basis);
      clusters.push_back(Matrix(qr.householderQ()).leftCols(basis.cols()));
      start = i;
    }
  }
  return clusters;
}

void validate_bundle(const GroupTable& g, const IrrepBundle& bundle) {
  int total = 0;
  for (const IrrepClass& c : bundle.classes) total += c.dim * c.dim;
  if (total != g.order)
    throw std::runtime_error("irrep decomposition: squared dimensions do not sum to the order");
  for (const IrrepClass& c : bundle.classes) {
    for (int a = 0; a < g.order; ++a) {
      const Matrix& u = c.matrices[static_cast<std::size_t>(a)];
      if ((u * u.adjoint() - Matrix::Identity(c.dim, c.dim)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::runtime_error("irrep decomposition: representative is not unitary");
    }
    for (int a = 0; a < g.order; ++a)
      for (int b = 0; b < g.order; ++b) {
        const Matrix prod = c.matrices[static_cast<std::size_t>(a)] *
                            c.matrices[static_cast<std::size_t>(b)];
        if ((prod - c.matrices[static_cast<std::size_t>(g.mul(a, b))]).cwiseAbs().maxCoeff() >
            1e-9)
          throw std::runtime_error("irrep decomposition: representative is not a homomorphism");
      }
  }
}

}  // namespace

int IrrepBundle::total_dual_dimension() const {
  int total = 0;
  for (const IrrepClass& c : classes) total += c.dim * c.dim;
  return total;
}

bool IrrepBundle::all_one_dimensional() const {
  for (const IrrepClass& c : classes)
    if (c.dim != 1) return false;
  return true;
}

IrrepBundle irrep_decomposition(const GroupTable& g, std::uint64_t seed) {
  const int n = g.order;
  CounterRng rng(seed, 0x1abe1);
  int draws_left = 64;

  std::vector<Matrix> pending;  // isometries onto invariant subspaces
  pending.push_back(Matrix::Identity(n, n));
  std::vector<std::pair<Matrix, std::vector<Matrix>>> irreducible;  // (isometry, restriction)

  while (!pending.empty()) {
    const Matrix p = pending.back();
    pending.pop_back();

    std::vector<Matrix> restricted = restrict_lambda(g, p);
    if (std::abs(character_norm2(character_of(restricted)) - 1.0) < 1e-6) {
      irreducible.emplace_back(p, std::move(restricted));
      continue;
    }

    if (--draws_left < 0)
      throw std::runtime_error("irrep decomposition: retry budget exhausted, reseed");

    // A fresh commutant element, compressed to this invariant subspace,
    // still commutes with the restricted representation.
    const Matrix t = invariant_average(g, random_hermitian(n, rng));
    const Matrix s = p.adjoint() * t * p;
    std::vector<Matrix> clusters = eigenvalue_clusters(p, eigh(s));
    if (clusters.size() <= 1) {
      pending.push_back(p);  // degenerate draw, try again
      continue;
    }
    for (Matrix& c : clusters) pending.push_back(std::move(c));
  }

  IrrepBundle bundle;
  bundle.group_order = n;
  for (auto& [p, mats] : irreducible) {
    Vector chi = character_of(mats);
    bool known = false;
    for (const IrrepClass& c : bundle.classes)
      if (characters_equal(c.character, chi)) {
        known = true;
        break;
      }
    if (known) continue;
    IrrepClass c;
    c.dim = static_cast<int>(p.cols());
    c.matrices = std::move(mats);
    c.character = std::move(chi);
    bundle.classes.push_back(std::move(c));
  }

  std::sort(bundle.classes.begin(), bundle.classes.end(), class_before);
  validate_bundle(g, bundle);
  return bundle;
}

std::vector<Matrix> fourier_coefficients(const Vector& f, const IrrepBundle& bundle) {
  const int n = bundle.group_order;
  if (f.size() != n) throw std::invalid_argument("fourier coefficients: dimension mismatch");
  std::vector<Matrix> out;
  out.reserve(bundle.classes.size());
  for (const IrrepClass& c : bundle.classes) {
    Matrix m = Matrix::Zero(c.dim, c.dim);
    for (int s = 0; s < n; ++s)
      m += f(s) * c.matrices[static_cast<std::size_t>(s)].adjoint();
    out.push_back(m / static_cast<double>(n));
  }
  return out;
}

double corep_identity_deviation(const GroupTable& g, const IrrepBundle& bundle) {
  double dev = 0.0;
  for (const IrrepClass& c : bundle.classes)
    for (int s = 0; s < g.order; ++s)
      for (int t = 0; t < g.order; ++t) {
        const Matrix lhs = c.matrices[static_cast<std::size_t>(g.mul(s, t))];
        const Matrix rhs =
            c.matrices[static_cast<std::size_t>(s)] * c.matrices[static_cast<std::size_t>(t)];
        dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
      }
  return dev;
}

}  // namespace qgd
