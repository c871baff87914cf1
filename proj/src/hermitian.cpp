#include <qgd/hermitian.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace qgd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Eigenvalues of every diagonal block, each tagged with its block weight.
struct BlockSpectra {
  std::vector<std::pair<double, double>> values;  // (eigenvalue, weight)
  double max_value = 0.0;
};

BlockSpectra block_spectra(const DensityOperator& d) {
  BlockSpectra out;
  out.values.reserve(static_cast<std::size_t>(d.trace.dimension()));
  Index offset = 0;
  for (const TraceBlock& b : d.trace.blocks()) {
    const HermitianSpectrum s = eigh(d.matrix.block(offset, offset, b.dim, b.dim));
    for (Index i = 0; i < b.dim; ++i) {
      out.values.emplace_back(s.eigenvalues(i), b.weight);
      out.max_value = std::max(out.max_value, s.eigenvalues(i));
    }
    offset += b.dim;
  }
  return out;
}

double spectral_floor(Index dim, double max_value) {
  return static_cast<double>(dim) * kEps * max_value;
}

// The floor implements 0 log 0 = 0; anything meaningfully below -floor is a
// genuinely indefinite input.
double entropy_term(double lambda, double floor) {
  if (lambda <= floor) {
    if (lambda < -16.0 * floor)
      throw std::invalid_argument("entropy: negative eigenvalue beyond tolerance");
    return 0.0;
  }
  return -lambda * std::log(lambda);
}

}  // namespace

WeightedTrace::WeightedTrace(std::vector<TraceBlock> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("weighted trace: no blocks");
  for (const TraceBlock& b : blocks_) {
    if (b.dim < 1) throw std::invalid_argument("weighted trace: block dimension must be positive");
    if (!(b.weight > 0.0)) throw std::invalid_argument("weighted trace: block weight must be positive");
    dimension_ += b.dim;
  }
}

WeightedTrace WeightedTrace::uniform(Index dim, double weight) {
  return WeightedTrace({TraceBlock{dim, weight}});
}

double WeightedTrace::of_identity() const {
  double total = 0.0;
  for (const TraceBlock& b : blocks_) total += static_cast<double>(b.dim) * b.weight;
  return total;
}

double WeightedTrace::operator()(const Matrix& x) const {
  if (x.rows() != dimension_ || x.cols() != dimension_)
    throw std::invalid_argument("weighted trace: dimension mismatch");
  double total = 0.0;
  Index offset = 0;
  for (const TraceBlock& b : blocks_) {
    total += b.weight * x.block(offset, offset, b.dim, b.dim).trace().real();
    offset += b.dim;
  }
  return total;
}

bool WeightedTrace::unit_weights() const {
  for (const TraceBlock& b : blocks_)
    if (b.weight != 1.0) return false;
  return true;
}

DensityOperator DensityOperator::make(Matrix m, WeightedTrace w) {
  if (m.rows() != m.cols()) throw std::invalid_argument("density: matrix must be square");
  if (m.rows() != w.dimension()) throw std::invalid_argument("density: trace dimension mismatch");
  DensityOperator d{std::move(m), std::move(w)};

  const double total = d.trace(d.matrix);
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("density: weighted trace must equal 1");

  const double scale = d.matrix.norm();
  // Mass outside the trace's block structure would silently escape every
  // block-wise evaluation.
  if (d.trace.blocks().size() > 1) {
    Matrix off = d.matrix;
    Index offset = 0;
    for (const TraceBlock& b : d.trace.blocks()) {
      off.block(offset, offset, b.dim, b.dim).setZero();
      offset += b.dim;
    }
    if (off.norm() > 1e-10 * std::max(1.0, scale))
      throw std::invalid_argument("density: matrix is not block-diagonal for its trace");
  }

  const BlockSpectra spectra = block_spectra(d);
  const double negative_tol =
      16.0 * static_cast<double>(d.trace.dimension()) * kEps * std::max(scale, spectra.max_value);
  for (const auto& [lambda, weight] : spectra.values) {
    (void)weight;
    if (lambda < -negative_tol)
      throw std::invalid_argument("density: matrix is not positive semidefinite");
  }
  return d;
}

double hermiticity_tolerance(Index dim, double scale) {
  return 64.0 * static_cast<double>(dim) * kEps * scale;
}

HermitianSpectrum eigh(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigh: matrix must be square");
  const double scale = a.norm();
  if (hermiticity_deviation(a) > hermiticity_tolerance(a.rows(), scale))
    throw std::invalid_argument("eigh: matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(Matrix(0.5 * (a + a.adjoint())));
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix matrix_fn(const Matrix& a, const std::function<double(double)>& f) {
  const HermitianSpectrum s = eigh(a);
  RealVector fx(s.eigenvalues.size());
  for (Index i = 0; i < s.eigenvalues.size(); ++i) {
    fx(i) = f(s.eigenvalues(i));
    if (!std::isfinite(fx(i)))
      throw std::domain_error("matrix_fn: function is not finite at an eigenvalue");
  }
  return s.eigenvectors * fx.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
}

double weighted_entropy(const DensityOperator& d) {
  const BlockSpectra spectra = block_spectra(d);
  const double floor = spectral_floor(d.trace.dimension(), spectra.max_value);
  double h = 0.0;
  for (const auto& [lambda, weight] : spectra.values) h += weight * entropy_term(lambda, floor);
  return h;
}

double singular_number_entropy(const DensityOperator& d) {
  BlockSpectra spectra = block_spectra(d);
  const double floor = spectral_floor(d.trace.dimension(), spectra.max_value);

  // Decreasing rearrangement: eigenvalue lambda holds the profile at value
  // lambda on an interval whose length is its block weight.
  std::sort(spectra.values.begin(), spectra.values.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  struct Segment {
    double start;
    double length;
    double value;
  };
  std::vector<Segment> profile;
  profile.reserve(spectra.values.size());
  double t = 0.0;
  for (const auto& [lambda, weight] : spectra.values) {
    profile.push_back({t, weight, lambda});
    t += weight;
  }

  double h = 0.0;
  for (const Segment& seg : profile) h += seg.length * entropy_term(seg.value, floor);
  return h;
}

double entropy_of_spectrum(const RealVector& p) {
  const double floor = spectral_floor(p.size(), p.size() > 0 ? p.maxCoeff() : 0.0);
  double h = 0.0;
  for (Index i = 0; i < p.size(); ++i) h += entropy_term(p(i), floor);
  return h;
}

GibbsCheck gibbs_check(const Matrix& a, const DensityOperator& rho) {
  if (!rho.trace.unit_weights())
    throw std::invalid_argument("gibbs_check: density must carry the unit-weight trace");
  if (a.rows() != rho.matrix.rows())
    throw std::invalid_argument("gibbs_check: dimension mismatch");

  const HermitianSpectrum sa = eigh(a);
  const double energy = (rho.matrix * a).trace().real();
  const double neg_entropy = -weighted_entropy(rho);

  double z = 0.0;
  for (Index i = 0; i < sa.eigenvalues.size(); ++i) z += std::exp(-sa.eigenvalues(i));
  return {energy + neg_entropy, -std::log(z)};
}

GoldenThompsonCheck golden_thompson_check(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("golden_thompson_check: dimension mismatch");

  const HermitianSpectrum sum = eigh(a + b);
  double lhs = 0.0;
  for (Index i = 0; i < sum.eigenvalues.size(); ++i) lhs += std::exp(sum.eigenvalues(i));

  const Matrix ea2 = matrix_fn(a, [](double x) { return std::exp(0.5 * x); });
  const Matrix eb = matrix_fn(b, [](double x) { return std::exp(x); });
  const double rhs = (ea2 * eb * ea2).trace().real();
  return {lhs, rhs};
}

}  // namespace qgd
