#include <qgd/uncertainty.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include <qgd/rng.hpp>

namespace qgd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double state_entropy(const DensityOperator& rho) { return weighted_entropy(rho); }

// Ranks of the dual blocks against a cutoff set by the largest singular
// value across all blocks, so numerically vanishing blocks count as zero.
Index rank_sum_of_blocks(const std::vector<Matrix>& blocks, const IrrepBundle& bundle) {
  std::vector<RealVector> singulars;
  double sigma_max = 0.0;
  for (const Matrix& b : blocks) {
    Eigen::JacobiSVD<Matrix> svd(b);
    singulars.push_back(svd.singularValues());
    if (svd.singularValues().size() > 0)
      sigma_max = std::max(sigma_max, svd.singularValues()(0));
  }
  Index total = 0;
  for (std::size_t c = 0; c < blocks.size(); ++c) {
    const Index d = static_cast<Index>(bundle.classes[c].dim);
    const double cutoff = 16.0 * static_cast<double>(d) * kEps * sigma_max;
    Index rank = 0;
    for (Index i = 0; i < singulars[c].size(); ++i)
      if (singulars[c](i) > cutoff) ++rank;
    total += d * rank;
  }
  return total;
}

Index support_count_of(const RealVector& d) {
  const double cutoff = 16.0 * static_cast<double>(d.size()) * kEps * d.maxCoeff();
  Index count = 0;
  for (Index i = 0; i < d.size(); ++i)
    if (d(i) > cutoff) ++count;
  return count;
}

RankSupportReport assemble_rank_support(Index n, Index support_count, Index rank_sum,
                                        double rhs) {
  RankSupportReport report;
  report.support_count = support_count;
  report.rank_sum = rank_sum;
  report.support_measure = static_cast<double>(support_count) / static_cast<double>(n);
  // Evaluated as one quotient so the census equality cases land on 1 exactly.
  report.product =
      static_cast<double>(support_count * rank_sum) / static_cast<double>(n);
  report.rhs = rhs;
  report.margin = report.product - rhs;
  return report;
}

}  // namespace

UncertaintyReport verify_density_form(const QuantumPair& pair, const DensityOperator& rho) {
  const int n = pair.dim;
  UncertaintyReport report;
  report.form = "density";
  report.h_diag = weighted_entropy(expect_diagonal(pair, rho));
  const DensityOperator dual = expect_dual(pair, rho);
  const DensityOperator dual_density = DensityOperator::make(
      static_cast<double>(n) * dual.matrix, WeightedTrace::uniform(n, 1.0 / n));
  report.h_dual = weighted_entropy(dual_density);
  report.h_state = state_entropy(rho);
  report.bound = report.h_state;
  report.slack = report.h_diag + report.h_dual - report.bound;
  return report;
}

UncertaintyReport verify_trace_form(const QuantumPair& pair, const DensityOperator& rho) {
  const int n = pair.dim;
  UncertaintyReport report;
  report.form = "trace";
  report.h_diag = weighted_entropy(expect_diagonal(pair, rho));
  report.h_dual = weighted_entropy(expect_dual(pair, rho));
  report.h_state = state_entropy(rho);
  report.bound = report.h_state + std::log(static_cast<double>(n));
  report.slack = report.h_diag + report.h_dual - report.bound;
  return report;
}

UncertaintyReport verify_correlation_form(const QuantumPair& pair, const DensityOperator& rho) {
  const int n = pair.dim;
  UncertaintyReport report;
  report.form = "correlation";
  report.h_diag = entropy_of_spectrum(rho.matrix.diagonal().real());
  const Matrix c = correlation_matrix(pair, rho);
  const DensityOperator scaled = DensityOperator::make(
      c / static_cast<double>(n), WeightedTrace::uniform(n, 1.0));
  report.h_dual = weighted_entropy(scaled);
  report.h_state = state_entropy(rho);
  report.bound = report.h_state + std::log(static_cast<double>(n));
  report.slack = report.h_diag + report.h_dual - report.bound;
  return report;
}

RankSupportReport verify_rank_support(const QuantumPair& pair, const Matrix& rho) {
  const int n = pair.dim;
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("rank support: dimension mismatch");
  const double total = rho.trace().real();
  if (!(total > 0.0)) throw std::invalid_argument("rank support: state must be nonzero");
  const Matrix normalized = rho / total;
  const DensityOperator state =
      DensityOperator::make(normalized, WeightedTrace::uniform(n, 1.0));

  // Diagonal density against the normalized Haar state.
  const RealVector diag = static_cast<double>(n) * normalized.diagonal().real();
  const Index support = support_count_of(diag);

  // Dual density blocks: partial trace of F rho F^* over the multiplicity
  // slot, one block per class.
  const Matrix rho_hat =
      pair.fourier.matrix * normalized * pair.fourier.matrix.adjoint();
  std::vector<Matrix> blocks;
  for (std::size_t c = 0; c < pair.bundle.classes.size(); ++c) {
    const int d = pair.bundle.classes[c].dim;
    const int off = pair.fourier.class_offset[c];
    Matrix block = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < d; ++j) acc += rho_hat(off + i * d + j, off + k * d + j);
        block(i, k) = acc / static_cast<double>(d);
      }
    blocks.push_back(std::move(block));
  }

  RankSupportReport report = assemble_rank_support(
      n, support, rank_sum_of_blocks(blocks, pair.bundle), std::exp(state_entropy(state)));
  return report;
}

RankSupportReport verify_function_rank_support(const QuantumPair& pair, const Vector& f) {
  const int n = pair.dim;
  if (f.size() != n) throw std::invalid_argument("rank support: dimension mismatch");
  const double norm2 = f.squaredNorm();
  if (!(norm2 > 0.0)) throw std::invalid_argument("rank support: function must be nonzero");

  const RealVector density = static_cast<double>(n) * f.cwiseAbs2() / norm2;
  const Index support = support_count_of(density);
  const std::vector<Matrix> coeffs = fourier_coefficients(f, pair.bundle);
  // rank(fhat fhat^*) = rank(fhat), so the outer products need not be formed.
  const Index rank_sum = rank_sum_of_blocks(coeffs, pair.bundle);

  return assemble_rank_support(n, support, rank_sum, 1.0);
}

MubReport mub_check(const QuantumPair& pair) {
  const int n = pair.dim;
  if (!pair.bundle.all_one_dimensional())
    throw std::invalid_argument(
        "mub check: group is not abelian; complementarity_check covers the general case");

  MubReport report;
  const double inv_n = 1.0 / static_cast<double>(n);
  Matrix characters(n, n);  // row k = character of class k
  for (int k = 0; k < n; ++k)
    for (int s = 0; s < n; ++s)
      characters(k, s) = pair.bundle.classes[static_cast<std::size_t>(k)].character(s);

  for (int k = 0; k < n; ++k) {
    for (int s = 0; s < n; ++s) {
      const double overlap2 = std::norm(characters(k, s)) * inv_n;
      report.overlap_deviation =
          std::max(report.overlap_deviation, std::abs(overlap2 - inv_n));
    }
    for (int l = 0; l < n; ++l) {
      const Complex gram = characters.row(k).dot(characters.row(l)) * inv_n;
      const double expected = (k == l) ? 1.0 : 0.0;
      report.gram_deviation = std::max(report.gram_deviation, std::abs(gram - expected));
    }
  }
  return report;
}

std::vector<DensityOperator> generate_states(int dim, const StateEnsemble& ensemble) {
  if (dim < 1) throw std::invalid_argument("ensemble: dimension must be positive");
  if (ensemble.count < 0) throw std::invalid_argument("ensemble: count must be nonnegative");
  int rank = ensemble.rank;
  if (ensemble.kind == StateEnsemble::Kind::Wishart) {
    if (rank == 0) rank = dim;
    if (rank < 1 || rank > dim)
      throw std::invalid_argument("ensemble: Wishart rank must lie in [1, dim]");
  }

  std::vector<DensityOperator> states;
  states.reserve(static_cast<std::size_t>(ensemble.count));
  const WeightedTrace trace = WeightedTrace::uniform(dim, 1.0);
  for (int i = 0; i < ensemble.count; ++i) {
    CounterRng rng = CounterRng::derive(ensemble.seed, static_cast<std::uint64_t>(i) + 1);
    Matrix rho;
    if (ensemble.kind == StateEnsemble::Kind::PureHaar) {
      const Vector v = random_unit_vector(dim, rng);
      rho = v * v.adjoint();
    } else {
      const Matrix g = random_ginibre(dim, rank, rng);
      Matrix w = g * g.adjoint();
      rho = w / w.trace().real();
    }
    states.push_back(DensityOperator::make(0.5 * (rho + rho.adjoint()), trace));
  }
  return states;
}

std::vector<std::pair<std::string, DensityOperator>> census_states(const QuantumPair& pair) {
  const int n = pair.dim;
  const WeightedTrace trace = WeightedTrace::uniform(n, 1.0);
  std::vector<std::pair<std::string, DensityOperator>> out;

  for (int s = 0; s < n; ++s) {
    Matrix rho = Matrix::Zero(n, n);
    rho(s, s) = Complex(1.0, 0.0);
    out.emplace_back("point:" + std::to_string(s), DensityOperator::make(rho, trace));
  }

  {
    const Vector flat = Vector::Constant(n, Complex(1.0, 0.0) / std::sqrt(double(n)));
    out.emplace_back("flat", DensityOperator::make(flat * flat.adjoint(), trace));
  }

  out.emplace_back("mixed", DensityOperator::make(
                                Matrix::Identity(n, n) / static_cast<double>(n), trace));

  if (pair.bundle.all_one_dimensional()) {
    for (std::size_t k = 0; k < pair.bundle.classes.size(); ++k) {
      Vector chi(n);
      for (int s = 0; s < n; ++s) chi(s) = pair.bundle.classes[k].character(s);
      const Matrix rho = chi * chi.adjoint() / static_cast<double>(n);
      out.emplace_back("character:" + std::to_string(k),
                       DensityOperator::make(0.5 * (rho + rho.adjoint()), trace));
    }
  }
  return out;
}

}  // namespace qgd
