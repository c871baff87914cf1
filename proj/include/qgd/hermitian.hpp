#pragma once

//
// Spectral core for finite-dimensional entropy arithmetic.
//
// A weighted trace tr_w assigns a block structure {(n_b, w_b)} to the
// diagonal of a matrix algebra and evaluates tr_w(x) = sum_b w_b tr(x_bb).
// A density D is positive with tr_w(D) = 1, and its entropy is
//
//     H(D, tr_w) = -tr_w(D log D) = -sum_b w_b sum_i lambda_i(b) log lambda_i(b)
//
// with the 0 log 0 = 0 convention at the spectral floor. The same number is
// reachable through the singular-number profile mu_t(D): each eigenvalue
// occupies an interval of length equal to its block weight, and
// H = -integral mu_t log mu_t dt collapses to a finite sum. Keeping both
// routes separate gives the tests an internal cross-check.
//

#include <functional>
#include <vector>

#include <qgd/matrix.hpp>

namespace qgd {

struct HermitianSpectrum {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns, unitary
};

struct TraceBlock {
  Index dim = 0;
  double weight = 1.0;
};

// Block-weighted trace on block-diagonal Hermitian matrices.
class WeightedTrace {
 public:
  explicit WeightedTrace(std::vector<TraceBlock> blocks);

  static WeightedTrace uniform(Index dim, double weight = 1.0);

  const std::vector<TraceBlock>& blocks() const { return blocks_; }
  Index dimension() const { return dimension_; }
  double of_identity() const;

  // Real part of sum_b w_b tr(x_bb); meaningful for Hermitian inputs.
  double operator()(const Matrix& x) const;

  bool unit_weights() const;

 private:
  std::vector<TraceBlock> blocks_;
  Index dimension_ = 0;
};

// Positive matrix with tr_w = 1, block-diagonal with respect to its trace.
struct DensityOperator {
  Matrix matrix;
  WeightedTrace trace;

  static DensityOperator make(Matrix m, WeightedTrace w);
};

// Tolerance scales follow dim * eps * scale with a fixed cushion.
double hermiticity_tolerance(Index dim, double scale);

HermitianSpectrum eigh(const Matrix& a);

Matrix matrix_fn(const Matrix& a, const std::function<double(double)>& f);

double weighted_entropy(const DensityOperator& d);

double singular_number_entropy(const DensityOperator& d);

// Entropy of a probability-like vector with the same spectral-floor
// convention as weighted_entropy; entries are clamped at the floor and a
// genuinely negative entry is rejected.
double entropy_of_spectrum(const RealVector& p);

struct GibbsCheck {
  double lhs = 0.0;  // tr(rho A) + tr(rho log rho)
  double rhs = 0.0;  // -log tr(exp(-A))
  double slack() const { return lhs - rhs; }
};

// Variational bound: lhs >= rhs for every density rho, with equality exactly
// at rho = exp(-A)/tr(exp(-A)).
GibbsCheck gibbs_check(const Matrix& a, const DensityOperator& rho);

struct GoldenThompsonCheck {
  double lhs = 0.0;  // tr(exp(A + B))
  double rhs = 0.0;  // tr(exp(A/2) exp(B) exp(A/2))
  double slack() const { return rhs - lhs; }
};

GoldenThompsonCheck golden_thompson_check(const Matrix& a, const Matrix& b);

}  // namespace qgd
