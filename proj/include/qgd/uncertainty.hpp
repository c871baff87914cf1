#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <qgd/hermitian.hpp>
#include <qgd/quantum_pair.hpp>

namespace qgd {

struct UncertaintyReport {
  std::string form;       // which of the three equivalent statements ran
  double h_diag = 0.0;    // entropy of the diagonal restriction
  double h_dual = 0.0;    // entropy of the dual restriction
  double h_state = 0.0;   // entropy of the state itself
  double bound = 0.0;     // right-hand side
  double slack = 0.0;     // lhs - rhs, nonnegative up to tolerance
  double tolerance = 1e-9;

  bool pass() const { return slack >= -tolerance; }
};

// H(D, tr) + H(Dhat, tr/n) >= H(rho, tr) with D the diagonal pinch and
// Dhat = n * (dual expectation), a density for the weight tr/n.
UncertaintyReport verify_density_form(const QuantumPair& pair, const DensityOperator& rho);

// H(E(rho), tr) + H(Ehat(rho), tr) >= H(rho, tr) + log n; the density form
// restated for plain traces by the rescaling rule.
UncertaintyReport verify_trace_form(const QuantumPair& pair, const DensityOperator& rho);

// Shannon entropy of the diagonal plus H(C_rho/n, tr) against the same
// bound; the dual entropy read off the correlation matrix.
UncertaintyReport verify_correlation_form(const QuantumPair& pair, const DensityOperator& rho);

struct RankSupportReport {
  Index support_count = 0;        // points of G carrying the diagonal density
  double support_measure = 0.0;   // support_count / n
  Index rank_sum = 0;             // sum over classes of d_alpha * rank
  double product = 0.0;           // support_measure * rank_sum
  double rhs = 0.0;               // exp(H(rho / tr rho, tr))
  double margin = 0.0;            // product - rhs
  double tolerance = 1e-6;

  bool pass() const { return margin >= -tolerance; }
};

// Support-times-rank form of the uncertainty principle for a positive,
// possibly unnormalized state.
RankSupportReport verify_rank_support(const QuantumPair& pair, const Matrix& rho);

// Same inequality specialized to the vector state of f, where the dual
// blocks are fhat(alpha) fhat(alpha)^* and the right-hand side is 1.
RankSupportReport verify_function_rank_support(const QuantumPair& pair, const Vector& f);

struct MubReport {
  double overlap_deviation = 0.0;  // max | |<delta_s, chi/sqrt n>|^2 - 1/n |
  double gram_deviation = 0.0;     // orthonormality defect of the two bases
  double tolerance = 1e-12;

  bool pass() const { return overlap_deviation <= tolerance; }
};

// The point basis and the normalized character basis are mutually unbiased;
// defined for abelian groups only.
MubReport mub_check(const QuantumPair& pair);

struct StateEnsemble {
  enum class Kind { PureHaar, Wishart };
  Kind kind = Kind::Wishart;
  int count = 0;
  int rank = 0;  // Wishart only; 0 means full rank
  std::uint64_t seed = 0;
};

// Deterministic for a fixed ensemble seed; state i depends only on (seed, i).
std::vector<DensityOperator> generate_states(int dim, const StateEnsemble& ensemble);

// Deterministic equality cases: point masses, the flat vector, the
// maximally mixed state, and on abelian groups every character state.
std::vector<std::pair<std::string, DensityOperator>> census_states(const QuantumPair& pair);

}  // namespace qgd
