#pragma once

#include <cstdint>
#include <vector>

#include <qgd/fourier.hpp>
#include <qgd/group.hpp>
#include <qgd/hermitian.hpp>
#include <qgd/irreps.hpp>

namespace qgd {

// A finite group and its dual acting on the same l2(G): the diagonal algebra,
// the translation algebra, the Fourier unitary between them, and the
// multiplicative unitary implementing the comultiplication.
struct QuantumPair {
  GroupTable group;
  IrrepBundle bundle;
  FourierBasis fourier;
  MultiplicativeUnitary w;
  int dim = 0;

  static QuantumPair make(GroupTable g, std::uint64_t seed);
};

// Pinch to the diagonal algebra; trace preserving, unital, idempotent.
DensityOperator expect_diagonal(const QuantumPair& pair, const DensityOperator& rho);

// Hilbert-Schmidt projection onto span{lambda(g)}; the trace-preserving
// conditional expectation onto the translation algebra.
Matrix project_translation_algebra(const QuantumPair& pair, const Matrix& x);

DensityOperator expect_dual(const QuantumPair& pair, const DensityOperator& rho);

// C[s,t] = psi_rho(s^-1 t) with psi_rho(u) = tr(rho lambda(u)); positive
// semidefinite with unit diagonal, same spectrum as n * expect_dual(rho).
Matrix correlation_matrix(const QuantumPair& pair, const DensityOperator& rho);

// Theta(omega_xi)(T) = (omega_xi (x) id)(W^*(1 (x) T)W), evaluated by
// contracting the first leg against xi.
Matrix theta_channel(const QuantumPair& pair, const Vector& xi, const Matrix& t);

// what_k = (omega_{xi,delta_k} (x) id)(W), one matrix per basis index; they
// realize theta_channel as T -> sum_k what_k^* T what_k and satisfy
// sum what_k^* what_k = sum what_k what_k^* = |xi|^2 id.
std::vector<Matrix> kraus_decomposition(const QuantumPair& pair, const Vector& xi);

// (J xi)(s) = conj(xi(s^-1)); antiunitary involution exchanging the two
// Kraus index conventions.
Vector modular_conjugation(const GroupTable& g, const Vector& xi);

// Deviation of F x F^* from the block pattern M (x) I that characterizes
// membership in the translation algebra.
double translation_membership_deviation(const QuantumPair& pair, const Matrix& x);

struct ComplementarityReport {
  double projection_pairing = 0.0;   // tau(pq) vs tau(p) tau(q)
  double orthogonality = 0.0;        // trace-zero parts of the two algebras
  double trace_factorization = 0.0;  // tau(ab) vs tau(a) tau(b)
  double scalar_expectation = 0.0;   // dual expectation of diagonals vs mean
  double tolerance = 1e-10;

  bool pass() const {
    return projection_pairing <= tolerance && orthogonality <= tolerance &&
           trace_factorization <= tolerance && scalar_expectation <= tolerance;
  }
};

// The four equivalent faces of complementarity for the normalized trace.
ComplementarityReport complementarity_check(const QuantumPair& pair);

// Numerical rank of {E_ss lambda(g)}; n^2 exactly when the two algebras
// generate everything.
Index span_check(const QuantumPair& pair);

}  // namespace qgd
