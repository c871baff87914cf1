#pragma once

#include <cstdint>
#include <vector>

#include <qgd/group.hpp>
#include <qgd/matrix.hpp>

namespace qgd {

struct IrrepClass {
  int dim = 0;
  std::vector<Matrix> matrices;  // one unitary per group element
  Vector character;              // character(g) = tr matrices[g]
};

// One unitary representative per equivalence class, classes sorted by
// (dimension, character fingerprint); sum of squared dimensions equals the
// group order exactly.
struct IrrepBundle {
  std::vector<IrrepClass> classes;
  int group_order = 0;

  int total_dual_dimension() const;  // sum of d^2
  bool all_one_dimensional() const;
};

// Splits the left regular representation by eigenspaces of random elements
// of its commutant; deterministic for a fixed seed.
IrrepBundle irrep_decomposition(const GroupTable& g, std::uint64_t seed);

// fhat(alpha) = (1/n) sum_s f(s) alpha(s)^*, one d_alpha x d_alpha matrix
// per class, satisfying the Plancherel identity
// (1/n) sum |f|^2 = sum_alpha d_alpha tr(fhat^* fhat).
std::vector<Matrix> fourier_coefficients(const Vector& f, const IrrepBundle& bundle);

// Max entrywise deviation of alpha(st) from alpha(s) alpha(t) over all
// classes and pairs; the comultiplication identity in coordinates.
double corep_identity_deviation(const GroupTable& g, const IrrepBundle& bundle);

}  // namespace qgd
