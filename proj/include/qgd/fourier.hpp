#pragma once

#include <vector>

#include <qgd/group.hpp>
#include <qgd/irreps.hpp>
#include <qgd/matrix.hpp>

namespace qgd {

struct FourierSlot {
  int class_index = 0;
  int row = 0;
  int col = 0;
};

// Unitary F with row (alpha,i,j) equal to sqrt(d_alpha/n) conj(alpha(.)_ij);
// dual coordinates are laid out class by class, (i,j) row-major within a
// class, classes in bundle order.
struct FourierBasis {
  Matrix matrix;                  // n x n
  std::vector<FourierSlot> layout;
  std::vector<int> class_offset;  // offset of each class block, plus total

  int block_offset(int class_index) const { return class_offset[static_cast<std::size_t>(class_index)]; }
};

FourierBasis fourier_unitary(const GroupTable& g, const IrrepBundle& bundle);

// W delta_(a,b) = delta_(a,ab) on l2(G x G), stored as a basis permutation.
struct MultiplicativeUnitary {
  int n = 0;
  std::vector<int> image;  // image[a*n + b] = a*n + ab

  int apply_index(int idx) const { return image[static_cast<std::size_t>(idx)]; }
  Matrix to_matrix() const;
};

MultiplicativeUnitary multiplicative_unitary_permutation(const GroupTable& g);

// Dense n^2 x n^2 form of the same operator.
Matrix multiplicative_unitary(const GroupTable& g);

// W12 W13 W23 = W23 W12 on l2(G^3), checked in exact index arithmetic.
bool pentagon_check(const GroupTable& g);

// W^*(1 (x) M_f)W = M_{f o mult} for every point mass f, exact in indices.
bool comultiplication_check(const GroupTable& g);

}  // namespace qgd
