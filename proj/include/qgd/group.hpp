#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <qgd/matrix.hpp>

namespace qgd {

// Finite group as a validated multiplication table over indices 0..n-1.
struct GroupTable {
  int order = 0;
  std::vector<int> table;  // row-major, table[a*order + b] = a*b
  int identity = 0;
  std::vector<int> inverse;
  std::string name;

  int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * order + b]; }
  int inv(int a) const { return inverse[static_cast<std::size_t>(a)]; }
  bool is_abelian() const;
};

// Throws std::invalid_argument naming the violated axiom. Associativity is
// checked exhaustively up to order 64 and on a deterministic sample above.
void validate_group(GroupTable& g);

GroupTable build_cyclic(int n);
GroupTable build_dihedral(int n);  // order 2n
GroupTable build_quaternion8();
GroupTable build_symmetric(int n);  // n <= 5
GroupTable build_direct_product(const GroupTable& a, const GroupTable& b);

// Text format: first line n, then n rows of n whitespace-separated 0-based
// indices; the identity is inferred.
GroupTable load_group_table(std::istream& in, const std::string& name);
GroupTable load_group_table(const std::string& path);

// Family spec: Zn, Dn, Sn (n <= 5), Q8, K4, products joined with 'x'
// (e.g. Z2xZ6), or file:PATH.
GroupTable build_group(const std::string& spec);

// Left regular representation, lambda(g) delta_s = delta_{gs}.
Matrix regular_representation(const GroupTable& g, int element);

}  // namespace qgd
