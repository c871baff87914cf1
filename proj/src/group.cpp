#include <qgd/group.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <qgd/rng.hpp>

namespace qgd {

namespace {

int find_identity(const GroupTable& g) {
  for (int e = 0; e < g.order; ++e) {
    bool ok = true;
    for (int a = 0; a < g.order && ok; ++a)
      ok = (g.mul(e, a) == a) && (g.mul(a, e) == a);
    if (ok) return e;
  }
  throw std::invalid_argument("group table: identity axiom violated (no two-sided identity)");
}

void check_associativity(const GroupTable& g) {
  const int n = g.order;
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
            throw std::invalid_argument("group table: associativity axiom violated");
    return;
  }
  CounterRng rng(0xa55u, 0);
  for (int trial = 0; trial < 262144; ++trial) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
      throw std::invalid_argument("group table: associativity axiom violated");
  }
}

std::vector<std::vector<int>> permutations_lex(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

}  // namespace

bool GroupTable::is_abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = a + 1; b < order; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

void validate_group(GroupTable& g) {
  const int n = g.order;
  if (n < 1) throw std::invalid_argument("group table: order must be positive");
  if (g.table.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("group table: closure axiom violated (table size mismatch)");
  for (int v : g.table)
    if (v < 0 || v >= n)
      throw std::invalid_argument("group table: closure axiom violated (entry out of range)");

  g.identity = find_identity(g);

  g.inverse.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity) {
        g.inverse[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (g.inverse[static_cast<std::size_t>(a)] < 0)
      throw std::invalid_argument("group table: inverse axiom violated");
  }

  check_associativity(g);
}

GroupTable build_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic: order must be positive");
  GroupTable g;
  g.order = n;
  g.name = "Z" + std::to_string(n);
  g.table.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  validate_group(g);
  return g;
}

GroupTable build_dihedral(int n) {
  if (n < 1) throw std::invalid_argument("dihedral: rotation order must be positive");
  // Element eps*n + k encodes s^eps r^k with s r^k s = r^-k.
  const int order = 2 * n;
  GroupTable g;
  g.order = order;
  g.name = "D" + std::to_string(n);
  g.table.resize(static_cast<std::size_t>(order) * order);
  for (int e1 = 0; e1 < 2; ++e1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int e2 = 0; e2 < 2; ++e2)
        for (int k2 = 0; k2 < n; ++k2) {
          const int a = e1 * n + k1;
          const int b = e2 * n + k2;
          const int eps = e1 ^ e2;
          const int k = ((e2 ? (k2 - k1) : (k1 + k2)) % n + n) % n;
          g.table[static_cast<std::size_t>(a) * order + b] = eps * n + k;
        }
  validate_group(g);
  return g;
}

GroupTable build_quaternion8() {
  // Units 1, -1, i, -i, j, -j, k, -k in that order.
  auto sign = [](int x) { return x & 1; };
  auto axis = [](int x) { return x >> 1; };  // 0:1, 1:i, 2:j, 3:k
  auto encode = [](int ax, int sg) { return (ax << 1) | sg; };

  // axis multiplication with sign: i*j = k, j*k = i, k*i = j.
  auto mul_axes = [](int a, int b, int& sg) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a == b) {
      sg ^= 1;  // i^2 = j^2 = k^2 = -1
      return 0;
    }
    const int c = 6 - a - b;  // remaining axis of {1,2,3}
    // cyclic (1,2,3) is positive, anti-cyclic flips the sign
    const bool cyclic = (b - a + 3) % 3 == 1;
    if (!cyclic) sg ^= 1;
    return c;
  };

  GroupTable g;
  g.order = 8;
  g.name = "Q8";
  g.table.resize(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int sg = sign(a) ^ sign(b);
      const int ax = mul_axes(axis(a), axis(b), sg);
      g.table[static_cast<std::size_t>(a) * 8 + b] = encode(ax, sg);
    }
  validate_group(g);
  return g;
}

GroupTable build_symmetric(int n) {
  if (n < 1 || n > 5)
    throw std::invalid_argument("symmetric: supported degrees are 1 through 5");
  const auto perms = permutations_lex(n);
  const int order = static_cast<int>(perms.size());

  auto index_of = [&](const std::vector<int>& p) {
    const auto it = std::lower_bound(perms.begin(), perms.end(), p);
    return static_cast<int>(it - perms.begin());
  };

  GroupTable g;
  g.order = order;
  g.name = "S" + std::to_string(n);
  g.table.resize(static_cast<std::size_t>(order) * order);
  std::vector<int> composed(static_cast<std::size_t>(n));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      for (int x = 0; x < n; ++x)
        composed[static_cast<std::size_t>(x)] =
            perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(
                perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)])];
      g.table[static_cast<std::size_t>(a) * order + b] = index_of(composed);
    }
  validate_group(g);
  return g;
}

GroupTable build_direct_product(const GroupTable& a, const GroupTable& b) {
  GroupTable g;
  g.order = a.order * b.order;
  g.name = a.name + "x" + b.name;
  g.table.resize(static_cast<std::size_t>(g.order) * g.order);
  auto enc = [&](int x, int y) { return x * b.order + y; };
  for (int x1 = 0; x1 < a.order; ++x1)
    for (int y1 = 0; y1 < b.order; ++y1)
      for (int x2 = 0; x2 < a.order; ++x2)
        for (int y2 = 0; y2 < b.order; ++y2)
          g.table[static_cast<std::size_t>(enc(x1, y1)) * g.order + enc(x2, y2)] =
              enc(a.mul(x1, x2), b.mul(y1, y2));
  validate_group(g);
  return g;
}

GroupTable load_group_table(std::istream& in, const std::string& name) {
  int n = 0;
  if (!(in >> n)) throw std::invalid_argument("group table: missing order line");
  if (n < 1) throw std::invalid_argument("group table: order must be positive");
  GroupTable g;
  g.order = n;
  g.name = name;
  g.table.resize(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < g.table.size(); ++i) {
    if (!(in >> g.table[i]))
      throw std::invalid_argument("group table: expected " + std::to_string(n * n) +
                                  " entries, file ended early");
  }
  validate_group(g);
  return g;
}

GroupTable load_group_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("group table: cannot open " + path);
  std::string stem = path;
  const auto slash = stem.find_last_of('/');
  if (slash != std::string::npos) stem = stem.substr(slash + 1);
  const auto dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  return load_group_table(in, stem);
}

GroupTable build_group(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return load_group_table(spec.substr(5));

  const auto cross = spec.find('x');
  if (cross != std::string::npos && spec.rfind("file:", 0) != 0) {
    if (cross == 0 || cross + 1 >= spec.size())
      throw std::invalid_argument("group spec: malformed product '" + spec + "'");
    return build_direct_product(build_group(spec.substr(0, cross)),
                                build_group(spec.substr(cross + 1)));
  }

  if (spec == "Q8" || spec == "q8") return build_quaternion8();
  if (spec == "K4" || spec == "k4" || spec == "V4" || spec == "v4") {
    GroupTable g = build_direct_product(build_cyclic(2), build_cyclic(2));
    g.name = "K4";
    return g;
  }
  if (spec.size() >= 2) {
    const char family = spec[0];
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(spec.substr(1), &used);
      if (used + 1 != spec.size()) n = -1;
    } catch (const std::exception&) {
      n = -1;
    }
    if (n > 0) {
      switch (family) {
        case 'Z':
        case 'z':
          return build_cyclic(n);
        case 'D':
        case 'd':
          return build_dihedral(n);
        case 'S':
        case 's':
          return build_symmetric(n);
        default:
          break;
      }
    }
  }
  throw std::invalid_argument("group spec: unrecognized '" + spec + "'");
}

Matrix regular_representation(const GroupTable& g, int element) {
  if (element < 0 || element >= g.order)
    throw std::invalid_argument("regular representation: element out of range");
  Matrix m = Matrix::Zero(g.order, g.order);
  for (int s = 0; s < g.order; ++s) m(g.mul(element, s), s) = Complex(1.0, 0.0);
  return m;
}

}  // namespace qgd
