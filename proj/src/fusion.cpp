#include <qgd/fusion.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <qgd/hermitian.hpp>
#include <qgd/rng.hpp>

namespace qgd {

namespace {

std::vector<FusionTerm> sorted_terms(std::vector<FusionTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const FusionTerm& a, const FusionTerm& b) { return a.label < b.label; });
  return terms;
}

// Structure constants as a dense row for associativity accounting.
std::vector<long> term_vector(const FusionRing& ring, std::size_t a, std::size_t b,
                              std::size_t k) {
  std::vector<long> row(k, 0);
  for (const FusionTerm& t : ring.fuse(a, b)) row[t.label] += t.multiplicity;
  return row;
}

void check_associativity_triple(const TableFusionRing& ring, std::size_t a, std::size_t b,
                                std::size_t c) {
  const std::size_t k = ring.size();
  std::vector<long> left(k, 0), right(k, 0);
  for (const FusionTerm& e : ring.fuse(a, b)) {
    const auto ec = term_vector(ring, e.label, c, k);
    for (std::size_t d = 0; d < k; ++d) left[d] += e.multiplicity * ec[d];
  }
  for (const FusionTerm& f : ring.fuse(b, c)) {
    const auto af = term_vector(ring, a, f.label, k);
    for (std::size_t d = 0; d < k; ++d) right[d] += f.multiplicity * af[d];
  }
  if (left != right)
    throw std::invalid_argument("fusion ring: associativity violated at (" +
                                ring.label_name(a) + ", " + ring.label_name(b) + ", " +
                                ring.label_name(c) + ")");
}

}  // namespace

TableFusionRing::TableFusionRing(std::vector<std::string> names, std::vector<double> qdims,
                                 std::vector<std::size_t> classical_dims,
                                 std::vector<std::vector<std::vector<FusionTerm>>> table)
    : names_(std::move(names)),
      qdims_(std::move(qdims)),
      classical_dims_(std::move(classical_dims)),
      table_(std::move(table)) {
  const std::size_t k = names_.size();
  if (k == 0) throw std::invalid_argument("fusion ring: no labels");
  if (qdims_.size() != k || classical_dims_.size() != k || table_.size() != k)
    throw std::invalid_argument("fusion ring: table shape mismatch");
  for (const auto& row : table_)
    if (row.size() != k) throw std::invalid_argument("fusion ring: table shape mismatch");
  for (double d : qdims_)
    if (!(d > 0.0)) throw std::invalid_argument("fusion ring: qdim must be positive");
  for (std::size_t d : classical_dims_)
    if (d < 1) throw std::invalid_argument("fusion ring: classical dim must be positive");
  for (auto& row : table_)
    for (auto& cell : row) {
      for (const FusionTerm& t : cell) {
        if (t.label >= k) throw std::invalid_argument("fusion ring: label out of range");
        if (t.multiplicity < 0)
          throw std::invalid_argument("fusion ring: negative multiplicity");
      }
      cell = sorted_terms(cell);
    }

  // The unit is the unique label fusing as identity on both sides.
  std::size_t unit_candidates = 0;
  for (std::size_t u = 0; u < k; ++u) {
    bool ok = true;
    for (std::size_t a = 0; a < k && ok; ++a) {
      const auto left = table_[u][a];
      const auto right = table_[a][u];
      ok = left.size() == 1 && left[0].label == a && left[0].multiplicity == 1 &&
           right.size() == 1 && right[0].label == a && right[0].multiplicity == 1;
    }
    if (ok) {
      unit_ = u;
      ++unit_candidates;
    }
  }
  if (unit_candidates != 1)
    throw std::invalid_argument("fusion ring: unit law requires exactly one unit label");

  // qdim is multiplicative through fusion.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      double total = 0.0;
      for (const FusionTerm& t : table_[a][b])
        total += static_cast<double>(t.multiplicity) * qdims_[t.label];
      const double expected = qdims_[a] * qdims_[b];
      if (std::abs(total - expected) > 1e-10 * std::max(1.0, std::abs(expected)))
        throw std::invalid_argument("fusion ring: qdim multiplicativity violated at (" +
                                    names_[a] + ", " + names_[b] + ")");
    }

  if (k <= 16) {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t c = 0; c < k; ++c) check_associativity_triple(*this, a, b, c);
  } else {
    CounterRng rng(0xf0510u, 0);
    for (int trial = 0; trial < 4096; ++trial)
      check_associativity_triple(*this, rng.below(k), rng.below(k), rng.below(k));
  }
}

double TableFusionRing::qdim(std::size_t label) const {
  if (label >= qdims_.size()) throw std::invalid_argument("fusion ring: unknown label");
  return qdims_[label];
}

std::size_t TableFusionRing::classical_dim(std::size_t label) const {
  if (label >= classical_dims_.size())
    throw std::invalid_argument("fusion ring: unknown label");
  return classical_dims_[label];
}

std::string TableFusionRing::label_name(std::size_t label) const {
  if (label >= names_.size()) throw std::invalid_argument("fusion ring: unknown label");
  return names_[label];
}

std::vector<FusionTerm> TableFusionRing::fuse(std::size_t a, std::size_t b) const {
  if (a >= size() || b >= size()) throw std::invalid_argument("fusion ring: unknown label");
  return table_[a][b];
}

double q_integer(int m, double q) {
  if (m < 0) throw std::invalid_argument("q integer: m must be nonnegative");
  if (!(q > 0.0)) throw std::invalid_argument("q integer: q must be positive");
  double total = 0.0;
  for (int j = 0; j < m; ++j) total += std::pow(q, m - 1 - 2 * j);
  return total;
}

SuQ2Ring::SuQ2Ring(double q) : q_(q) {
  if (!(q > 0.0) || q > 1.0)
    throw std::invalid_argument("suq2 ring: deformation parameter must lie in (0, 1]");
}

std::size_t SuQ2Ring::size() const {
  throw std::logic_error("suq2 ring: label set is unbounded");
}

double SuQ2Ring::qdim(std::size_t label) const {
  return q_integer(static_cast<int>(label) + 1, q_);
}

std::string SuQ2Ring::label_name(std::size_t label) const { return std::to_string(label); }

std::vector<FusionTerm> SuQ2Ring::fuse(std::size_t a, std::size_t b) const {
  const std::size_t lo = a > b ? a - b : b - a;
  const std::size_t hi = a + b;
  std::vector<FusionTerm> terms;
  for (std::size_t c = lo; c <= hi; c += 2) terms.push_back({c, 1});
  return terms;
}

SuQ2Ring su_q2_ring(double q) { return SuQ2Ring(q); }

TableFusionRing group_dual_ring(const GroupTable& g, const IrrepBundle& bundle) {
  const int n = g.order;
  const std::size_t k = bundle.classes.size();
  std::vector<std::string> names;
  std::vector<double> qdims;
  std::vector<std::size_t> cdims;
  for (std::size_t c = 0; c < k; ++c) {
    names.push_back("c" + std::to_string(c) + "d" +
                    std::to_string(bundle.classes[c].dim));
    qdims.push_back(static_cast<double>(bundle.classes[c].dim));
    cdims.push_back(static_cast<std::size_t>(bundle.classes[c].dim));
  }

  // N_ab^c = (1/n) sum_s chi_a chi_b conj(chi_c); must round cleanly.
  std::vector<std::vector<std::vector<FusionTerm>>> table(
      k, std::vector<std::vector<FusionTerm>>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c) {
        Complex acc(0.0, 0.0);
        for (int s = 0; s < n; ++s)
          acc += bundle.classes[a].character(s) * bundle.classes[b].character(s) *
                 std::conj(bundle.classes[c].character(s));
        acc /= static_cast<double>(n);
        const long rounded = std::lround(acc.real());
        if (std::abs(acc - Complex(static_cast<double>(rounded), 0.0)) > 1e-6)
          throw std::invalid_argument(
              "group dual ring: structure constant does not round to an integer; "
              "numerically degraded representatives");
        if (rounded < 0)
          throw std::invalid_argument("group dual ring: negative structure constant");
        if (rounded > 0) table[a][b].push_back({c, rounded});
      }

  return TableFusionRing(std::move(names), std::move(qdims), std::move(cdims),
                         std::move(table));
}

TableFusionRing load_fusion_ring(std::istream& in) {
  std::string keyword;
  std::size_t k = 0;
  if (!(in >> keyword >> k) || keyword != "labels")
    throw std::invalid_argument("fusion ring file: expected header 'labels k'");
  if (k == 0) throw std::invalid_argument("fusion ring file: no labels");

  std::vector<std::string> names(k);
  std::vector<double> qdims(k);
  std::vector<std::size_t> cdims(k);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(in >> names[i] >> qdims[i] >> cdims[i]))
      throw std::invalid_argument("fusion ring file: malformed label line");
    if (index.count(names[i]))
      throw std::invalid_argument("fusion ring file: duplicate label " + names[i]);
    index[names[i]] = i;
  }

  auto resolve = [&](const std::string& name) {
    const auto it = index.find(name);
    if (it == index.end())
      throw std::invalid_argument("fusion ring file: unknown label " + name);
    return it->second;
  };

  std::vector<std::vector<std::vector<FusionTerm>>> table(
      k, std::vector<std::vector<FusionTerm>>(k));
  std::vector<std::vector<std::vector<bool>>> seen(
      k, std::vector<std::vector<bool>>(k, std::vector<bool>(k, false)));
  std::string a, b, c;
  long mult = 0;
  while (in >> a) {
    if (!(in >> b >> c >> mult))
      throw std::invalid_argument("fusion ring file: malformed structure line");
    const std::size_t ia = resolve(a), ib = resolve(b), ic = resolve(c);
    if (seen[ia][ib][ic])
      throw std::invalid_argument("fusion ring file: duplicate structure line " + a + " " +
                                  b + " " + c);
    seen[ia][ib][ic] = true;
    if (mult < 0) throw std::invalid_argument("fusion ring file: negative multiplicity");
    if (mult > 0) table[ia][ib].push_back({ic, mult});
  }

  return TableFusionRing(std::move(names), std::move(qdims), std::move(cdims),
                         std::move(table));
}

TableFusionRing load_fusion_ring(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("fusion ring file: cannot open " + path);
  return load_fusion_ring(in);
}

QTrace QTrace::delta(std::size_t label) {
  QTrace t;
  t.weights[label] = 1.0;
  return t;
}

QTrace QTrace::uniform(const FusionRing& ring) {
  if (!ring.finite())
    throw std::invalid_argument("q trace: uniform state needs a finite label set");
  QTrace t;
  const std::size_t k = ring.size();
  for (std::size_t i = 0; i < k; ++i) t.weights[i] = 1.0 / static_cast<double>(k);
  return t;
}

double QTrace::mass() const {
  double total = 0.0;
  for (const auto& [label, w] : weights) total += w;
  return total;
}

void QTrace::validate(const FusionRing& ring) const {
  for (const auto& [label, w] : weights) {
    if (ring.finite() && label >= ring.size())
      throw std::invalid_argument("q trace: label out of range");
    if (w < -1e-15) throw std::invalid_argument("q trace: negative weight");
  }
  if (std::abs(mass() - 1.0) > 1e-12)
    throw std::invalid_argument("q trace: weights must sum to 1");
}

double hiai_izumi_entropy(const QTrace& mu, const FusionRing& ring) {
  mu.validate(ring);
  double h = 0.0;
  for (const auto& [label, w] : mu.weights) {
    if (w <= 0.0) continue;
    const double d = ring.qdim(label);
    h -= w * std::log(w / (d * d));
  }
  return h;
}

double kac_entropy_oracle(const QTrace& mu, const IrrepBundle& bundle) {
  const std::size_t k = bundle.classes.size();
  for (const auto& [label, w] : mu.weights) {
    (void)w;
    if (label >= k)
      throw std::invalid_argument("kac oracle: q trace uses labels outside the dual ring");
  }
  std::vector<TraceBlock> blocks;
  Index total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const Index d = bundle.classes[c].dim;
    blocks.push_back({d, static_cast<double>(d)});
    total += d;
  }
  Matrix density = Matrix::Zero(total, total);
  Index offset = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const Index d = bundle.classes[c].dim;
    const auto it = mu.weights.find(c);
    const double w = (it == mu.weights.end()) ? 0.0 : it->second;
    density.block(offset, offset, d, d) =
        (w / static_cast<double>(d * d)) * Matrix::Identity(d, d);
    offset += d;
  }
  return weighted_entropy(DensityOperator::make(std::move(density), WeightedTrace(blocks)));
}

QTrace convolve(const QTrace& mu, const QTrace& nu, const FusionRing& ring) {
  QTrace out;
  for (const auto& [a, wa] : mu.weights) {
    if (wa == 0.0) continue;
    for (const auto& [b, wb] : nu.weights) {
      if (wb == 0.0) continue;
      const std::vector<FusionTerm> terms = ring.fuse(a, b);
      if (terms.empty())
        throw std::invalid_argument("convolve: fusion data missing for a needed pair");
      const double denom = ring.qdim(a) * ring.qdim(b);
      for (const FusionTerm& t : terms)
        out.weights[t.label] +=
            wa * wb * static_cast<double>(t.multiplicity) * ring.qdim(t.label) / denom;
    }
  }
  return out;
}

std::vector<double> walk_entropy_series(const QTrace& mu, const FusionRing& ring,
                                        int steps) {
  if (steps < 1) throw std::invalid_argument("walk: steps must be positive");
  mu.validate(ring);
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(steps));
  QTrace current = mu;
  for (int k = 1; k <= steps; ++k) {
    if (k > 1) {
      current = convolve(current, mu, ring);
      current.validate(ring);
    }
    series.push_back(hiai_izumi_entropy(current, ring));
  }
  return series;
}

}  // namespace qgd
