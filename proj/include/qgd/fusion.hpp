#pragma once

//
// Fusion rings and quantum-trace entropies.
//
// A q-trace mu is a finitely supported probability weight on the classes of
// a fusion ring. Its entropy is
//
//     H(mu) = -sum_alpha mu_alpha log(mu_alpha / qdim(alpha)^2),
//
// and convolution distributes mass through the fusion rules,
//
//     (delta_a * delta_b)_c = N_ab^c qdim(c) / (qdim(a) qdim(b)).
//
// For the dual ring of a finite group (qdim = classical dim) the entropy is
// also the weighted spectral entropy of the block density with value
// mu_alpha / d_alpha^2 on a d_alpha-block of weight d_alpha; that detour
// through the spectral core is the oracle the identity is tested against.
//

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <qgd/group.hpp>
#include <qgd/irreps.hpp>

namespace qgd {

struct FusionTerm {
  std::size_t label = 0;
  long multiplicity = 0;
};

class FusionRing {
 public:
  virtual ~FusionRing() = default;

  virtual bool finite() const = 0;
  virtual std::size_t size() const = 0;  // finite rings only
  virtual std::size_t unit() const = 0;
  virtual double qdim(std::size_t label) const = 0;
  virtual std::size_t classical_dim(std::size_t label) const = 0;
  virtual std::string label_name(std::size_t label) const = 0;
  virtual std::vector<FusionTerm> fuse(std::size_t a, std::size_t b) const = 0;
};

// Table-backed ring; validates unit behavior, qdim multiplicativity, and
// associativity (exhaustive up to 16 labels, sampled above) on construction.
class TableFusionRing final : public FusionRing {
 public:
  TableFusionRing(std::vector<std::string> names, std::vector<double> qdims,
                  std::vector<std::size_t> classical_dims,
                  std::vector<std::vector<std::vector<FusionTerm>>> table);

  bool finite() const override { return true; }
  std::size_t size() const override { return names_.size(); }
  std::size_t unit() const override { return unit_; }
  double qdim(std::size_t label) const override;
  std::size_t classical_dim(std::size_t label) const override;
  std::string label_name(std::size_t label) const override;
  std::vector<FusionTerm> fuse(std::size_t a, std::size_t b) const override;

 private:
  std::vector<std::string> names_;
  std::vector<double> qdims_;
  std::vector<std::size_t> classical_dims_;
  std::vector<std::vector<std::vector<FusionTerm>>> table_;
  std::size_t unit_ = 0;
};

// Labels 0,1,2,... with qdim(m) = [m+1]_q and the ladder fusion rule
// m (x) k = |m-k|, |m-k|+2, ..., m+k; labels extend on demand.
class SuQ2Ring final : public FusionRing {
 public:
  explicit SuQ2Ring(double q);  // q in (0, 1]

  bool finite() const override { return false; }
  std::size_t size() const override;
  std::size_t unit() const override { return 0; }
  double qdim(std::size_t label) const override;
  std::size_t classical_dim(std::size_t label) const override { return label + 1; }
  std::string label_name(std::size_t label) const override;
  std::vector<FusionTerm> fuse(std::size_t a, std::size_t b) const override;

  double q() const { return q_; }

 private:
  double q_;
};

// Balanced q-integer [m]_q = q^(m-1) + q^(m-3) + ... + q^-(m-1); exactly m
// at q = 1.
double q_integer(int m, double q);

SuQ2Ring su_q2_ring(double q);

// Dual ring of a finite group: labels are the irreducible classes, the
// structure constants come from character integration and must round to
// integers within 1e-6.
TableFusionRing group_dual_ring(const GroupTable& g, const IrrepBundle& bundle);

// Text format: "labels k", then k lines "name qdim classical_dim", then
// one line "a b c N" per nonzero structure constant.
TableFusionRing load_fusion_ring(std::istream& in);
TableFusionRing load_fusion_ring(const std::string& path);

// Finitely supported probability weight on ring labels.
struct QTrace {
  std::map<std::size_t, double> weights;

  static QTrace delta(std::size_t label);
  static QTrace uniform(const FusionRing& ring);

  void validate(const FusionRing& ring) const;  // sum 1 within 1e-12, nonneg
  double mass() const;
};

double hiai_izumi_entropy(const QTrace& mu, const FusionRing& ring);

// Same number through the spectral core: block density mu_alpha/d_alpha^2
// on blocks of weight d_alpha. Group-dual rings only.
double kac_entropy_oracle(const QTrace& mu, const IrrepBundle& bundle);

QTrace convolve(const QTrace& mu, const QTrace& nu, const FusionRing& ring);

// Entropies of mu, mu*mu, ..., mu^(*steps); every iterate is validated.
std::vector<double> walk_entropy_series(const QTrace& mu, const FusionRing& ring, int steps);

}  // namespace qgd
