//
// Acceptance gate. Every theorem-level property the toolkit claims is
// checked at desk scale over the built-in group families, one line per
// criterion, [PASS] or [FAIL] with the observed extremes. Exit status is
// the number of failed criteria.
//

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <qgd/fusion.hpp>
#include <qgd/rng.hpp>
#include <qgd/uncertainty.hpp>

using namespace qgd;

namespace {

constexpr double kSlackTol = 1e-9;          // inequality slack floor
constexpr double kCensusTol = 1e-9;         // |slack| at equality states
constexpr double kAgreementTol = 1e-9;      // pairwise verifier agreement
constexpr double kRouteTol = 1e-9;          // singular-number vs weighted entropy
constexpr double kMarginTol = 1e-6;         // rank-support margin floor
constexpr double kProductTol = 1e-12;       // census rank-support product
constexpr double kComplementarityTol = 1e-10;
constexpr double kKrausTol = 1e-9;
constexpr double kGibbsTol = 1e-9;
constexpr double kGoldenThompsonTol = 1e-10;  // relative
constexpr double kKacTol = 1e-12;
constexpr double kMassTol = 1e-12;
constexpr double kCorepTol = 1e-10;
constexpr double kMubTol = 1e-12;
constexpr int kSweepWishart = 500;
constexpr int kSweepPure = 500;
constexpr int kRankStates = 100;  // per ensemble kind
constexpr int kKrausTrials = 50;
constexpr int kGoldenThompsonTrials = 1000;
constexpr int kQTraceTrials = 100;
constexpr double kSweepBudgetSeconds = 300.0;

const std::vector<std::string> kGroupSpecs = {"Z2", "Z3", "Z4",  "Z5",  "Z6",  "Z7",
                                              "Z8", "Z9", "Z10", "Z11", "Z12", "K4",
                                              "D4", "D5", "Q8",  "S3",  "S4"};

struct Line {
  bool pass = true;
  std::string text;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<DensityOperator> ensemble_states(int dim, StateEnsemble::Kind kind, int count,
                                             std::uint64_t seed) {
  StateEnsemble e;
  e.kind = kind;
  e.count = count;
  e.seed = seed;
  return generate_states(dim, e);
}

struct SweepStats {
  double min_slack = std::numeric_limits<double>::infinity();
  double census_abs_slack = 0.0;
  double disagreement = 0.0;
  double route_gap = 0.0;
  long states = 0;
  double seconds = 0.0;
};

// One pass over all groups feeds the trace-form sweep, the triple-agreement
// comparison, and the two-route entropy identity, all on the same states.
SweepStats run_sweep(const std::vector<std::pair<std::string, QuantumPair>>& pairs) {
  SweepStats stats;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t gi = 0; gi < pairs.size(); ++gi) {
    const QuantumPair& pair = pairs[gi].second;
    const int n = pair.dim;

    std::vector<std::pair<bool, DensityOperator>> states;
    for (auto& [label, rho] : census_states(pair)) states.emplace_back(true, rho);
    for (auto& rho :
         ensemble_states(n, StateEnsemble::Kind::Wishart, kSweepWishart, 42 + gi))
      states.emplace_back(false, rho);
    for (auto& rho :
         ensemble_states(n, StateEnsemble::Kind::PureHaar, kSweepPure, 1042 + gi))
      states.emplace_back(false, rho);

    for (const auto& [is_census, rho] : states) {
      const UncertaintyReport density = verify_density_form(pair, rho);
      const UncertaintyReport trace = verify_trace_form(pair, rho);
      const UncertaintyReport corr = verify_correlation_form(pair, rho);

      stats.min_slack = std::min(stats.min_slack, trace.slack);
      if (is_census)
        stats.census_abs_slack = std::max(stats.census_abs_slack, std::abs(trace.slack));
      stats.disagreement = std::max({stats.disagreement,
                                     std::abs(density.slack - trace.slack),
                                     std::abs(trace.slack - corr.slack)});

      const DensityOperator diag = expect_diagonal(pair, rho);
      const DensityOperator dual = DensityOperator::make(
          double(n) * expect_dual(pair, rho).matrix, WeightedTrace::uniform(n, 1.0 / n));
      for (const DensityOperator* d : {&rho, &diag, &dual})
        stats.route_gap =
            std::max(stats.route_gap,
                     std::abs(singular_number_entropy(*d) - weighted_entropy(*d)));
      ++stats.states;
    }
  }
  stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

Line criterion_rank_support(const std::vector<std::pair<std::string, QuantumPair>>& pairs) {
  double min_margin = std::numeric_limits<double>::infinity();
  double census_gap = 0.0;
  for (std::size_t gi = 0; gi < pairs.size(); ++gi) {
    const QuantumPair& pair = pairs[gi].second;
    const int n = pair.dim;
    for (const auto kind : {StateEnsemble::Kind::Wishart, StateEnsemble::Kind::PureHaar})
      for (const auto& rho : ensemble_states(n, kind, kRankStates, 7000 + gi)) {
        const RankSupportReport r = verify_rank_support(pair, rho.matrix);
        min_margin = std::min(min_margin, r.margin);
      }
    for (int s = 0; s < n; ++s) {
      Vector f = Vector::Zero(n);
      f(s) = Complex(1.0, 0.0);
      census_gap = std::max(
          census_gap, std::abs(verify_function_rank_support(pair, f).product - 1.0));
    }
    census_gap = std::max(
        census_gap,
        std::abs(verify_function_rank_support(pair, Vector::Constant(n, Complex(1.0, 0.0)))
                     .product -
                 1.0));
  }
  const bool ok = min_margin >= -kMarginTol && census_gap <= kProductTol;
  return {ok, "rank-support: min margin " + fmt(min_margin) + ", census |product-1| max " +
                  fmt(census_gap)};
}

Line criterion_complementarity(const std::vector<std::pair<std::string, QuantumPair>>& pairs) {
  double worst = 0.0;
  bool spans = true;
  std::string bad_span;
  for (const auto& [name, pair] : pairs) {
    const ComplementarityReport r = complementarity_check(pair);
    worst = std::max({worst, r.projection_pairing, r.orthogonality, r.trace_factorization,
                      r.scalar_expectation});
    if (span_check(pair) != Index(pair.dim) * Index(pair.dim)) {
      spans = false;
      bad_span = name;
    }
  }
  const bool ok = worst <= kComplementarityTol && spans;
  return {ok, "complementarity: max condition deviation " + fmt(worst) +
                  (spans ? ", span rank n^2 everywhere"
                         : ", span rank deficient on " + bad_span)};
}

Line criterion_kraus(const std::vector<std::pair<std::string, QuantumPair>>& pairs) {
  double completeness = 0.0, agreement = 0.0;
  for (std::size_t gi = 0; gi < pairs.size(); ++gi) {
    const QuantumPair& pair = pairs[gi].second;
    const int n = pair.dim;
    CounterRng rng = CounterRng::derive(0x6b72, gi);
    for (int trial = 0; trial < kKrausTrials; ++trial) {
      Vector xi(n);
      for (int s = 0; s < n; ++s) xi(s) = rng.complex_gaussian();
      const auto kraus = kraus_decomposition(pair, xi);
      Matrix left = Matrix::Zero(n, n), right = Matrix::Zero(n, n);
      for (const Matrix& k : kraus) {
        left += k.adjoint() * k;
        right += k * k.adjoint();
      }
      const Matrix unit = xi.squaredNorm() * Matrix::Identity(n, n);
      completeness = std::max({completeness, (left - unit).cwiseAbs().maxCoeff(),
                               (right - unit).cwiseAbs().maxCoeff()});
      for (int probe = 0; probe < 3; ++probe) {
        const Matrix t = random_hermitian(n, rng);
        Matrix through = Matrix::Zero(n, n);
        for (const Matrix& k : kraus) through += k.adjoint() * t * k;
        agreement = std::max(
            agreement, (through - theta_channel(pair, xi, t)).cwiseAbs().maxCoeff());
      }
    }
  }
  const bool ok = completeness <= kKrausTol && agreement <= kKrausTol;
  return {ok, "kraus: completeness deviation " + fmt(completeness) + ", channel agreement " +
                  fmt(agreement)};
}

Line criterion_trace_inequalities() {
  CounterRng rng = CounterRng::derive(0x261b, 0);
  double equality_gap = 0.0, gibbs_floor = 0.0, gt_violation = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = random_hermitian(6, rng);
    const Matrix boltzmann = matrix_fn(a, [](double x) { return std::exp(-x); });
    const DensityOperator gibbs = DensityOperator::make(
        boltzmann / boltzmann.trace().real(), WeightedTrace::uniform(6));
    equality_gap = std::max(equality_gap, std::abs(gibbs_check(a, gibbs).slack()));

    const Matrix g = random_ginibre(6, 6, rng);
    Matrix generic = g * g.adjoint();
    generic /= generic.trace().real();
    const double slack =
        gibbs_check(a, DensityOperator::make(generic, WeightedTrace::uniform(6))).slack();
    gibbs_floor = std::min(gibbs_floor, slack);
  }
  for (int trial = 0; trial < kGoldenThompsonTrials; ++trial) {
    const GoldenThompsonCheck c =
        golden_thompson_check(random_hermitian(6, rng), random_hermitian(6, rng));
    const double scale = std::max({std::abs(c.lhs), std::abs(c.rhs), 1.0});
    gt_violation = std::max(gt_violation, -c.slack() / scale);
  }
  const bool ok = equality_gap <= kGibbsTol && gibbs_floor >= -kGibbsTol &&
                  gt_violation <= kGoldenThompsonTol;
  return {ok, "trace inequalities: Gibbs equality gap " + fmt(equality_gap) +
                  ", Gibbs slack floor " + fmt(gibbs_floor) +
                  ", Golden-Thompson relative violation " + fmt(gt_violation)};
}

Line criterion_qtrace(const std::vector<std::pair<std::string, QuantumPair>>& pairs) {
  double kac_gap = 0.0, mass_gap = 0.0;
  for (std::size_t gi = 0; gi < pairs.size(); ++gi) {
    const QuantumPair& pair = pairs[gi].second;
    const TableFusionRing ring = group_dual_ring(pair.group, pair.bundle);
    CounterRng rng = CounterRng::derive(0x9a7c, gi);
    for (int trial = 0; trial < kQTraceTrials; ++trial) {
      QTrace mu;
      double total = 0.0;
      for (std::size_t k = 0; k < ring.size(); ++k) {
        mu.weights[k] = rng.uniform() + 1e-4;
        total += mu.weights[k];
      }
      for (auto& [label, w] : mu.weights) w /= total;
      kac_gap = std::max(
          kac_gap, std::abs(hiai_izumi_entropy(mu, ring) - kac_entropy_oracle(mu, pair.bundle)));
    }
    QTrace walk = QTrace::uniform(ring);
    for (int k = 0; k < 10; ++k) {
      walk = convolve(walk, QTrace::uniform(ring), ring);
      mass_gap = std::max(mass_gap, std::abs(walk.mass() - 1.0));
    }
  }

  // The undeformed ladder must reproduce the classical data exactly.
  const SuQ2Ring su2 = su_q2_ring(1.0);
  bool classical = true;
  for (std::size_t m = 0; m <= 8 && classical; ++m)
    classical = su2.qdim(m) == double(m + 1) && su2.classical_dim(m) == m + 1;
  for (std::size_t a = 0; a <= 8 && classical; ++a)
    for (std::size_t b = 0; b <= 8 && classical; ++b) {
      const auto terms = su2.fuse(a, b);
      const std::size_t lo = a > b ? a - b : b - a;
      classical = terms.size() == (std::min(a, b) + 1);
      for (std::size_t i = 0; classical && i < terms.size(); ++i)
        classical = terms[i].label == lo + 2 * i && terms[i].multiplicity == 1;
    }
  QTrace spin = QTrace::delta(1);
  for (int k = 0; k < 10; ++k) {
    spin = convolve(spin, QTrace::delta(1), su2);
    mass_gap = std::max(mass_gap, std::abs(spin.mass() - 1.0));
  }

  const bool ok = kac_gap <= kKacTol && mass_gap <= kMassTol && classical;
  return {ok, "q-traces: entropy oracle gap " + fmt(kac_gap) + ", walk mass gap " +
                  fmt(mass_gap) + (classical ? ", classical ladder exact" : ", classical ladder WRONG")};
}

Line criterion_structure(const std::vector<std::pair<std::string, QuantumPair>>& pairs) {
  bool exact = true;
  double corep = 0.0, mub = 0.0;
  std::string offender;
  for (const auto& [name, pair] : pairs) {
    const bool here = pair.bundle.total_dual_dimension() == pair.dim &&
                      pentagon_check(pair.group) &&
                      comultiplication_check(pair.group);
    if (!here && exact) offender = name;
    exact = exact && here;
    corep = std::max(corep, corep_identity_deviation(pair.group, pair.bundle));
    if (name.size() >= 2 && name[0] == 'Z')
      mub = std::max(mub, mub_check(pair).overlap_deviation);
  }
  const bool ok = exact && corep <= kCorepTol && mub <= kMubTol;
  return {ok, std::string("structure: index identities ") +
                  (exact ? "exact" : ("broken on " + offender)) + ", corep deviation " +
                  fmt(corep) + ", cyclic mub deviation " + fmt(mub)};
}

}  // namespace

int main() {
  std::vector<Line> lines(9);
  try {
    std::vector<std::pair<std::string, QuantumPair>> pairs;
    pairs.reserve(kGroupSpecs.size());
    for (const auto& spec : kGroupSpecs)
      pairs.emplace_back(spec, QuantumPair::make(build_group(spec), 2026));

    const SweepStats sweep = run_sweep(pairs);
    lines[0] = {sweep.min_slack >= -kSlackTol && sweep.census_abs_slack <= kCensusTol &&
                    sweep.seconds < kSweepBudgetSeconds,
                "trace-form sweep: min slack " + fmt(sweep.min_slack) +
                    ", census |slack| max " + fmt(sweep.census_abs_slack) + ", " +
                    std::to_string(sweep.states) + " states over " +
                    std::to_string(kGroupSpecs.size()) + " groups in " + fmt(sweep.seconds) +
                    " s"};
    lines[1] = {sweep.disagreement <= kAgreementTol,
                "triple agreement: max pairwise slack gap " + fmt(sweep.disagreement)};
    lines[2] = criterion_rank_support(pairs);
    lines[3] = criterion_complementarity(pairs);
    lines[4] = criterion_kraus(pairs);
    lines[5] = criterion_trace_inequalities();
    lines[6] = {sweep.route_gap <= kRouteTol,
                "entropy routes: max singular-number vs weighted gap " + fmt(sweep.route_gap)};
    lines[7] = criterion_qtrace(pairs);
    lines[8] = criterion_structure(pairs);
  } catch (const std::exception& e) {
    for (auto& line : lines)
      if (line.text.empty()) line = {false, std::string("aborted: ") + e.what()};
  }

  int failed = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::printf("[%s] %zu. %s\n", lines[i].pass ? "PASS" : "FAIL", i + 1,
                lines[i].text.c_str());
    if (!lines[i].pass) ++failed;
  }
  return failed;
}
