#include <qgd/cli.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include <qgd/fusion.hpp>
#include <qgd/group.hpp>
#include <qgd/quantum_pair.hpp>
#include <qgd/rng.hpp>
#include <qgd/uncertainty.hpp>

namespace qgd::cli {

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kSchemaVersion = 1;

int thread_budget() {
  const char* env = std::getenv("QGD_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1) return 1;
  return static_cast<int>(std::min(value, 64L));
}

// Work-stealing loop over [0, count); results must be written by index so
// the merged report is independent of the thread count.
template <typename F>
void parallel_for(std::size_t count, F&& fn) {
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(thread_budget()), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

long parse_long(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not an integer: " + text);
  }
  if (pos != text.size()) throw std::invalid_argument(what + ": not an integer: " + text);
  return value;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not a number: " + text);
  }
  if (pos != text.size()) throw std::invalid_argument(what + ": not a number: " + text);
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    if (at == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, at - start));
    start = at + 1;
  }
}

struct EnsembleSpec {
  enum class Kind { Census, Wishart, Pure, Sparse };
  Kind kind = Kind::Census;
  int count = 0;
  int rank = 0;  // Wishart only; 0 means full rank
};

EnsembleSpec parse_ensemble(const std::string& spec) {
  const std::vector<std::string> parts = split(spec, ':');
  EnsembleSpec out;
  if (parts[0] == "census") {
    if (parts.size() != 1) throw std::invalid_argument("ensemble: census takes no arguments");
    return out;
  }
  if (parts[0] == "wishart")
    out.kind = EnsembleSpec::Kind::Wishart;
  else if (parts[0] == "pure")
    out.kind = EnsembleSpec::Kind::Pure;
  else if (parts[0] == "sparse")
    out.kind = EnsembleSpec::Kind::Sparse;
  else
    throw std::invalid_argument("ensemble: unknown kind " + parts[0] +
                                " (census | wishart:N[:r] | pure:N | sparse:N)");
  if (parts.size() < 2 || parts.size() > 3 ||
      (parts.size() == 3 && out.kind != EnsembleSpec::Kind::Wishart))
    throw std::invalid_argument("ensemble: malformed spec " + spec);
  const long count = parse_long(parts[1], "ensemble count");
  if (count < 1) throw std::invalid_argument("ensemble: count must be positive");
  out.count = static_cast<int>(count);
  if (parts.size() == 3) {
    const long rank = parse_long(parts[2], "ensemble rank");
    if (rank < 1) throw std::invalid_argument("ensemble: rank must be positive");
    out.rank = static_cast<int>(rank);
  }
  return out;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string csv_cell(const nlohmann::json& value) {
  if (value.is_null()) return "";
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number_float()) return format_double(value.get<double>());
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  if (value.is_number_unsigned()) return std::to_string(value.get<std::uint64_t>());
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

nlohmann::json config_echo(const RunConfig& cfg, double effective_tolerance) {
  nlohmann::json j;
  j["command"] = cfg.command;
  j["group"] = cfg.group;
  j["ring"] = cfg.ring;
  j["ensemble"] = cfg.ensemble;
  j["state"] = cfg.state;
  j["steps"] = cfg.steps;
  j["seed"] = cfg.seed;
  j["mub"] = cfg.mub;
  j["tolerance"] = effective_tolerance;
  return j;
}

nlohmann::json base_report(const RunConfig& cfg, double effective_tolerance) {
  nlohmann::json j;
  j["tool"] = "qgd";
  j["version"] = kVersion;
  j["schema_version"] = kSchemaVersion;
  j["command"] = cfg.command;
  j["config"] = config_echo(cfg, effective_tolerance);
  return j;
}

nlohmann::json group_info(const QuantumPair& pair) {
  nlohmann::json dims = nlohmann::json::array();
  for (const IrrepClass& c : pair.bundle.classes) dims.push_back(c.dim);
  nlohmann::json j;
  j["name"] = pair.group.name;
  j["order"] = pair.group.order;
  j["abelian"] = pair.group.is_abelian();
  j["class_dims"] = std::move(dims);
  return j;
}

double effective(double override_value, double fallback) {
  if (override_value < 0.0) throw std::invalid_argument("tolerance must be positive");
  return override_value > 0.0 ? override_value : fallback;
}

Vector sparse_function(int n, CounterRng& rng) {
  const int nonzeros = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  std::vector<int> positions(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) positions[static_cast<std::size_t>(i)] = i;
  for (int j = 0; j < nonzeros; ++j) {
    const int k = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - j)));
    std::swap(positions[static_cast<std::size_t>(j)], positions[static_cast<std::size_t>(k)]);
  }
  Vector f = Vector::Zero(n);
  for (int j = 0; j < nonzeros; ++j) f(positions[static_cast<std::size_t>(j)]) = rng.complex_gaussian();
  if (f.norm() == 0.0) f(positions[0]) = Complex(1.0, 0.0);
  return f;
}

}  // namespace

std::string ReportDocument::to_json() const { return body.dump(2) + "\n"; }

std::string ReportDocument::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < csv_columns.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_columns[i];
  }
  out += '\n';
  for (const nlohmann::json& record : body.at("records")) {
    for (std::size_t i = 0; i < csv_columns.size(); ++i) {
      if (i > 0) out += ',';
      const auto it = record.find(csv_columns[i]);
      if (it != record.end()) out += csv_cell(*it);
    }
    out += '\n';
  }
  return out;
}

ReportDocument cmd_uncertainty(const RunConfig& cfg) {
  const double tol = effective(cfg.tolerance, 1e-9);
  const double agreement_tol = 1e-9;
  const QuantumPair pair = QuantumPair::make(build_group(cfg.group), cfg.seed);
  const int n = pair.dim;

  const EnsembleSpec ens = parse_ensemble(cfg.ensemble);
  if (ens.kind == EnsembleSpec::Kind::Sparse)
    throw std::invalid_argument("uncertainty: sparse ensembles are for ranksupport");

  std::vector<std::pair<std::string, DensityOperator>> states = census_states(pair);
  const std::size_t census_count = states.size();
  if (ens.kind != EnsembleSpec::Kind::Census) {
    StateEnsemble se;
    se.kind = ens.kind == EnsembleSpec::Kind::Pure ? StateEnsemble::Kind::PureHaar
                                                   : StateEnsemble::Kind::Wishart;
    se.count = ens.count;
    se.rank = ens.rank;
    se.seed = cfg.seed;
    std::vector<DensityOperator> random_states = generate_states(n, se);
    for (int i = 0; i < ens.count; ++i)
      states.emplace_back("trial:" + std::to_string(i),
                          std::move(random_states[static_cast<std::size_t>(i)]));
  }

  struct Eval {
    UncertaintyReport trace, density, correlation;
    double agreement = 0.0;
  };
  std::vector<Eval> evals(states.size());
  parallel_for(states.size(), [&](std::size_t i) {
    Eval e;
    e.trace = verify_trace_form(pair, states[i].second);
    e.density = verify_density_form(pair, states[i].second);
    e.correlation = verify_correlation_form(pair, states[i].second);
    e.agreement = std::max({std::abs(e.trace.slack - e.density.slack),
                            std::abs(e.trace.slack - e.correlation.slack),
                            std::abs(e.density.slack - e.correlation.slack)});
    evals[i] = e;
  });

  nlohmann::json records = nlohmann::json::array();
  double min_slack = std::numeric_limits<double>::infinity();
  double max_agreement = 0.0;
  double census_max_abs_slack = 0.0;
  std::int64_t equality_candidates = 0;
  bool all_pass = true;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const bool is_census = i < census_count;
    const Eval& e = evals[i];
    min_slack = std::min(min_slack, e.trace.slack);
    max_agreement = std::max(max_agreement, e.agreement);
    if (is_census) census_max_abs_slack = std::max(census_max_abs_slack, std::abs(e.trace.slack));
    if (!is_census && e.trace.slack <= 0.01) ++equality_candidates;
    const bool row_pass = e.trace.slack >= -tol && e.agreement <= agreement_tol &&
                          (!is_census || std::abs(e.trace.slack) <= tol);
    all_pass = all_pass && row_pass;
    nlohmann::json r;
    r["index"] = static_cast<std::int64_t>(i);
    r["kind"] = is_census ? "census" : "ensemble";
    r["label"] = states[i].first;
    r["h_diag"] = e.trace.h_diag;
    r["h_dual"] = e.trace.h_dual;
    r["h_state"] = e.trace.h_state;
    r["bound"] = e.trace.bound;
    r["slack"] = e.trace.slack;
    r["slack_density_form"] = e.density.slack;
    r["slack_correlation_form"] = e.correlation.slack;
    r["agreement"] = e.agreement;
    r["pass"] = row_pass;
    records.push_back(std::move(r));
  }

  ReportDocument doc;
  doc.body = base_report(cfg, tol);
  doc.body["group_info"] = group_info(pair);
  doc.body["records"] = std::move(records);
  doc.body["summary"] = {
      {"count", static_cast<std::int64_t>(states.size())},
      {"census_count", static_cast<std::int64_t>(census_count)},
      {"ensemble_count", static_cast<std::int64_t>(states.size() - census_count)},
      {"min_slack", min_slack},
      {"max_agreement", max_agreement},
      {"census_max_abs_slack", census_max_abs_slack},
      {"equality_candidates", equality_candidates},
  };
  doc.pass = all_pass;
  doc.body["verdict"] = all_pass ? "pass" : "fail";
  doc.csv_columns = {"index",  "kind",  "label", "h_diag",
                     "h_dual", "h_state", "bound", "slack",
                     "slack_density_form", "slack_correlation_form", "agreement", "pass"};
  return doc;
}

ReportDocument cmd_ranksupport(const RunConfig& cfg) {
  const double tol = effective(cfg.tolerance, 1e-6);
  const double census_tol = 1e-12;
  const QuantumPair pair = QuantumPair::make(build_group(cfg.group), cfg.seed);
  const int n = pair.dim;

  const EnsembleSpec ens = parse_ensemble(cfg.ensemble);

  std::vector<std::string> labels, kinds;
  std::vector<std::function<RankSupportReport()>> tasks;

  for (int s = 0; s < n; ++s) {
    labels.push_back("delta:" + std::to_string(s));
    kinds.push_back("census-function");
    tasks.push_back([&pair, s, n]() {
      Vector f = Vector::Zero(n);
      f(s) = Complex(1.0, 0.0);
      return verify_function_rank_support(pair, f);
    });
  }
  labels.push_back("constant");
  kinds.push_back("census-function");
  tasks.push_back([&pair, n]() {
    return verify_function_rank_support(pair, Vector::Constant(n, Complex(1.0, 0.0)));
  });
  if (pair.bundle.all_one_dimensional()) {
    for (std::size_t k = 0; k < pair.bundle.classes.size(); ++k) {
      labels.push_back("character:" + std::to_string(k));
      kinds.push_back("census-function");
      tasks.push_back([&pair, k, n]() {
        Vector chi(n);
        for (int s = 0; s < n; ++s) chi(s) = pair.bundle.classes[k].character(s);
        return verify_function_rank_support(pair, chi);
      });
    }
  }

  const std::vector<std::pair<std::string, DensityOperator>> census = census_states(pair);
  for (const auto& [label, rho] : census) {
    labels.push_back(label);
    kinds.push_back("census-state");
    tasks.push_back([&pair, &rho]() { return verify_rank_support(pair, rho.matrix); });
  }

  std::vector<Vector> sparse_inputs;
  std::vector<DensityOperator> random_states;
  if (ens.kind == EnsembleSpec::Kind::Sparse) {
    for (int i = 0; i < ens.count; ++i) {
      CounterRng rng = CounterRng::derive(cfg.seed, static_cast<std::uint64_t>(i) + 1);
      sparse_inputs.push_back(sparse_function(n, rng));
    }
    for (int i = 0; i < ens.count; ++i) {
      labels.push_back("trial:" + std::to_string(i));
      kinds.push_back("ensemble");
      const Vector& f = sparse_inputs[static_cast<std::size_t>(i)];
      tasks.push_back([&pair, &f]() { return verify_function_rank_support(pair, f); });
    }
  } else if (ens.kind != EnsembleSpec::Kind::Census) {
    StateEnsemble se;
    se.kind = ens.kind == EnsembleSpec::Kind::Pure ? StateEnsemble::Kind::PureHaar
                                                   : StateEnsemble::Kind::Wishart;
    se.count = ens.count;
    se.rank = ens.rank;
    se.seed = cfg.seed;
    random_states = generate_states(n, se);
    for (int i = 0; i < ens.count; ++i) {
      labels.push_back("trial:" + std::to_string(i));
      kinds.push_back("ensemble");
      const DensityOperator& rho = random_states[static_cast<std::size_t>(i)];
      tasks.push_back([&pair, &rho]() { return verify_rank_support(pair, rho.matrix); });
    }
  }

  std::vector<RankSupportReport> reports(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { reports[i] = tasks[i](); });

  nlohmann::json records = nlohmann::json::array();
  double min_margin = std::numeric_limits<double>::infinity();
  double census_function_max_gap = 0.0;
  std::int64_t function_count = 0, state_count = 0, ensemble_count = 0;
  bool all_pass = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const RankSupportReport& r = reports[i];
    min_margin = std::min(min_margin, r.margin);
    bool row_pass = r.margin >= -tol;
    if (kinds[i] == "census-function") {
      ++function_count;
      const double gap = std::abs(r.product - r.rhs);
      census_function_max_gap = std::max(census_function_max_gap, gap);
      row_pass = row_pass && gap <= census_tol;
    } else if (kinds[i] == "census-state") {
      ++state_count;
    } else {
      ++ensemble_count;
    }
    all_pass = all_pass && row_pass;
    nlohmann::json rec;
    rec["index"] = static_cast<std::int64_t>(i);
    rec["kind"] = kinds[i];
    rec["label"] = labels[i];
    rec["support_count"] = static_cast<std::int64_t>(r.support_count);
    rec["support_measure"] = r.support_measure;
    rec["rank_sum"] = static_cast<std::int64_t>(r.rank_sum);
    rec["product"] = r.product;
    rec["rhs"] = r.rhs;
    rec["margin"] = r.margin;
    rec["pass"] = row_pass;
    records.push_back(std::move(rec));
  }

  ReportDocument doc;
  doc.body = base_report(cfg, tol);
  doc.body["group_info"] = group_info(pair);
  doc.body["records"] = std::move(records);
  doc.body["summary"] = {
      {"count", static_cast<std::int64_t>(reports.size())},
      {"census_function_count", function_count},
      {"census_state_count", state_count},
      {"ensemble_count", ensemble_count},
      {"min_margin", min_margin},
      {"census_function_max_product_gap", census_function_max_gap},
  };
  doc.pass = all_pass;
  doc.body["verdict"] = all_pass ? "pass" : "fail";
  doc.csv_columns = {"index",   "kind",    "label",  "support_count", "support_measure",
                     "rank_sum", "product", "rhs",    "margin",        "pass"};
  return doc;
}

ReportDocument cmd_structure(const RunConfig& cfg) {
  const bool overridden = cfg.tolerance > 0.0;
  const double tol = effective(cfg.tolerance, 1e-10);
  const double kraus_tol = overridden ? tol : 1e-9;
  const double mub_tol = overridden ? tol : 1e-12;
  const QuantumPair pair = QuantumPair::make(build_group(cfg.group), cfg.seed);
  const int n = pair.dim;

  nlohmann::json records = nlohmann::json::array();
  bool all_pass = true;
  const auto add_value = [&](const std::string& check, double value, double bound) {
    const bool ok = value <= bound;
    all_pass = all_pass && ok;
    records.push_back({{"check", check}, {"value", value}, {"bound", bound}, {"pass", ok}});
  };
  const auto add_count = [&](const std::string& check, std::int64_t value, std::int64_t bound) {
    const bool ok = value == bound;
    all_pass = all_pass && ok;
    records.push_back({{"check", check}, {"value", value}, {"bound", bound}, {"pass", ok}});
  };
  const auto add_flag = [&](const std::string& check, bool value) {
    all_pass = all_pass && value;
    records.push_back({{"check", check}, {"value", value}, {"bound", true}, {"pass", value}});
  };

  add_count("dual_dimension_sum", pair.bundle.total_dual_dimension(), n);
  add_value("fourier_unitarity",
            (pair.fourier.matrix * pair.fourier.matrix.adjoint() - Matrix::Identity(n, n))
                .cwiseAbs()
                .maxCoeff(),
            tol);
  add_flag("pentagon", pentagon_check(pair.group));
  add_flag("comultiplication", comultiplication_check(pair.group));
  add_value("corep_identity", corep_identity_deviation(pair.group, pair.bundle), tol);

  const ComplementarityReport comp = complementarity_check(pair);
  add_value("complementarity_projection_pairing", comp.projection_pairing, tol);
  add_value("complementarity_orthogonality", comp.orthogonality, tol);
  add_value("complementarity_trace_factorization", comp.trace_factorization, tol);
  add_value("complementarity_scalar_expectation", comp.scalar_expectation, tol);
  add_count("span_rank", span_check(pair), static_cast<std::int64_t>(n) * n);

  // Kraus spot checks over a few random functionals.
  const int kraus_trials = 8;
  double completeness_dev = 0.0, agreement_dev = 0.0, membership_dev = 0.0;
  for (int t = 0; t < kraus_trials; ++t) {
    CounterRng rng = CounterRng::derive(cfg.seed, 0x6b72u + static_cast<std::uint64_t>(t));
    Vector xi(n);
    for (int s = 0; s < n; ++s) xi(s) = rng.complex_gaussian();
    const std::vector<Matrix> kraus = kraus_decomposition(pair, xi);
    const double weight = xi.squaredNorm();
    Matrix left = Matrix::Zero(n, n), right = Matrix::Zero(n, n);
    for (const Matrix& k : kraus) {
      left += k.adjoint() * k;
      right += k * k.adjoint();
      membership_dev = std::max(membership_dev, translation_membership_deviation(pair, k));
    }
    const Matrix expected = weight * Matrix::Identity(n, n);
    completeness_dev = std::max({completeness_dev, (left - expected).cwiseAbs().maxCoeff(),
                                 (right - expected).cwiseAbs().maxCoeff()});
    const Matrix probe = random_hermitian(n, rng);
    Matrix channel = Matrix::Zero(n, n);
    for (const Matrix& k : kraus) channel += k.adjoint() * probe * k;
    agreement_dev = std::max(
        agreement_dev, (channel - theta_channel(pair, xi, probe)).cwiseAbs().maxCoeff());
  }
  add_value("kraus_completeness", completeness_dev, kraus_tol);
  add_value("kraus_channel_agreement", agreement_dev, kraus_tol);
  add_value("kraus_membership", membership_dev, kraus_tol);

  if (pair.group.is_abelian() || cfg.mub) {
    const MubReport mub = mub_check(pair);
    add_value("mub_overlap", mub.overlap_deviation, mub_tol);
    add_value("mub_gram", mub.gram_deviation, mub_tol);
  }

  std::int64_t failed = 0;
  for (const nlohmann::json& r : records)
    if (!r.at("pass").get<bool>()) ++failed;

  ReportDocument doc;
  doc.body = base_report(cfg, tol);
  doc.body["group_info"] = group_info(pair);
  doc.body["records"] = std::move(records);
  doc.body["summary"] = {
      {"count", static_cast<std::int64_t>(doc.body["records"].size())},
      {"failed", failed},
  };
  doc.pass = all_pass;
  doc.body["verdict"] = all_pass ? "pass" : "fail";
  doc.csv_columns = {"check", "value", "bound", "pass"};
  return doc;
}

ReportDocument cmd_walk(const RunConfig& cfg) {
  const double tol = effective(cfg.tolerance, 1e-12);
  const double mass_tol = 1e-12;
  if (cfg.steps < 1) throw std::invalid_argument("walk: steps must be positive");

  std::unique_ptr<FusionRing> ring;
  std::optional<IrrepBundle> oracle_bundle;
  std::string ring_kind;
  if (cfg.ring.rfind("suq2:", 0) == 0) {
    ring_kind = "suq2";
    ring = std::make_unique<SuQ2Ring>(parse_double(cfg.ring.substr(5), "walk: deformation"));
  } else if (cfg.ring.rfind("dual:", 0) == 0) {
    ring_kind = "dual";
    const GroupTable g = build_group(cfg.ring.substr(5));
    IrrepBundle bundle = irrep_decomposition(g, cfg.seed);
    ring = std::make_unique<TableFusionRing>(group_dual_ring(g, bundle));
    oracle_bundle = std::move(bundle);
  } else if (cfg.ring.rfind("file:", 0) == 0) {
    ring_kind = "file";
    ring = std::make_unique<TableFusionRing>(load_fusion_ring(cfg.ring.substr(5)));
  } else {
    throw std::invalid_argument("walk: ring spec must be suq2:q, dual:GROUP, or file:PATH");
  }

  QTrace start;
  if (cfg.state == "uniform") {
    start = QTrace::uniform(*ring);
  } else if (cfg.state.rfind("delta:", 0) == 0) {
    const long label = parse_long(cfg.state.substr(6), "walk: state label");
    if (label < 0) throw std::invalid_argument("walk: state label must be nonnegative");
    if (ring->finite() && static_cast<std::size_t>(label) >= ring->size())
      throw std::invalid_argument("walk: state label out of range");
    start = QTrace::delta(static_cast<std::size_t>(label));
  } else {
    throw std::invalid_argument("walk: state spec must be uniform or delta:k");
  }
  start.validate(*ring);

  nlohmann::json records = nlohmann::json::array();
  double max_mass_gap = 0.0, max_oracle_gap = 0.0;
  double final_entropy = 0.0;
  bool all_pass = true;
  QTrace current = start;
  for (int k = 1; k <= cfg.steps; ++k) {
    if (k > 1) current = convolve(current, start, *ring);
    const double mass_gap = std::abs(current.mass() - 1.0);
    const double entropy = hiai_izumi_entropy(current, *ring);
    std::int64_t support = 0;
    for (const auto& [label, w] : current.weights)
      if (w > 0.0) ++support;
    nlohmann::json rec;
    rec["step"] = k;
    rec["entropy"] = entropy;
    rec["mass_gap"] = mass_gap;
    rec["support"] = support;
    bool row_pass = mass_gap <= mass_tol;
    if (oracle_bundle) {
      const double oracle = kac_entropy_oracle(current, *oracle_bundle);
      const double gap = std::abs(entropy - oracle);
      rec["oracle_entropy"] = oracle;
      rec["oracle_gap"] = gap;
      max_oracle_gap = std::max(max_oracle_gap, gap);
      row_pass = row_pass && gap <= tol;
    }
    rec["pass"] = row_pass;
    all_pass = all_pass && row_pass;
    max_mass_gap = std::max(max_mass_gap, mass_gap);
    final_entropy = entropy;
    records.push_back(std::move(rec));
  }

  nlohmann::json ring_info;
  ring_info["kind"] = ring_kind;
  ring_info["finite"] = ring->finite();
  if (ring->finite()) {
    const std::size_t k = ring->size();
    ring_info["size"] = static_cast<std::int64_t>(k);
    ring_info["unit"] = static_cast<std::int64_t>(ring->unit());
    nlohmann::json names = nlohmann::json::array(), qdims = nlohmann::json::array();
    for (std::size_t i = 0; i < k; ++i) {
      names.push_back(ring->label_name(i));
      qdims.push_back(ring->qdim(i));
    }
    ring_info["labels"] = std::move(names);
    ring_info["qdims"] = std::move(qdims);
  }

  ReportDocument doc;
  doc.body = base_report(cfg, tol);
  doc.body["ring_info"] = std::move(ring_info);
  doc.body["records"] = std::move(records);
  doc.body["summary"] = {
      {"steps", cfg.steps},
      {"final_entropy", final_entropy},
      {"max_mass_gap", max_mass_gap},
      {"max_oracle_gap", oracle_bundle ? nlohmann::json(max_oracle_gap) : nlohmann::json()},
  };
  doc.pass = all_pass;
  doc.body["verdict"] = all_pass ? "pass" : "fail";
  doc.csv_columns = {"step", "entropy", "mass_gap", "support"};
  if (oracle_bundle) {
    doc.csv_columns.push_back("oracle_entropy");
    doc.csv_columns.push_back("oracle_gap");
  }
  return doc;
}

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"finite quantum group entropy verification"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "64-bit seed expanded per trial");
  app.add_option("--tolerance", cfg.tolerance, "override the command's verdict tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cfg.output, "write the report to a file instead of stdout");

  CLI::App* uncertainty =
      app.add_subcommand("uncertainty", "entropic inequality over census and ensemble states");
  uncertainty->add_option("--group", cfg.group, "group spec (Zn, Dn, Sn, Q8, K4, AxB, file:PATH)")
      ->required();
  uncertainty->add_option("--ensemble", cfg.ensemble, "census | wishart:N[:r] | pure:N");

  CLI::App* ranksupport =
      app.add_subcommand("ranksupport", "support-times-rank inequality sweep");
  ranksupport->add_option("--group", cfg.group, "group spec")->required();
  ranksupport->add_option("--ensemble", cfg.ensemble,
                          "census | wishart:N[:r] | pure:N | sparse:N");

  CLI::App* structure = app.add_subcommand("structure", "structural identity suite");
  structure->add_option("--group", cfg.group, "group spec")->required();
  structure->add_flag("--mub", cfg.mub, "force the unbiased-bases check");

  CLI::App* walk = app.add_subcommand("walk", "convolution walk entropy series");
  walk->add_option("--ring", cfg.ring, "suq2:q | dual:GROUP | file:PATH")->required();
  walk->add_option("--state", cfg.state, "uniform | delta:k");
  walk->add_option("--steps", cfg.steps, "number of convolution powers")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    ReportDocument doc;
    if (uncertainty->parsed()) {
      cfg.command = "uncertainty";
      doc = cmd_uncertainty(cfg);
    } else if (ranksupport->parsed()) {
      cfg.command = "ranksupport";
      doc = cmd_ranksupport(cfg);
    } else if (structure->parsed()) {
      cfg.command = "structure";
      doc = cmd_structure(cfg);
    } else {
      cfg.command = "walk";
      doc = cmd_walk(cfg);
    }
    const std::string text = cfg.format == "json" ? doc.to_json() : doc.to_csv();
    if (cfg.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.output);
      if (!out) throw std::invalid_argument("cannot open output file " + cfg.output);
      out << text;
    }
    return doc.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qgd::cli
