#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qgd::cli {

// Everything a run depends on; the report echoes all of it, so identical
// configs (seed included) produce bit-identical reports.
struct RunConfig {
  std::string command;          // uncertainty | ranksupport | structure | walk
  std::string group;            // family spec, group commands
  std::string ring;             // suq2:q | dual:GROUP | file:PATH, walk only
  std::string ensemble = "census";  // census | wishart:N[:r] | pure:N | sparse:N
  std::string state = "uniform";    // uniform | delta:k, walk only
  int steps = 8;
  std::uint64_t seed = 0;
  bool mub = false;             // force the unbiased-bases check
  double tolerance = 0.0;       // 0 keeps the command default
  std::string format = "json";  // json | csv
  std::string output;           // empty writes to stdout
};

struct ReportDocument {
  nlohmann::json body;
  std::vector<std::string> csv_columns;
  bool pass = false;

  std::string to_json() const;
  std::string to_csv() const;  // header plus body["records"] in column order
};

// Equality census plus an optional randomized ensemble, every state run
// through the three forms of the entropic inequality.
ReportDocument cmd_uncertainty(const RunConfig& cfg);

// Support-times-rank inequality over the deterministic function census and
// a randomized ensemble of states or sparse functions.
ReportDocument cmd_ranksupport(const RunConfig& cfg);

// Consolidated structural report: dual dimension count, Fourier unitarity,
// pentagon and comultiplication identities, corepresentation identity,
// complementarity, span rank, Kraus spot checks, unbiased bases.
ReportDocument cmd_structure(const RunConfig& cfg);

// Entropy series of the convolution walk; dual rings carry an oracle
// agreement column computed through the spectral core.
ReportDocument cmd_walk(const RunConfig& cfg);

// Parses argv, dispatches, writes the report. Exit code 0 when every
// verdict passes, 1 when an inequality verdict fails, 2 on invalid input.
int run(int argc, const char* const* argv);

}  // namespace qgd::cli
