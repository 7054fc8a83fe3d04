#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "bohr/radius.hpp"

namespace bohr {

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
  std::string command;
  std::string domain = "lp:inf:1";
  std::vector<std::string> targets{"disk:0,0,1"};
  std::string mode = "r1";
  std::string family = "mobius";
  std::string alpha_grid = "geometric:200";
  std::size_t count = 500;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  double condition_tol = 1e-9;
  int degree = 60;
  int probe_degree = 12;
  int inner_degree = 3;
  double contraction = 0.95;
  /// Probe radius; NaN selects the published lower radius.
  double radius = std::numeric_limits<double>::quiet_NaN();
  std::string output;

  /// Parses every spec and checks ranges; throws std::invalid_argument.
  void validate() const;
  bool operator==(const ExperimentConfig& other) const;
};

struct ExperimentRecord {
  ExperimentConfig config;
  std::string kind;
  Json payload;  ///< deterministic numeric results
  bool passed = true;
  std::string version;
  std::string timestamp;
  double wall_clock = 0.0;

  bool operator==(const ExperimentRecord&) const = default;
};

Json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentRecord& r);
ExperimentRecord record_from_json(const Json& j);
Json to_json(const RadiusEstimate& e);

/// Non-finite doubles are stored as the strings "inf", "-inf", "nan".
Json number(double x);
double number_from(const Json& j);

/// FNV-1a of the config JSON without the output path, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

/// Runs the configured command. Asserted corridors decide `passed`.
ExperimentRecord run(const ExperimentConfig& config);

/// Writes the record. An explicit config.output is used verbatim; otherwise
/// <results_dir>/<config hash>/run-NNNN.json with the next free NNNN.
std::filesystem::path persist(const ExperimentRecord& record, const std::filesystem::path& results_dir);

/// BOHRLAB_RESULTS_DIR, or "bohrlab-results".
std::filesystem::path default_results_dir();

enum class TableFormat { Csv, Text };

/// Header `experiment_id,n,p,target,mode,radius_lo,radius_hi,witness,seed,margin`,
/// one row per payload item. Independence records add a footer with the max
/// pairwise radius difference. Throws std::invalid_argument on mixed kinds.
std::string emit_table(const std::vector<ExperimentRecord>& records, TableFormat format);

}  // namespace bohr
