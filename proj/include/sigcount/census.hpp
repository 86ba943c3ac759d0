#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sigcount/lattice.hpp"

namespace sigcount {

const char* version_string() noexcept;

// key=value lines; '#' starts a comment. Keys keep file order and may repeat.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
KeyValues parse_key_values(std::string_view text);
KeyValues read_key_value_file(const std::string& path);

struct RunManifest {
  std::string lattice = "1,i";
  int d_max = 1;
  double H_max = 2;
  int digits = 30;
  int theorem = 1;  // 1: z in Omega excluded; 2: all z kept
  std::uint64_t seed = 0;
  double budget = 2e9;
  std::map<std::string, double> constants;  // const.<name>=value
  std::string version = version_string();
};

// Unknown keys, malformed values and version mismatches raise ConfigError.
void apply_manifest_entry(RunManifest& m, const std::string& key, const std::string& value);
RunManifest parse_manifest(const KeyValues& entries);

struct CensusSummary {
  std::uint64_t enumerated = 0;
  std::uint64_t records = 0;
  std::uint64_t excluded_lattice = 0;
  std::uint64_t lattice_zeros = 0;  // theorem-2 mode: z in Omega, sigma(z) = 0
  std::uint64_t sigma_overflow = 0;
  std::uint64_t detection_attempted = 0;
  std::uint64_t detection_skipped = 0;
  std::uint64_t precision_too_low = 0;
  std::uint64_t candidate_hits = 0;
  std::uint64_t certified_hits = 0;
  std::uint64_t max_record_degree = 0;
  double max_record_height = 0;
  double d_eval = 0;
  double H_eval = 0;
  std::optional<double> bound;
  std::optional<double> bound_log_abs;
  std::optional<double> radius_bound;
};

// Writes a manifest line, one record per enumerated z, and a summary line,
// all as JSON-lines. Output depends on the manifest only.
CensusSummary run_census(const RunManifest& m, std::ostream& out);

// The evaluation point used for the summary bound: (max(d, e), max(H, e^e)).
std::pair<double, double> census_eval_point(const RunManifest& m);

struct GrowthSuiteOptions {
  int digits = 30;
  std::uint64_t seed = 0;
  int samples = 1000;
  double band = 20;      // sampled |z| in [r, r + band]
  int delta_grid = 500;  // Delta check over Im tau in [sqrt3/2, 1.9]
  int iterations = 4;
};

struct GrowthSuiteSummary {
  int samples = 0;
  int violations = 0;
  double min_slack = 0;
  int delta_violations = 0;
};

// Certificate, threshold table, Delta grid and sampled growth check.
// Throws ImTauTooLarge for Im(tau) > 1.9.
GrowthSuiteSummary run_growth_suite(const Lattice& lat, const GrowthSuiteOptions& opts, std::ostream& out);

struct ZeroCase {
  std::string poly;
  double R = 0;
};

struct ZeroExperimentConfig {
  std::string lattice = "1,i";
  int digits = 30;
  std::uint64_t seed = 0;
  std::vector<ZeroCase> cases;
  int random_cases = 0;
  int random_L_max = 4;
  double random_R_min = 2;
  double random_R_max = 6;
  int random_coeff = 3;
  std::optional<double> besson_c;
  bool jensen = true;
};

ZeroExperimentConfig parse_zero_config(const KeyValues& entries);

// Seeded random integer polynomials with 1 <= L <= L_max and radii in [R_min, R_max].
std::vector<ZeroCase> random_zero_cases(const ZeroExperimentConfig& cfg);

struct ZeroRow {
  ZeroCase input;
  int L = 0;
  std::optional<int> count;
  double radius = 0;
  double winding_residual = 0;
  double shape = 0;  // L (R + sqrt L)^2 log(R + L)
  std::optional<double> besson_bound;
  std::optional<double> jensen_bound;
  std::string jensen_error;
};

struct ZeroExperimentSummary {
  std::vector<ZeroRow> rows;
  double max_shape_ratio = 0;  // max count / shape: the smallest admissible Besson c
  int besson_violations = 0;
  int jensen_violations = 0;
  int jensen_failures = 0;
};

ZeroExperimentSummary run_zero_experiment(const ZeroExperimentConfig& cfg, std::ostream& out);

}  // namespace sigcount
