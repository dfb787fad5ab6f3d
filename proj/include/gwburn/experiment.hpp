#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwburn/burning.hpp"
#include "gwburn/stats.hpp"
#include "gwburn/tree.hpp"

namespace gwburn {

enum class OutputFormat { Csv, Json };

/// Shared CLI exit-code contract.
enum ExitCode {
  kExitOk = 0,
  kExitPropertyFailure = 1,
  kExitConfigError = 2,
  kExitSamplingFailure = 3,
  kExitInternalInvariant = 4,
};

struct ExperimentConfig {
  std::string offspring_spec = "poisson";
  std::vector<std::int64_t> n_values;
  std::int64_t trials = 1;
  std::uint64_t seed = 1;
  double epsilon = 0.1;
  std::vector<int> k_values;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  // empty: stdout (sample: current directory)
  int workers = 1;
  int node_cap = kDefaultExactNodeCap;
  std::int64_t size_cap = 1'000'000;   // tails subcommand
  std::int64_t pair_cap = kDefaultPairCap;
  int i_max = 50;                      // pairs subcommand
  bool include_timings = false;        // off by default so outputs are byte-stable
  std::vector<std::string> tree_files; // bounds: read trees instead of sampling
};

/// Per-tree output row. The ordering invariant
/// pair_lb + 1 <= bhat <= exact_b <= 2*bhat (exact_b when present, which must
/// also respect the scheme and closed-form upper bounds) is checked after
/// every trial; a violation is a library bug, not a data point.
struct TrialRecord {
  std::int64_t trial_index = 0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::int64_t rejection_attempts = 0;
  int bhat = 0;
  int scheme_bound = 0;
  int pair_lb = 0;
  std::optional<int> exact_b;
  int height = 0;
  int diameter = 0;
  double wall_time_ms = 0.0;
  std::optional<KnownBounds> bounds;
};

/// Throws InternalInvariantError when the record violates the bound ordering.
void check_trial_record(const TrialRecord& record);

struct SampleOutput {
  std::vector<DegreeSequence> trees;
  std::string summary_csv;
};

struct BoundsOutput {
  std::vector<TrialRecord> records;
  std::string csv;
};

struct ScalingOutput {
  std::string csv;  // per-trial rows
  std::vector<std::pair<std::int64_t, double>> median_bhat;
  double slope = 0.0;
  std::string summary;  // human-readable medians + fitted exponent
};

struct CkjOutput {
  std::string csv;
  int k = 0;
  std::int64_t satisfied = 0;
  std::int64_t trials = 0;
  double fraction = 0.0;
};

struct PairsOutput {
  std::string csv;
  std::vector<RatioRow> rows;
};

struct TailsOutput {
  std::string csv;
  std::vector<TailRow> rows;
};

/// Engines behind the CLI subcommands. Each validates the slice of the
/// config it uses (throwing ConfigError) and produces deterministic output:
/// identical (config, seed) gives identical bytes for any worker count.
SampleOutput run_sample(const ExperimentConfig& config);
BoundsOutput run_bounds(const ExperimentConfig& config);
ScalingOutput run_scaling(const ExperimentConfig& config);
CkjOutput run_ckj(const ExperimentConfig& config);
PairsOutput run_pairs(const ExperimentConfig& config);
TailsOutput run_tails(const ExperimentConfig& config);

std::string to_json(const BoundsOutput& out);
std::string to_json(const ScalingOutput& out);
std::string to_json(const CkjOutput& out);
std::string to_json(const PairsOutput& out);
std::string to_json(const TailsOutput& out);

/// Fixed-format float for CSV cells; stable across runs and worker counts.
std::string format_double(double value);

/// Floor of the cube root of n/epsilon, exact at integer cubes.
std::int64_t scaling_k_for(std::int64_t n, double epsilon);

}  // namespace gwburn
