#include "gwburn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "gwburn/errors.hpp"
#include "gwburn/parallel.hpp"
#include "gwburn/sampler.hpp"

namespace gwburn {

namespace {

OffspringDistribution offspring_from_config(const ExperimentConfig& config) {
  try {
    return OffspringDistribution::parse_spec(config.offspring_spec);
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid --offspring: ") + e.what());
  }
}

void check_common(const ExperimentConfig& config, const OffspringDistribution& dist) {
  if (config.trials < 1) throw ConfigError("--trials must be >= 1");
  if (!(config.epsilon > 0.0) || config.epsilon > 1.0) {
    throw ConfigError("--epsilon must lie in (0, 1]");
  }
  if (config.workers < 1) throw ConfigError("--workers must be >= 1");
  for (const std::int64_t n : config.n_values) {
    if (n < 1) throw ConfigError("--n must be >= 1");
    if (n > kMaxTreeVertices) throw ConfigError("--n exceeds the vertex cap");
    if ((n - 1) % dist.span() != 0) {
      throw ConfigError("n = " + std::to_string(n) + " is incompatible with the span " +
                        std::to_string(dist.span()) + " of " + dist.name() +
                        " (need n = 1 mod span)");
    }
  }
}

std::int64_t require_single_n(const ExperimentConfig& config, const char* cmd) {
  if (config.n_values.size() != 1) {
    throw ConfigError(std::string(cmd) + " needs exactly one --n value");
  }
  return config.n_values.front();
}

double median_int(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  if (m % 2 == 1) return values[m / 2];
  return (static_cast<double>(values[m / 2 - 1]) + values[m / 2]) / 2.0;
}

std::string csv_optional(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::int64_t scaling_k_for(std::int64_t n, double epsilon) {
  const double x = static_cast<double>(n) / epsilon;
  auto k = static_cast<std::int64_t>(std::llround(std::cbrt(x)));
  while (static_cast<double>(k + 1) * (k + 1) * (k + 1) <= x) ++k;
  while (k > 0 && static_cast<double>(k) * k * k > x) --k;
  return std::max<std::int64_t>(k, 1);
}

void check_trial_record(const TrialRecord& record) {
  auto fail = [&](const std::string& msg) {
    throw InternalInvariantError("trial " + std::to_string(record.trial_index) + " (n = " +
                                 std::to_string(record.n) + "): " + msg);
  };
  if (record.pair_lb + 1 > record.bhat) {
    fail("pair lower bound " + std::to_string(record.pair_lb) + " + 1 exceeds bhat " +
         std::to_string(record.bhat));
  }
  if (record.exact_b) {
    const int b = *record.exact_b;
    if (b < record.bhat) fail("exact b below bhat");
    if (b > 2 * record.bhat) fail("exact b above 2*bhat");
    if (b > record.scheme_bound) fail("exact b above the scheme bound");
    if (record.bounds) {
      const KnownBounds& kb = *record.bounds;
      if (b > kb.dfs_cycle || b > kb.bessy || b > kb.land_lu || b > kb.bastide) {
        fail("exact b above a closed-form bound");
      }
    }
  }
  if (record.bhat > record.scheme_bound) fail("bhat above the scheme bound");
}

SampleOutput run_sample(const ExperimentConfig& config) {
  const OffspringDistribution dist = offspring_from_config(config);
  check_common(config, dist);
  if (config.n_values.empty()) throw ConfigError("sample needs at least one --n value");

  const std::int64_t total =
      static_cast<std::int64_t>(config.n_values.size()) * config.trials;
  SampleOutput out;
  out.trees.resize(total);
  std::vector<std::int64_t> attempts(total);
  std::vector<std::pair<int, int>> shape(total);  // (height, diameter)
  parallel_for_trials(total, config.workers, [&](std::int64_t idx) {
    const std::int64_t n = config.n_values[idx / config.trials];
    RandomStream rng(config.seed, static_cast<std::uint64_t>(idx));
    ConditionedSample sample = sample_conditioned(dist, n, rng);
    attempts[idx] = sample.attempts;
    shape[idx] = {sample.tree.height(), sample.tree.diameter()};
    out.trees[idx] = sample.tree.degrees();
  });

  std::ostringstream csv;
  csv << "trial,n,seed,attempts,height,diameter\n";
  for (std::int64_t idx = 0; idx < total; ++idx) {
    csv << idx << ',' << out.trees[idx].size() << ',' << config.seed << ',' << attempts[idx]
        << ',' << shape[idx].first << ',' << shape[idx].second << '\n';
  }
  out.summary_csv = csv.str();
  return out;
}

BoundsOutput run_bounds(const ExperimentConfig& config) {
  const OffspringDistribution dist = offspring_from_config(config);
  const bool from_files = !config.tree_files.empty();
  if (!from_files) {
    check_common(config, dist);
    if (config.n_values.empty()) {
      throw ConfigError("bounds needs --n values or --tree files");
    }
  } else {
    if (config.trials < 1) throw ConfigError("--trials must be >= 1");
  }

  std::vector<Tree> trees;
  std::vector<std::int64_t> attempts;
  if (from_files) {
    for (const std::string& path : config.tree_files) {
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot open tree file: " + path);
      std::string line;
      std::getline(in, line);
      trees.emplace_back(parse_degrees(line));
      attempts.push_back(0);
    }
  } else {
    const std::int64_t total =
        static_cast<std::int64_t>(config.n_values.size()) * config.trials;
    std::vector<std::optional<Tree>> slots(total);
    std::vector<std::int64_t> att(total);
    parallel_for_trials(total, config.workers, [&](std::int64_t idx) {
      const std::int64_t n = config.n_values[idx / config.trials];
      RandomStream rng(config.seed, static_cast<std::uint64_t>(idx));
      ConditionedSample sample = sample_conditioned(dist, n, rng);
      slots[idx] = std::move(sample.tree);
      att[idx] = sample.attempts;
    });
    for (std::int64_t idx = 0; idx < total; ++idx) {
      trees.push_back(std::move(*slots[idx]));
      attempts.push_back(att[idx]);
    }
  }

  BoundsOutput out;
  const std::int64_t count = static_cast<std::int64_t>(trees.size());
  out.records.resize(count);
  parallel_for_trials(count, config.workers, [&](std::int64_t idx) {
    const Tree& tree = trees[idx];
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial_index = idx;
    rec.n = tree.n();
    rec.seed = config.seed;
    rec.rejection_attempts = attempts[idx];
    rec.bhat = bhat_exact(tree).k;
    rec.scheme_bound = scheme_upper_bound(tree).bound;
    rec.pair_lb = pair_lower_bound(tree, config.pair_cap).k;
    if (tree.n() <= config.node_cap) rec.exact_b = burning_number_exact(tree, config.node_cap).b;
    rec.height = tree.height();
    rec.diameter = tree.diameter();
    if (tree.n() >= 2) rec.bounds = known_bounds(tree.n());
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    check_trial_record(rec);
    out.records[idx] = std::move(rec);
  });

  std::ostringstream csv;
  csv << "trial,n,seed,rejection_attempts,bhat,scheme_bound,pair_lb,exact_b,height,"
         "diameter,dfs_cycle,bessy,land_lu,bastide";
  if (config.include_timings) csv << ",wall_time_ms";
  csv << '\n';
  for (const TrialRecord& rec : out.records) {
    csv << rec.trial_index << ',' << rec.n << ',' << rec.seed << ',' << rec.rejection_attempts
        << ',' << rec.bhat << ',' << rec.scheme_bound << ',' << rec.pair_lb << ','
        << csv_optional(rec.exact_b) << ',' << rec.height << ',' << rec.diameter << ',';
    if (rec.bounds) {
      csv << rec.bounds->dfs_cycle << ',' << rec.bounds->bessy << ',' << rec.bounds->land_lu
          << ',' << rec.bounds->bastide;
    } else {
      csv << ",,,";
    }
    if (config.include_timings) csv << ',' << format_double(rec.wall_time_ms);
    csv << '\n';
  }
  out.csv = csv.str();
  return out;
}

ScalingOutput run_scaling(const ExperimentConfig& config) {
  const OffspringDistribution dist = offspring_from_config(config);
  check_common(config, dist);
  std::vector<std::int64_t> ns(config.n_values);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.size() < 3) {
    throw ConfigError("scaling needs at least 3 distinct --n values; refusing a " +
                      std::to_string(ns.size()) + "-point fit");
  }

  const std::int64_t total = static_cast<std::int64_t>(ns.size()) * config.trials;
  std::vector<int> bhat(total);
  std::vector<int> scheme(total);
  parallel_for_trials(total, config.workers, [&](std::int64_t idx) {
    const std::int64_t n = ns[idx / config.trials];
    RandomStream rng(config.seed, static_cast<std::uint64_t>(idx));
    const Tree tree = sample_conditioned(dist, n, rng).tree;
    bhat[idx] = bhat_exact(tree).k;
    scheme[idx] = scheme_upper_bound(tree).bound;
  });

  ScalingOutput out;
  std::ostringstream csv;
  csv << "n,trial,bhat,scheme_bound\n";
  for (std::int64_t idx = 0; idx < total; ++idx) {
    csv << ns[idx / config.trials] << ',' << idx % config.trials << ',' << bhat[idx] << ','
        << scheme[idx] << '\n';
  }
  out.csv = csv.str();

  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::vector<int> slice(bhat.begin() + i * config.trials,
                           bhat.begin() + (i + 1) * config.trials);
    out.median_bhat.push_back({ns[i], median_int(std::move(slice))});
  }

  // Least-squares slope of log(median bhat) against log(n).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto points = static_cast<double>(out.median_bhat.size());
  for (const auto& [n, med] : out.median_bhat) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(med);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (points * sxy - sx * sy) / (points * sxx - sx * sx);

  std::ostringstream summary;
  for (const auto& [n, med] : out.median_bhat) {
    summary << "n=" << n << " median_bhat=" << format_double(med) << '\n';
  }
  summary << "slope=" << format_double(out.slope) << '\n';
  out.summary = summary.str();
  return out;
}

CkjOutput run_ckj(const ExperimentConfig& config) {
  const OffspringDistribution dist = offspring_from_config(config);
  check_common(config, dist);
  const std::int64_t n = require_single_n(config, "ckj");
  const std::int64_t k64 = scaling_k_for(n, config.epsilon);
  if (k64 > std::numeric_limits<int>::max()) throw ConfigError("k overflow");
  const int k = static_cast<int>(k64);

  struct Row {
    std::int64_t min_size;
    int argmin_j;
    bool satisfied;
  };
  std::vector<Row> rows(config.trials);
  parallel_for_trials(config.trials, config.workers, [&](std::int64_t t) {
    RandomStream rng(config.seed, static_cast<std::uint64_t>(t));
    const Tree tree = sample_conditioned(dist, n, rng).tree;
    const std::vector<std::int64_t> counts = tree.c_k_sizes(k);
    int arg = 0;
    for (int j = 1; j < k; ++j) {
      if (counts[j] < counts[arg]) arg = j;
    }
    rows[t] = {counts[arg], arg, counts[arg] <= 2 * static_cast<std::int64_t>(k) - 1};
  });

  CkjOutput out;
  out.k = k;
  out.trials = config.trials;
  std::ostringstream csv;
  csv << "trial,n,k,min_c,argmin_j,satisfied\n";
  for (std::int64_t t = 0; t < config.trials; ++t) {
    csv << t << ',' << n << ',' << k << ',' << rows[t].min_size << ',' << rows[t].argmin_j
        << ',' << (rows[t].satisfied ? 1 : 0) << '\n';
    if (rows[t].satisfied) ++out.satisfied;
  }
  out.csv = csv.str();
  out.fraction = static_cast<double>(out.satisfied) / static_cast<double>(out.trials);
  return out;
}

PairsOutput run_pairs(const ExperimentConfig& config) {
  const OffspringDistribution dist = offspring_from_config(config);
  check_common(config, dist);
  const std::int64_t n = require_single_n(config, "pairs");
  if (config.trials < 2) throw ConfigError("pairs needs --trials >= 2");
  if (config.i_max < 1) throw ConfigError("pairs needs i_max >= 1");

  PairsOutput out;
  out.rows = estimate_pair_ratio(dist, n, config.i_max, config.trials, config.seed,
                                 config.workers);
  std::ostringstream csv;
  csv << "i,estimate,stderr,trials,seed\n";
  for (const RatioRow& row : out.rows) {
    csv << row.i << ',' << format_double(row.estimate) << ',' << format_double(row.std_error)
        << ',' << config.trials << ',' << config.seed << '\n';
  }
  out.csv = csv.str();
  return out;
}

TailsOutput run_tails(const ExperimentConfig& config) {
  const OffspringDistribution dist = offspring_from_config(config);
  check_common(config, dist);
  if (config.k_values.empty()) throw ConfigError("tails needs at least one --k value");
  for (const int k : config.k_values) {
    if (k < 0) throw ConfigError("--k must be >= 0");
  }
  if (config.size_cap < 1) throw ConfigError("--size-cap must be >= 1");

  TailsOutput out;
  if (config.n_values.empty()) {
    out.rows = estimate_height_tail(dist, config.k_values, config.trials, config.size_cap,
                                    config.seed, config.workers);
  } else {
    const std::int64_t n = require_single_n(config, "tails with --n");
    for (const int k : config.k_values) {
      const SubtreeTail tail =
          estimate_subtree_tail(dist, n, k, config.trials, config.seed, config.workers);
      out.rows.push_back({k, tail.estimate, tail.std_error});
    }
  }
  std::ostringstream csv;
  csv << "k,estimate,stderr,trials,seed\n";
  for (const TailRow& row : out.rows) {
    csv << row.k << ',' << format_double(row.estimate) << ',' << format_double(row.std_error)
        << ',' << config.trials << ',' << config.seed << '\n';
  }
  out.csv = csv.str();
  return out;
}

namespace {

nlohmann::json record_json(const TrialRecord& rec, bool include_timings) {
  nlohmann::json j;
  j["trial_index"] = rec.trial_index;
  j["n"] = rec.n;
  j["seed"] = rec.seed;
  j["rejection_attempts"] = rec.rejection_attempts;
  j["bhat"] = rec.bhat;
  j["scheme_bound"] = rec.scheme_bound;
  j["pair_lb"] = rec.pair_lb;
  if (rec.exact_b) j["exact_b"] = *rec.exact_b;
  j["height"] = rec.height;
  j["diameter"] = rec.diameter;
  if (rec.bounds) {
    j["known_bounds"] = {{"dfs_cycle", rec.bounds->dfs_cycle},
                         {"bessy", rec.bounds->bessy},
                         {"land_lu", rec.bounds->land_lu},
                         {"bastide", rec.bounds->bastide}};
  }
  if (include_timings) j["wall_time_ms"] = rec.wall_time_ms;
  return j;
}

}  // namespace

std::string to_json(const BoundsOutput& out) {
  nlohmann::json j = nlohmann::json::array();
  for (const TrialRecord& rec : out.records) j.push_back(record_json(rec, false));
  return j.dump(2);
}

std::string to_json(const ScalingOutput& out) {
  nlohmann::json j;
  j["slope"] = out.slope;
  j["medians"] = nlohmann::json::array();
  for (const auto& [n, med] : out.median_bhat) {
    j["medians"].push_back({{"n", n}, {"median_bhat", med}});
  }
  return j.dump(2);
}

std::string to_json(const CkjOutput& out) {
  nlohmann::json j;
  j["k"] = out.k;
  j["trials"] = out.trials;
  j["satisfied"] = out.satisfied;
  j["fraction"] = out.fraction;
  return j.dump(2);
}

std::string to_json(const PairsOutput& out) {
  nlohmann::json j = nlohmann::json::array();
  for (const RatioRow& row : out.rows) {
    j.push_back({{"i", row.i}, {"estimate", row.estimate}, {"stderr", row.std_error}});
  }
  return j.dump(2);
}

std::string to_json(const TailsOutput& out) {
  nlohmann::json j = nlohmann::json::array();
  for (const TailRow& row : out.rows) {
    j.push_back({{"k", row.k}, {"estimate", row.estimate}, {"stderr", row.std_error}});
  }
  return j.dump(2);
}

}  // namespace gwburn
