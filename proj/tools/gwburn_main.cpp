#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gwburn/acceptance.hpp"
#include "gwburn/errors.hpp"
#include "gwburn/experiment.hpp"
#include "gwburn/parallel.hpp"

namespace {

using gwburn::ExperimentConfig;
using gwburn::OutputFormat;

void write_or_print(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gwburn::ConfigError("cannot open output path: " + path);
  out << payload;
}

void add_common_options(CLI::App* cmd, ExperimentConfig& config, std::string& format) {
  cmd->add_option("--offspring", config.offspring_spec,
                  "offspring law: poisson | geometric | binomial:d | two_point:m | custom:FILE");
  cmd->add_option("--trials", config.trials, "trials per configuration");
  cmd->add_option("--seed", config.seed, "base RNG seed")->envname("GWBURN_SEED");
  cmd->add_option("--workers", config.workers, "worker thread count");
  cmd->add_option("--format", format, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", config.output_path, "output path (default: stdout)");
  cmd->add_flag("--timings", config.include_timings, "include wall_time_ms columns");
}

int dispatch(const std::string& subcommand, const ExperimentConfig& config) {
  using namespace gwburn;
  if (subcommand == "sample") {
    SampleOutput out = run_sample(config);
    const std::string dir = config.output_path.empty() ? "." : config.output_path;
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < out.trees.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "tree_%05zu.txt", i);
      std::ofstream file(std::filesystem::path(dir) / name, std::ios::binary);
      if (!file) throw ConfigError("cannot write tree file in " + dir);
      file << serialize_degrees(out.trees[i]) << '\n';
    }
    std::cout << out.summary_csv;
    return kExitOk;
  }
  if (subcommand == "bounds") {
    BoundsOutput out = run_bounds(config);
    write_or_print(config.format == OutputFormat::Json ? to_json(out) : out.csv,
                   config.output_path);
    return kExitOk;
  }
  if (subcommand == "scaling") {
    ScalingOutput out = run_scaling(config);
    write_or_print(config.format == OutputFormat::Json ? to_json(out) : out.csv,
                   config.output_path);
    std::cout << out.summary;
    return kExitOk;
  }
  if (subcommand == "ckj") {
    CkjOutput out = run_ckj(config);
    write_or_print(config.format == OutputFormat::Json ? to_json(out) : out.csv,
                   config.output_path);
    std::cout << "k=" << out.k << " fraction=" << format_double(out.fraction) << '\n';
    return kExitOk;
  }
  if (subcommand == "pairs") {
    PairsOutput out = run_pairs(config);
    write_or_print(config.format == OutputFormat::Json ? to_json(out) : out.csv,
                   config.output_path);
    return kExitOk;
  }
  if (subcommand == "tails") {
    TailsOutput out = run_tails(config);
    write_or_print(config.format == OutputFormat::Json ? to_json(out) : out.csv,
                   config.output_path);
    return kExitOk;
  }
  throw ConfigError("unknown subcommand: " + subcommand);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Size-conditioned Galton-Watson trees: burning numbers, covers, "
               "certificates, and seeded Monte Carlo experiments"};
  app.require_subcommand(1);

  ExperimentConfig config;
  config.workers = gwburn::default_worker_count();
  std::string format = "csv";
  std::string verify_suite = "all";

  auto* sample = app.add_subcommand("sample", "sample conditioned trees to files");
  auto* bounds = app.add_subcommand("bounds", "burning bounds per tree");
  auto* scaling = app.add_subcommand("scaling", "median bhat scaling fit across sizes");
  auto* ckj = app.add_subcommand("ckj", "frequency of the small-C_k^j event");
  auto* pairs = app.add_subcommand("pairs", "distance-pair ratio estimates");
  auto* tails = app.add_subcommand("tails", "height / subtree-height tail estimates");
  auto* verify = app.add_subcommand("verify", "run acceptance suites");

  for (CLI::App* cmd : {sample, bounds, scaling, ckj, pairs, tails}) {
    add_common_options(cmd, config, format);
    cmd->add_option("--n", config.n_values, "tree size (repeatable)");
  }
  bounds->add_option("--node-cap", config.node_cap, "exact solver vertex cap");
  bounds->add_option("--tree", config.tree_files, "tree file (repeatable); skips sampling");
  bounds->add_option("--pair-cap", config.pair_cap, "pair-count work budget");
  ckj->add_option("--epsilon", config.epsilon, "epsilon in (0, 1]");
  pairs->add_option("--i-max", config.i_max, "largest distance i");
  tails->add_option("--k", config.k_values, "tail threshold (repeatable)");
  tails->add_option("--size-cap", config.size_cap, "unconditioned tree size cap");

  verify->add_option("suite", verify_suite, "oracle | statistical | all");
  verify->add_option("--workers", config.workers, "worker thread count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gwburn::kExitConfigError;
  }

  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;

  try {
    if (verify->parsed()) {
      std::vector<int> ids;
      if (verify_suite == "oracle") {
        ids = gwburn::acceptance::oracle_ids();
      } else if (verify_suite == "statistical") {
        ids = gwburn::acceptance::statistical_ids();
      } else if (verify_suite == "all") {
        ids = gwburn::acceptance::all_ids();
      } else {
        std::cerr << "unknown verify suite: " << verify_suite << '\n';
        return gwburn::kExitConfigError;
      }
      const int failures = gwburn::acceptance::run_suite(ids, config.workers, std::cout);
      return failures == 0 ? gwburn::kExitOk : gwburn::kExitPropertyFailure;
    }
    return dispatch(app.get_subcommands().front()->get_name(), config);
  } catch (const gwburn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return gwburn::kExitConfigError;
  } catch (const gwburn::IncompatibleSizeError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return gwburn::kExitConfigError;
  } catch (const gwburn::InvalidParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return gwburn::kExitConfigError;
  } catch (const gwburn::InternalInvariantError& e) {
    std::cerr << "internal invariant violation: " << e.what() << '\n';
    return gwburn::kExitInternalInvariant;
  } catch (const gwburn::Error& e) {
    std::cerr << "runtime failure: " << e.what() << '\n';
    return gwburn::kExitSamplingFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gwburn::kExitSamplingFailure;
  }
}
