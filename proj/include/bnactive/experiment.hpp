#ifndef BNACTIVE_EXPERIMENT_HPP
#define BNACTIVE_EXPERIMENT_HPP

#include <filesystem>

#include "bnactive/active.hpp"
#include "bnactive/net_io.hpp"

namespace bnactive {

struct ExperimentConfig {
  std::filesystem::path true_network;
  std::vector<Strategy> strategies;
  int trials = 5;
  LoopConfig loop;
  ScoreConfig score;
  SearchConfig search;
  QueryConfig query;  // measure is taken from each active strategy
  std::vector<std::string> candidate_vars;  // names; empty = all
  std::string method = "auto";  // auto | exact | sampled
  int method_samples = 10000;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 1;
};

// Throws parse_error on malformed or unknown keys; relative paths resolve
// against base_dir. A previously written manifest is itself a valid config.
ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const std::filesystem::path& base_dir);

ExperimentConfig load_experiment_config(const std::filesystem::path& file);

Method resolve_method(const ExperimentConfig& cfg, const BayesNet& truth);

struct ExperimentResult {
  std::filesystem::path out_dir;
  std::vector<std::string> files;  // relative to out_dir, summary last
};

// Runs every (strategy, trial) pair, writes one StepReport CSV per pair,
// a cross-trial summary CSV with per-strategy mean and std rows, and a
// manifest recording the fully resolved configuration. Per-pair streams
// derive from the master seed, so results do not depend on the worker
// count or on which other strategies are configured.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Rebuilds summary.csv from the steps_*.csv files in a directory;
// run_experiment uses this same path, so regeneration is byte-identical.
std::string summary_from_step_files(const std::filesystem::path& dir);

// CSV helpers shared by the experiment writer and the CLI.
std::string format_double(double v);
std::string step_csv_header();
std::string step_csv_row(const StepReport& report, const std::string& strategy,
                         const std::vector<Variable>& schema);

}  // namespace bnactive

#endif
