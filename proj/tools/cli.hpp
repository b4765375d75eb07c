#pragma once

// Batch front end: one function per subcommand plus argument parsing.
// Every command writes into the output directory and drops its resolved
// configuration there as <command>.config.toml.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace moodsig::cli {

struct RunConfig {
  std::string command;
  std::filesystem::path input;
  std::filesystem::path output = ".";
  std::filesystem::path model;
  std::filesystem::path config;
  std::size_t order = 2;
  std::size_t window = 20;
  std::size_t stride = 20;
  double ratio = 0.7;
  std::uint64_t seed = 20170601;
  std::size_t bootstrap_n = 100;
  double l2 = 1.0;
  double tolerance = 1e-6;
  std::size_t max_iterations = 10000;
  double ridge = 1.0;
  std::size_t forecast_stride = 1;
  std::size_t threads = 0;
  bool stratified = false;
  bool pairwise_retrain = false;
  std::string features = "signature";
  std::string participant;
  std::string category = "anxious";
  /// synth: participants per cohort (bipolar, borderline, healthy); empty keeps the study counts.
  std::vector<std::size_t> participants;
  /// synth: fixed reports per participant; 0 keeps the study-sized counts.
  std::size_t reports = 0;
  std::vector<std::size_t> compare_orders;

  /// Throws InputError on out-of-range values.
  void validate() const;
  /// TOML text accepted back by --config.
  std::string to_config_text() const;
};

inline const std::vector<std::string> kCommands{
    "synth", "ingest", "featurize", "train-classifier", "train-predictor",
    "evaluate", "bootstrap", "triangle", "trace"};

struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

CommandResult cmd_synth(const RunConfig& cfg);
CommandResult cmd_ingest(const RunConfig& cfg);
CommandResult cmd_featurize(const RunConfig& cfg);
CommandResult cmd_train_classifier(const RunConfig& cfg);
CommandResult cmd_train_predictor(const RunConfig& cfg);
CommandResult cmd_evaluate(const RunConfig& cfg);
CommandResult cmd_bootstrap(const RunConfig& cfg);
CommandResult cmd_triangle(const RunConfig& cfg);
CommandResult cmd_trace(const RunConfig& cfg);

/// Dispatches on cfg.command after validating it.
CommandResult run_command(const RunConfig& cfg);

/// Full entry point: parse, run, report. Returns the process exit status
/// (0 success, 1 runtime failure, 2 usage error); failures print exactly one
/// "moodsig: error: ..." line to `err`.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moodsig::cli
