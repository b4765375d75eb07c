#include <algorithm>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"

namespace moodsig::cli {

namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

void add_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--input", cfg.input, "Input corpus CSV");
  app.add_option("--output", cfg.output, "Output directory")->capture_default_str();
  app.add_option("--model", cfg.model, "Regressor JSON for trace (default: fit leave-one-out)");
  app.add_option("--order", cfg.order, "Signature truncation order")->capture_default_str();
  app.add_option("--window", cfg.window, "Reports per window")->capture_default_str();
  app.add_option("--stride", cfg.stride, "Step between classification windows")
      ->capture_default_str();
  app.add_option("--ratio", cfg.ratio, "Training fraction of the split")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  app.add_option("--bootstrap-n", cfg.bootstrap_n, "Bootstrap resamples")->capture_default_str();
  app.add_option("--l2", cfg.l2, "Logistic L2 strength")->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "Optimizer gradient tolerance")
      ->capture_default_str();
  app.add_option("--max-iterations", cfg.max_iterations, "Optimizer iteration cap")
      ->capture_default_str();
  app.add_option("--ridge", cfg.ridge, "Ridge strength of the mood predictor")
      ->capture_default_str();
  app.add_option("--forecast-stride", cfg.forecast_stride, "Step between forecast windows")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_flag("--stratified", cfg.stratified, "Stratify the window split by cohort");
  app.add_flag("--pairwise-retrain", cfg.pairwise_retrain,
               "Fit binary models for the pairwise tables");
  app.add_option("--features", cfg.features, "Classifier features: signature or mean_scores")
      ->capture_default_str();
  app.add_option("--participant", cfg.participant, "Participant id for trace");
  app.add_option("--category", cfg.category, "Mood category for trace")->capture_default_str();
  app.add_option("--participants", cfg.participants,
                 "synth: participants per cohort as bipolar,borderline,healthy")
      ->delimiter(',')
      ->expected(0, 3);
  app.add_option("--reports", cfg.reports, "synth: fixed reports per participant");
  app.add_option("--compare-orders", cfg.compare_orders,
                 "evaluate: extra orders for the order table")
      ->delimiter(',')
      ->expected(0, 16);
}

}  // namespace

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signature features for ordinal mood report streams", "moodsig"};
  app.set_config("--config", "", "TOML config file; flags override its values");
  app.require_subcommand(1, 1);
  RunConfig cfg;
  add_options(app, cfg);
  app.add_subcommand("synth", "Generate a seeded synthetic corpus")->fallthrough();
  app.add_subcommand("ingest", "Validate a report CSV and write it in canonical order")
      ->fallthrough();
  app.add_subcommand("featurize", "Write signature features of every window")->fallthrough();
  app.add_subcommand("train-classifier", "Fit the cohort classifier on the training split")
      ->fallthrough();
  app.add_subcommand("train-predictor", "Fit one next-report predictor per cohort")
      ->fallthrough();
  app.add_subcommand("evaluate", "Run the classification and forecasting protocol")
      ->fallthrough();
  app.add_subcommand("bootstrap", "Bootstrap the training set and score each refit")
      ->fallthrough();
  app.add_subcommand("triangle", "Leave-one-participant-out triangle coordinates")
      ->fallthrough();
  app.add_subcommand("trace", "Per-report prediction correctness for one participant")
      ->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "moodsig: error: usage: " << one_line(e.what()) << '\n';
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const auto res = run_command(cfg);
    for (const auto& w : res.warnings) err << "moodsig: warning: " << one_line(w) << '\n';
    for (const auto& f : res.files) out << f.generic_string() << '\n';
  } catch (const std::exception& e) {
    err << "moodsig: error: " << cfg.command << ": " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}

}  // namespace moodsig::cli
