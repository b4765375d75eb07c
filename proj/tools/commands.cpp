#include "cli.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>

#include "moodsig/cohortdata.hpp"
#include "moodsig/errors.hpp"
#include "moodsig/evaluate.hpp"
#include "moodsig/learn.hpp"
#include "moodsig/pathprep.hpp"
#include "moodsig/serialize.hpp"
#include "moodsig/sigcore.hpp"

namespace moodsig::cli {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// RunConfig

void RunConfig::validate() const {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
    throw InputError("unknown command '" + command + "'");
  if (order < 1) throw InputError("--order must be at least 1");
  if (window < 2) throw InputError("--window must be at least 2");
  if (stride < 1) throw InputError("--stride must be at least 1");
  if (forecast_stride < 1) throw InputError("--forecast-stride must be at least 1");
  if (!(ratio > 0.0 && ratio < 1.0)) throw InputError("--ratio must lie strictly between 0 and 1");
  if (bootstrap_n < 1) throw InputError("--bootstrap-n must be at least 1");
  if (!(l2 >= 0.0)) throw InputError("--l2 must be non-negative");
  if (!(ridge >= 0.0)) throw InputError("--ridge must be non-negative");
  if (!(tolerance > 0.0)) throw InputError("--tolerance must be positive");
  if (features != "signature" && features != "mean_scores")
    throw InputError("--features must be 'signature' or 'mean_scores'");
  if (!parse_category(category)) throw InputError("unknown --category '" + category + "'");
  if (!participants.empty() && participants.size() != kNumCohorts)
    throw InputError("--participants needs three counts (bipolar,borderline,healthy)");
  for (auto o : compare_orders)
    if (o < 1) throw InputError("--compare-orders entries must be at least 1");
}

namespace {

std::string toml_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + '"';
}

std::string toml_list(const std::vector<std::size_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + "]";
}

}  // namespace

std::string RunConfig::to_config_text() const {
  std::string s = "# moodsig " + command + "\n";
  auto kv = [&s](const char* key, const std::string& value) {
    s += fmt::format("{} = {}\n", key, value);
  };
  kv("input", toml_string(input.generic_string()));
  kv("output", toml_string(output.generic_string()));
  kv("model", toml_string(model.generic_string()));
  kv("order", std::to_string(order));
  kv("window", std::to_string(window));
  kv("stride", std::to_string(stride));
  kv("ratio", fmt::format("{}", ratio));
  kv("seed", std::to_string(seed));
  kv("bootstrap-n", std::to_string(bootstrap_n));
  kv("l2", fmt::format("{}", l2));
  kv("tolerance", fmt::format("{}", tolerance));
  kv("max-iterations", std::to_string(max_iterations));
  kv("ridge", fmt::format("{}", ridge));
  kv("forecast-stride", std::to_string(forecast_stride));
  kv("threads", std::to_string(threads));
  kv("stratified", stratified ? "true" : "false");
  kv("pairwise-retrain", pairwise_retrain ? "true" : "false");
  kv("features", toml_string(features));
  kv("participant", toml_string(participant));
  kv("category", toml_string(category));
  if (!participants.empty()) kv("participants", toml_list(participants));
  kv("reports", std::to_string(reports));
  if (!compare_orders.empty()) kv("compare-orders", toml_list(compare_orders));
  return s;
}

// ---------------------------------------------------------------------------
// Shared plumbing

namespace {

fs::path prepare_output(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.output, ec);
  if (ec || !fs::is_directory(cfg.output))
    throw InputError("cannot create output directory '" + cfg.output.string() + "'");
  return cfg.output;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

/// Writes the resolved config and returns its path.
fs::path write_config(const RunConfig& cfg) {
  const auto path = prepare_output(cfg) / (cfg.command + ".config.toml");
  write_text(path, cfg.to_config_text());
  return path;
}

std::vector<ParticipantRecord> load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InputError("--input is required for '" + cfg.command + "'");
  return load_csv(cfg.input);
}

ClassifierConfig classifier_config(const RunConfig& cfg) {
  ClassifierConfig c;
  c.l2 = cfg.l2;
  c.tolerance = cfg.tolerance;
  c.max_iterations = cfg.max_iterations;
  c.seed = cfg.seed;
  return c;
}

FeatureKind feature_kind(const RunConfig& cfg) {
  return cfg.features == "mean_scores" ? FeatureKind::mean_scores : FeatureKind::signature;
}

Split<ParticipantRecord> participant_split(const RunConfig& cfg,
                                           const std::vector<ParticipantRecord>& records) {
  std::vector<Cohort> who;
  who.reserve(records.size());
  for (const auto& r : records) who.push_back(r.cohort);
  return split_by(records, split_indices_stratified(who, cfg.ratio, cfg.seed), cfg.seed);
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

// ---------------------------------------------------------------------------
// Commands

CommandResult cmd_synth(const RunConfig& cfg) {
  auto sc = SynthConfig::study_default(cfg.seed);
  sc.window = cfg.window;
  if (!cfg.participants.empty()) {
    for (std::size_t c = 0; c < kNumCohorts; ++c) sc.cohorts[c].participants = cfg.participants[c];
    sc.target_windows = 0;
  }
  if (cfg.reports > 0) {
    sc.reports_per_participant = cfg.reports;
    sc.reports_spread = 0.0;
    sc.target_windows = 0;
  }
  const auto records = generate_synthetic(sc);
  CommandResult res;
  res.files.push_back(write_config(cfg));
  const auto path = cfg.output / "corpus.csv";
  write_csv(path, records);
  res.files.push_back(path);
  return res;
}

CommandResult cmd_ingest(const RunConfig& cfg) {
  const auto records = load_input(cfg);
  CommandResult res;
  res.files.push_back(write_config(cfg));
  const auto corpus = cfg.output / "corpus.csv";
  write_csv(corpus, records);
  res.files.push_back(corpus);

  json per = json::object();
  std::size_t reports = 0;
  for (Cohort c : kAllCohorts) per[std::string(to_string(c))] = 0;
  for (const auto& r : records) {
    per[std::string(to_string(r.cohort))] = per[std::string(to_string(r.cohort))].get<int>() + 1;
    reports += r.reports.size();
  }
  const json summary{{"participants", records.size()},
                     {"participants_per_cohort", per},
                     {"reports", reports},
                     {"window", cfg.window},
                     {"stride", cfg.stride},
                     {"windows", windows_of(records, cfg.window, cfg.stride).size()}};
  const auto path = cfg.output / "ingest.json";
  save_json(path, summary);
  res.files.push_back(path);
  return res;
}

CommandResult cmd_featurize(const RunConfig& cfg) {
  const auto records = load_input(cfg);
  const auto windows = windows_of(records, cfg.window, cfg.stride);
  CommandResult res;
  res.files.push_back(write_config(cfg));

  std::string text = "participant_id,cohort";
  for (const auto& name : feature_names(kPathDim, cfg.order)) text += "," + name;
  text += '\n';
  for (const auto& w : windows) {
    text += w.participant_id;
    text += ',';
    text += to_string(w.cohort);
    for (double v : featurize(w, cfg.order)) text += "," + num(v);
    text += '\n';
  }
  const auto path = cfg.output / "features.csv";
  write_text(path, text);
  res.files.push_back(path);
  return res;
}

CommandResult cmd_train_classifier(const RunConfig& cfg) {
  const auto records = load_input(cfg);
  const auto windows = windows_of(records, cfg.window, cfg.stride);
  const auto sp = split(windows, cfg.ratio, cfg.seed, cfg.stratified);
  std::vector<Cohort> labels;
  for (const auto& w : sp.train) labels.push_back(w.cohort);
  const auto kind = feature_kind(cfg);
  const std::size_t order = kind == FeatureKind::signature ? cfg.order : 0;
  const auto model = fit_classifier(classifier_features(kind, order, sp.train), labels,
                                    classifier_config(cfg), kind, order);
  CommandResult res;
  res.files.push_back(write_config(cfg));
  const auto path = cfg.output / "classifier.json";
  save_json(path, to_json(model));
  res.files.push_back(path);
  return res;
}

CommandResult cmd_train_predictor(const RunConfig& cfg) {
  const auto records = load_input(cfg);
  const auto people = participant_split(cfg, records);
  std::vector<Regressor> models;
  for (Cohort c : kAllCohorts) {
    const auto ex = cohort_forecast_examples(people.train, c, cfg.window, cfg.forecast_stride);
    models.push_back(fit_cohort_regressor(ex, c, cfg.order, cfg.ridge));
  }
  CommandResult res;
  res.files.push_back(write_config(cfg));
  for (const auto& m : models) {
    const auto path = cfg.output / ("predictor_" + std::string(to_string(m.cohort)) + ".json");
    save_json(path, to_json(m));
    res.files.push_back(path);
  }
  return res;
}

CommandResult cmd_evaluate(const RunConfig& cfg) {
  const auto records = load_input(cfg);
  EvalOptions opt;
  opt.order = cfg.order;
  opt.window = cfg.window;
  opt.stride = cfg.stride;
  opt.ratio = cfg.ratio;
  opt.seed = cfg.seed;
  opt.stratified = cfg.stratified;
  opt.pairwise_retrain = cfg.pairwise_retrain;
  opt.classifier = classifier_config(cfg);
  opt.ridge = cfg.ridge;
  opt.forecast_stride = cfg.forecast_stride;
  opt.compare_orders = cfg.compare_orders;
  const auto report = run_evaluation(records, opt);
  CommandResult res;
  res.files.push_back(write_config(cfg));
  const auto path = cfg.output / "evaluation.json";
  save_json(path, to_json(report));
  res.files.push_back(path);
  return res;
}

CommandResult cmd_bootstrap(const RunConfig& cfg) {
  const auto records = load_input(cfg);
  const auto windows = windows_of(records, cfg.window, cfg.stride);
  const auto sp = split(windows, cfg.ratio, cfg.seed, cfg.stratified);
  const auto result = bootstrap(sp.train, sp.test, cfg.bootstrap_n, cfg.order, cfg.seed,
                                classifier_config(cfg), cfg.threads);
  CommandResult res;
  res.files.push_back(write_config(cfg));
  std::string text = "iteration,accuracy\n";
  for (std::size_t b = 0; b < result.accuracies.size(); ++b)
    text += fmt::format("{},{}\n", b, num(result.accuracies[b]));
  const auto csv = cfg.output / "bootstrap.csv";
  write_text(csv, text);
  res.files.push_back(csv);
  json summary = to_json(result);
  summary["order"] = cfg.order;
  summary["train_windows"] = sp.train.size();
  summary["test_windows"] = sp.test.size();
  const auto path = cfg.output / "bootstrap.json";
  save_json(path, summary);
  res.files.push_back(path);
  return res;
}

CommandResult cmd_triangle(const RunConfig& cfg) {
  const auto records = load_input(cfg);
  std::array<std::size_t, kNumCohorts> per{};
  for (const auto& r : records) ++per[index_of(r.cohort)];
  for (Cohort c : kAllCohorts)
    if (per[index_of(c)] < 2)
      throw InputError("triangle needs at least 2 participants in cohort '" +
                       std::string(to_string(c)) + "'");
  const auto result =
      triangle(records, cfg.order, classifier_config(cfg), cfg.window, cfg.stride, cfg.threads);
  CommandResult res;
  for (const auto& id : result.skipped)
    res.warnings.push_back("participant '" + id + "' has no full window; skipped");
  res.files.push_back(write_config(cfg));
  std::string text = "participant_id,p_bipolar,p_borderline,p_healthy,x,y\n";
  for (const auto& p : result.points)
    text += fmt::format("{},{},{},{},{},{}\n", p.participant_id, num(p.proportions[0]),
                        num(p.proportions[1]), num(p.proportions[2]), num(p.x), num(p.y));
  const auto path = cfg.output / "triangle.csv";
  write_text(path, text);
  res.files.push_back(path);
  return res;
}

CommandResult cmd_trace(const RunConfig& cfg) {
  const auto records = load_input(cfg);
  if (cfg.participant.empty()) throw InputError("--participant is required for 'trace'");
  const auto it = std::find_if(records.begin(), records.end(), [&](const ParticipantRecord& r) {
    return r.participant_id == cfg.participant;
  });
  if (it == records.end()) throw InputError("participant '" + cfg.participant + "' not found");
  const std::size_t category = *parse_category(cfg.category);

  CommandResult res;
  Regressor reg;
  if (!cfg.model.empty()) {
    reg = regressor_from_json(load_json(cfg.model));
    if (reg.cohort != it->cohort)
      res.warnings.push_back("model was trained on cohort '" + std::string(to_string(reg.cohort)) +
                             "' but participant is '" + std::string(to_string(it->cohort)) + "'");
  } else {
    // Fit on the participant's cohort without the participant.
    std::vector<ParticipantRecord> others;
    for (const auto& r : records)
      if (r.cohort == it->cohort && r.participant_id != it->participant_id) others.push_back(r);
    const auto ex = cohort_forecast_examples(others, it->cohort, cfg.window, cfg.forecast_stride);
    reg = fit_cohort_regressor(ex, it->cohort, cfg.order, cfg.ridge);
  }
  const auto rows = prediction_trace(reg, it->reports, category, cfg.window);
  res.files.push_back(write_config(cfg));
  std::string text = "seq,value,correct\n";
  for (const auto& r : rows) text += fmt::format("{},{},{}\n", r.seq, num(r.value), r.correct ? 1 : 0);
  const auto path = cfg.output / "trace.csv";
  write_text(path, text);
  res.files.push_back(path);
  return res;
}

CommandResult run_command(const RunConfig& cfg) {
  cfg.validate();
  using Fn = CommandResult (*)(const RunConfig&);
  static const std::map<std::string, Fn> table{
      {"synth", cmd_synth},
      {"ingest", cmd_ingest},
      {"featurize", cmd_featurize},
      {"train-classifier", cmd_train_classifier},
      {"train-predictor", cmd_train_predictor},
      {"evaluate", cmd_evaluate},
      {"bootstrap", cmd_bootstrap},
      {"triangle", cmd_triangle},
      {"trace", cmd_trace},
  };
  return table.at(cfg.command)(cfg);
}

}  // namespace moodsig::cli
