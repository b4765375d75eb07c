#pragma once

// Evaluation protocols: confusion matrices and per-class rates, pairwise
// ROC-AUC, mean absolute error with the within-one correctness rule,
// bootstrap over the training set, leave-one-participant-out triangle
// coordinates and per-day prediction traces.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "moodsig/cohort.hpp"
#include "moodsig/cohortdata.hpp"
#include "moodsig/learn.hpp"

namespace moodsig {

/// counts[predicted][actual].
struct ConfusionMatrix {
  std::array<std::array<std::size_t, kNumCohorts>, kNumCohorts> counts{};

  std::size_t total() const;
  std::size_t trace() const;
  std::size_t row_total(Cohort predicted) const;
  std::size_t column_total(Cohort actual) const;
};

ConfusionMatrix confusion(std::span<const Cohort> predicted, std::span<const Cohort> actual);

/// A rate whose denominator can be zero; nullopt means undefined.
using Rate = std::optional<double>;

struct ClassMetrics {
  double accuracy = 0.0;
  std::array<Rate, kNumCohorts> sensitivity{};
  std::array<Rate, kNumCohorts> specificity{};
  std::array<Rate, kNumCohorts> ppv{};
};

ClassMetrics class_metrics(const ConfusionMatrix& m);

/// Mann-Whitney AUC: the fraction of (positive, negative) pairs ranked
/// correctly, ties counting one half. Throws InputError unless both classes
/// are present.
double roc_auc(std::span<const double> scores, const std::vector<bool>& positive);

struct PairwiseResult {
  Cohort first = Cohort::bipolar;
  Cohort second = Cohort::borderline;
  std::size_t examples = 0;
  double accuracy = 0.0;
  /// AUC of score(first) - score(second) for "actual == first".
  double auc = 0.0;
};

/// The cohort pairs in the order healthy/bipolar, healthy/borderline,
/// bipolar/borderline.
inline constexpr std::array<std::array<Cohort, 2>, 3> kCohortPairs{{
    {Cohort::healthy, Cohort::bipolar},
    {Cohort::healthy, Cohort::borderline},
    {Cohort::bipolar, Cohort::borderline},
}};

/// Restricts to windows of the two cohorts and decides between them by the
/// larger of their two scores (ties to the lower encoding).
PairwiseResult pairwise_from_predictions(std::span<const ClassPrediction> predictions,
                                         std::span<const Cohort> actual, Cohort first,
                                         Cohort second);
PairwiseResult pairwise_eval(const Classifier& c, std::span<const StreamWindow> test,
                             Cohort first, Cohort second);

/// Pairwise evaluation with a binary logistic model fitted on the training
/// windows of just the two cohorts.
PairwiseResult pairwise_eval_retrained(std::span<const StreamWindow> train,
                                       std::span<const StreamWindow> test, Cohort first,
                                       Cohort second, std::size_t order,
                                       const ClassifierConfig& cfg = {});

double mae(std::span<const double> predicted, std::span<const double> actual);

/// |predicted - actual| <= 1 for scores in 1..7; throws InputError otherwise.
bool correct_within_one(int predicted, int actual);

struct BootstrapResult {
  std::vector<double> accuracies;
  double mean = 0.0;
  /// Sample standard deviation (n - 1 denominator); 0 when B = 1.
  double std = 0.0;
  std::uint64_t seed = 0;
};

/// mean and sample standard deviation of `values`.
std::pair<double, double> mean_and_std(std::span<const double> values);

/// B resamples (with replacement, same size) of the training windows; each
/// refit classifier is scored on the fixed test windows. Resample b draws
/// from substream(seed, b + 1); a resample missing a cohort is redrawn from
/// the same stream, at most `max_redraws` times.
BootstrapResult bootstrap(std::span<const StreamWindow> train, std::span<const StreamWindow> test,
                          std::size_t B, std::size_t order, std::uint64_t seed,
                          const ClassifierConfig& cfg = {}, std::size_t threads = 0,
                          std::size_t max_redraws = 100);

struct TrianglePoint {
  std::string participant_id;
  Cohort cohort = Cohort::bipolar;
  std::size_t windows = 0;
  /// (p_bipolar, p_borderline, p_healthy).
  std::array<double, kNumCohorts> proportions{};
  double x = 0.0;
  double y = 0.0;
};

/// Vertices of the reference triangle, in cohort order.
inline constexpr std::array<std::array<double, 2>, kNumCohorts> kTriangleVertices{{
    {0.0, 0.0},
    {1.0, 0.0},
    {0.5, 0.86602540378443864676},
}};

/// Planar point for barycentric proportions.
std::array<double, 2> barycentric_point(const std::array<double, kNumCohorts>& proportions);

struct TriangleResult {
  std::vector<TrianglePoint> points;
  /// Participants without a single full window.
  std::vector<std::string> skipped;
};

/// Leave-one-participant-out: for every participant, fit on all windows of
/// the others and record the share of their own windows assigned to each
/// cohort.
TriangleResult triangle(const std::vector<ParticipantRecord>& records, std::size_t order,
                        const ClassifierConfig& cfg = {}, std::size_t window = kDefaultWindow,
                        std::size_t stride = kDefaultWindow, std::size_t threads = 0);

struct TraceRow {
  long seq = 0;
  /// Cumulative normalized value of the traced category at this report.
  double value = 0.0;
  int predicted = 0;
  int actual = 0;
  bool correct = false;
};

/// For each report after the first `window`: predict it from the preceding
/// window and flag correct_within_one on `category`. The value column uses the
/// same per-step increment as normalize() accumulated over the whole stream.
std::vector<TraceRow> prediction_trace(const Regressor& r, std::span<const MoodReport> reports,
                                       std::size_t category, std::size_t window = kDefaultWindow);

/// Next-report accuracy of one predictor on a set of forecast examples.
struct ForecastScores {
  std::array<double, kNumCategories> mae{};
  std::array<double, kNumCategories> correct_rate{};
  /// Mean of correct_within_one over every (example, category) pair.
  double overall_correct_rate = 0.0;
};

ForecastScores score_forecasts(std::span<const Scores> predicted, std::span<const Scores> actual);

struct CohortForecast {
  Cohort cohort = Cohort::bipolar;
  std::size_t train_examples = 0;
  std::size_t test_examples = 0;
  ForecastScores model;
  ForecastScores persistence;
};

struct EvalOptions {
  std::size_t order = 2;
  std::size_t window = kDefaultWindow;
  std::size_t stride = kDefaultWindow;
  double ratio = 0.7;
  std::uint64_t seed = 0;
  bool stratified = false;
  bool pairwise_retrain = false;
  ClassifierConfig classifier;
  double ridge = 1.0;
  /// Stride between consecutive forecast windows of one participant.
  std::size_t forecast_stride = 1;
  /// Extra signature orders to score for the order comparison table.
  std::vector<std::size_t> compare_orders;
};

struct OrderAccuracy {
  std::size_t order = 0;
  double accuracy = 0.0;
};

struct EvaluationReport {
  std::size_t windows = 0;
  std::size_t train_windows = 0;
  std::size_t test_windows = 0;
  ConfusionMatrix confusion;
  ClassMetrics metrics;
  ConfusionMatrix baseline_confusion;
  ClassMetrics baseline_metrics;
  std::vector<PairwiseResult> pairwise;
  std::vector<OrderAccuracy> order_accuracy;
  std::vector<CohortForecast> forecasts;
};

/// Classification on a window-level split (signature model and mean-score
/// baseline) plus per-cohort next-report prediction on a participant-level
/// split (ridge model and persistence baseline).
EvaluationReport run_evaluation(const std::vector<ParticipantRecord>& records,
                                const EvalOptions& opt);

/// Forecast examples of a set of records, restricted to one cohort.
std::vector<ForecastExample> cohort_forecast_examples(const std::vector<ParticipantRecord>& records,
                                                      Cohort cohort, std::size_t window,
                                                      std::size_t stride);

/// Fits the per-cohort next-report regressor on forecast examples.
Regressor fit_cohort_regressor(std::span<const ForecastExample> examples, Cohort cohort,
                               std::size_t order, double ridge);

nlohmann::json to_json(const ConfusionMatrix& m);
nlohmann::json to_json(const ClassMetrics& m);
nlohmann::json to_json(const PairwiseResult& p);
nlohmann::json to_json(const BootstrapResult& b);
nlohmann::json to_json(const ForecastScores& f);
nlohmann::json to_json(const EvaluationReport& r);

}  // namespace moodsig
