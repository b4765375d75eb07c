#include "moodsig/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "moodsig/errors.hpp"
#include "moodsig/parallel.hpp"
#include "moodsig/sigcore.hpp"

namespace moodsig {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Confusion matrix and rates

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (const auto& row : counts)
    for (auto v : row) t += v;
  return t;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (std::size_t c = 0; c < kNumCohorts; ++c) t += counts[c][c];
  return t;
}

std::size_t ConfusionMatrix::row_total(Cohort predicted) const {
  const auto& row = counts[index_of(predicted)];
  return std::accumulate(row.begin(), row.end(), std::size_t{0});
}

std::size_t ConfusionMatrix::column_total(Cohort actual) const {
  std::size_t t = 0;
  for (const auto& row : counts) t += row[index_of(actual)];
  return t;
}

ConfusionMatrix confusion(std::span<const Cohort> predicted, std::span<const Cohort> actual) {
  if (predicted.size() != actual.size())
    throw ShapeError("confusion: predictions and labels differ in length");
  if (predicted.empty()) throw InputError("confusion: no examples");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    ++m.counts[index_of(predicted[i])][index_of(actual[i])];
  return m;
}

namespace {

Rate ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ClassMetrics class_metrics(const ConfusionMatrix& m) {
  const std::size_t total = m.total();
  if (total == 0) throw InputError("class_metrics: empty confusion matrix");
  ClassMetrics out;
  out.accuracy = static_cast<double>(m.trace()) / static_cast<double>(total);
  for (Cohort c : kAllCohorts) {
    const auto k = index_of(c);
    const std::size_t tp = m.counts[k][k];
    const std::size_t predicted = m.row_total(c);
    const std::size_t actual = m.column_total(c);
    const std::size_t fp = predicted - tp;
    const std::size_t tn = total - predicted - actual + tp;
    out.sensitivity[k] = ratio(tp, actual);
    out.ppv[k] = ratio(tp, predicted);
    out.specificity[k] = ratio(tn, tn + fp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ROC

double roc_auc(std::span<const double> scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size())
    throw ShapeError("roc_auc: scores and labels differ in length");
  const std::size_t n = scores.size();
  const auto n_pos = static_cast<std::size_t>(std::count(positive.begin(), positive.end(), true));
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw InputError("roc_auc: both classes must be present");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // sum of (1-based, tie-averaged) ranks of the positives, doubled to stay integral
  std::size_t rank_sum_x2 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    std::size_t pos_in_group = 0;
    for (std::size_t k = i; k < j; ++k) pos_in_group += positive[order[k]] ? 1 : 0;
    rank_sum_x2 += pos_in_group * (i + 1 + j);  // average rank (i+1+j)/2
    i = j;
  }
  const double u = (static_cast<double>(rank_sum_x2) -
                    static_cast<double>(n_pos) * static_cast<double>(n_pos + 1)) /
                   2.0;
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

PairwiseResult pairwise_from_predictions(std::span<const ClassPrediction> predictions,
                                         std::span<const Cohort> actual, Cohort first,
                                         Cohort second) {
  if (predictions.size() != actual.size())
    throw ShapeError("pairwise: predictions and labels differ in length");
  PairwiseResult out{first, second, 0, 0.0, 0.0};
  const Cohort low = index_of(first) < index_of(second) ? first : second;
  std::vector<double> diff;
  std::vector<bool> is_first;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] != first && actual[i] != second) continue;
    const double s1 = predictions[i].scores[index_of(first)];
    const double s2 = predictions[i].scores[index_of(second)];
    const Cohort pick = s1 > s2 ? first : s2 > s1 ? second : low;
    correct += pick == actual[i] ? 1 : 0;
    diff.push_back(s1 - s2);
    is_first.push_back(actual[i] == first);
  }
  const bool has_first = std::find(is_first.begin(), is_first.end(), true) != is_first.end();
  const bool has_second = std::find(is_first.begin(), is_first.end(), false) != is_first.end();
  if (!has_first || !has_second)
    throw InputError("pairwise: test set lacks cohort '" +
                     std::string(to_string(has_first ? second : first)) + "'");
  out.examples = diff.size();
  out.accuracy = static_cast<double>(correct) / static_cast<double>(diff.size());
  out.auc = roc_auc(diff, is_first);
  return out;
}

PairwiseResult pairwise_eval(const Classifier& c, std::span<const StreamWindow> test,
                             Cohort first, Cohort second) {
  std::vector<ClassPrediction> preds;
  std::vector<Cohort> actual;
  for (const auto& w : test) {
    if (w.cohort != first && w.cohort != second) continue;
    preds.push_back(predict_class(c, classifier_features(c, w)));
    actual.push_back(w.cohort);
  }
  return pairwise_from_predictions(preds, actual, first, second);
}

PairwiseResult pairwise_eval_retrained(std::span<const StreamWindow> train,
                                       std::span<const StreamWindow> test, Cohort first,
                                       Cohort second, std::size_t order,
                                       const ClassifierConfig& cfg) {
  auto restrict = [&](std::span<const StreamWindow> ws) {
    std::vector<StreamWindow> out;
    for (const auto& w : ws)
      if (w.cohort == first || w.cohort == second) out.push_back(w);
    return out;
  };
  const auto tr = restrict(train);
  const auto te = restrict(test);
  Eigen::VectorXd y(static_cast<Eigen::Index>(tr.size()));
  bool seen_first = false;
  bool seen_second = false;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    y[static_cast<Eigen::Index>(i)] = tr[i].cohort == first ? 1.0 : 0.0;
    (tr[i].cohort == first ? seen_first : seen_second) = true;
  }
  if (!seen_first || !seen_second)
    throw InputError("pairwise: training set lacks cohort '" +
                     std::string(to_string(seen_first ? second : first)) + "'");

  const Eigen::MatrixXd X = feature_matrix(tr, order);
  const auto scaler = ScalerParams::fit(X);
  const auto model = fit_logistic(scaler.transform(X), y, cfg);
  const Eigen::MatrixXd Xt = scaler.transform(feature_matrix(te, order));

  std::vector<ClassPrediction> preds(te.size());
  std::vector<Cohort> actual(te.size());
  for (std::size_t i = 0; i < te.size(); ++i) {
    const double p = sigmoid(Xt.row(static_cast<Eigen::Index>(i)).dot(model.weights) + model.bias);
    preds[i].scores[index_of(first)] = p;
    preds[i].scores[index_of(second)] = 1.0 - p;
    actual[i] = te[i].cohort;
  }
  return pairwise_from_predictions(preds, actual, first, second);
}

// ---------------------------------------------------------------------------
// Regression scores

double mae(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) throw ShapeError("mae: lengths differ");
  if (predicted.empty()) throw InputError("mae: no values");
  double s = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) s += std::abs(predicted[i] - actual[i]);
  return s / static_cast<double>(predicted.size());
}

bool correct_within_one(int predicted, int actual) {
  auto in_range = [](int v) { return v >= kMinScore && v <= kMaxScore; };
  if (!in_range(predicted) || !in_range(actual))
    throw InputError("correct_within_one: scores must lie in 1..7");
  return std::abs(predicted - actual) <= 1;
}

ForecastScores score_forecasts(std::span<const Scores> predicted, std::span<const Scores> actual) {
  if (predicted.size() != actual.size()) throw ShapeError("score_forecasts: lengths differ");
  if (predicted.empty()) throw InputError("score_forecasts: no examples");
  ForecastScores out;
  std::size_t correct_all = 0;
  const double n = static_cast<double>(predicted.size());
  for (std::size_t c = 0; c < kNumCategories; ++c) {
    std::vector<double> p(predicted.size());
    std::vector<double> a(predicted.size());
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      p[i] = predicted[i][c];
      a[i] = actual[i][c];
      correct += correct_within_one(predicted[i][c], actual[i][c]) ? 1 : 0;
    }
    out.mae[c] = mae(p, a);
    out.correct_rate[c] = static_cast<double>(correct) / n;
    correct_all += correct;
  }
  out.overall_correct_rate =
      static_cast<double>(correct_all) / (n * static_cast<double>(kNumCategories));
  return out;
}

// ---------------------------------------------------------------------------
// Bootstrap

std::pair<double, double> mean_and_std(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

namespace {

std::vector<Cohort> labels_of(std::span<const StreamWindow> ws) {
  std::vector<Cohort> out;
  out.reserve(ws.size());
  for (const auto& w : ws) out.push_back(w.cohort);
  return out;
}

double accuracy_of(const Classifier& c, const Eigen::MatrixXd& X, std::span<const Cohort> labels) {
  const auto preds = predict_classes(c, X);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) correct += preds[i].label == labels[i] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(preds.size());
}

bool all_cohorts_present(std::span<const Cohort> labels) {
  std::array<bool, kNumCohorts> seen{};
  for (Cohort c : labels) seen[index_of(c)] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

BootstrapResult bootstrap(std::span<const StreamWindow> train, std::span<const StreamWindow> test,
                          std::size_t B, std::size_t order, std::uint64_t seed,
                          const ClassifierConfig& cfg, std::size_t threads,
                          std::size_t max_redraws) {
  if (B < 1) throw InputError("bootstrap: B must be at least 1");
  if (train.empty() || test.empty()) throw InputError("bootstrap: empty train or test set");
  const Eigen::MatrixXd X = feature_matrix(train, order);
  const Eigen::MatrixXd Xt = feature_matrix(test, order);
  const auto y = labels_of(train);
  const auto yt = labels_of(test);
  const std::size_t n = train.size();

  BootstrapResult out;
  out.seed = seed;
  out.accuracies.assign(B, 0.0);
  parallel_for(B, threads, [&](std::size_t b) {
    auto rng = substream(seed, b + 1);
    std::vector<std::size_t> idx(n);
    std::vector<Cohort> yb(n);
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt > max_redraws)
        throw InputError("bootstrap: resample kept missing a cohort; training set too small");
      for (std::size_t i = 0; i < n; ++i) {
        idx[i] = uniform_index(rng, n);
        yb[i] = y[idx[i]];
      }
      if (all_cohorts_present(yb)) break;
    }
    Eigen::MatrixXd Xb(static_cast<Eigen::Index>(n), X.cols());
    for (std::size_t i = 0; i < n; ++i)
      Xb.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(idx[i]));
    const auto model = fit_classifier(Xb, yb, cfg, FeatureKind::signature, order);
    out.accuracies[b] = accuracy_of(model, Xt, yt);
  });
  std::tie(out.mean, out.std) = mean_and_std(out.accuracies);
  return out;
}

// ---------------------------------------------------------------------------
// Leave-one-participant-out triangle

std::array<double, 2> barycentric_point(const std::array<double, kNumCohorts>& p) {
  std::array<double, 2> xy{0.0, 0.0};
  for (std::size_t c = 0; c < kNumCohorts; ++c) {
    xy[0] += p[c] * kTriangleVertices[c][0];
    xy[1] += p[c] * kTriangleVertices[c][1];
  }
  return xy;
}

TriangleResult triangle(const std::vector<ParticipantRecord>& records, std::size_t order,
                        const ClassifierConfig& cfg, std::size_t window, std::size_t stride,
                        std::size_t threads) {
  std::vector<StreamWindow> all;
  std::vector<std::size_t> owner;
  TriangleResult out;
  std::vector<std::size_t> included;
  for (std::size_t p = 0; p < records.size(); ++p) {
    const auto& rec = records[p];
    auto ws = window_streams(rec.reports, rec.participant_id, rec.cohort, window, stride);
    if (ws.empty()) {
      out.skipped.push_back(rec.participant_id);
      continue;
    }
    included.push_back(p);
    for (auto& w : ws) {
      all.push_back(std::move(w));
      owner.push_back(p);
    }
  }
  const Eigen::MatrixXd X = feature_matrix(all, order);
  const auto labels = labels_of(all);

  out.points.resize(included.size());
  parallel_for(included.size(), threads, [&](std::size_t k) {
    const std::size_t p = included[k];
    std::vector<Eigen::Index> keep;
    std::vector<Eigen::Index> held;
    for (std::size_t i = 0; i < all.size(); ++i)
      (owner[i] == p ? held : keep).push_back(static_cast<Eigen::Index>(i));

    Eigen::MatrixXd Xk(static_cast<Eigen::Index>(keep.size()), X.cols());
    std::vector<Cohort> yk(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      Xk.row(static_cast<Eigen::Index>(i)) = X.row(keep[i]);
      yk[i] = labels[static_cast<std::size_t>(keep[i])];
    }
    const auto model = fit_classifier(Xk, yk, cfg, FeatureKind::signature, order);

    std::array<std::size_t, kNumCohorts> counts{};
    for (auto i : held) {
      const Eigen::VectorXd row = X.row(i).transpose();
      ++counts[index_of(predict_class(model, std::span<const double>(row.data(), row.size())).label)];
    }
    TrianglePoint& pt = out.points[k];
    pt.participant_id = records[p].participant_id;
    pt.cohort = records[p].cohort;
    pt.windows = held.size();
    for (std::size_t c = 0; c < kNumCohorts; ++c)
      pt.proportions[c] = static_cast<double>(counts[c]) / static_cast<double>(held.size());
    const auto xy = barycentric_point(pt.proportions);
    pt.x = xy[0];
    pt.y = xy[1];
  });
  return out;
}

// ---------------------------------------------------------------------------
// Prediction traces

std::vector<TraceRow> prediction_trace(const Regressor& r, std::span<const MoodReport> reports,
                                       std::size_t category, std::size_t window) {
  if (category >= kNumCategories) throw InputError("prediction_trace: unknown category");
  if (window < 2) throw InputError("prediction_trace: window must be at least 2");
  if (reports.size() <= window)
    throw InputError("prediction_trace: participant needs more than " + std::to_string(window) +
                     " reports");
  std::vector<TraceRow> out;
  out.reserve(reports.size() - window);
  double value = 0.0;
  for (std::size_t t = 1; t < window; ++t)
    value += normalized_step(reports[t].scores[category], window);
  StreamWindow w;
  for (std::size_t t = window; t < reports.size(); ++t) {
    value += normalized_step(reports[t].scores[category], window);
    w.reports.assign(reports.begin() + static_cast<std::ptrdiff_t>(t - window),
                     reports.begin() + static_cast<std::ptrdiff_t>(t));
    const auto pred = predict_mood(r, featurize(w, r.order));
    TraceRow row;
    row.seq = reports[t].seq;
    row.value = value;
    row.predicted = pred[category];
    row.actual = reports[t].scores[category];
    row.correct = correct_within_one(row.predicted, row.actual);
    out.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Full protocol

std::vector<ForecastExample> cohort_forecast_examples(const std::vector<ParticipantRecord>& records,
                                                      Cohort cohort, std::size_t window,
                                                      std::size_t stride) {
  std::vector<ForecastExample> out;
  for (const auto& rec : records) {
    if (rec.cohort != cohort) continue;
    auto ex = forecast_examples(rec.reports, rec.participant_id, rec.cohort, window, stride);
    out.insert(out.end(), std::make_move_iterator(ex.begin()), std::make_move_iterator(ex.end()));
  }
  return out;
}

Regressor fit_cohort_regressor(std::span<const ForecastExample> examples, Cohort cohort,
                               std::size_t order, double ridge) {
  if (examples.empty())
    throw InputError("no forecast examples for cohort '" + std::string(to_string(cohort)) + "'");
  const auto p = static_cast<Eigen::Index>(tensor_dim(kPathDim, order) - 1);
  Eigen::MatrixXd X(static_cast<Eigen::Index>(examples.size()), p);
  Eigen::MatrixXd Y(static_cast<Eigen::Index>(examples.size()),
                    static_cast<Eigen::Index>(kNumCategories));
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const auto f = featurize(examples[i].window, order);
    X.row(row) = Eigen::Map<const Eigen::RowVectorXd>(f.data(), p);
    for (std::size_t c = 0; c < kNumCategories; ++c)
      Y(row, static_cast<Eigen::Index>(c)) = examples[i].next[c];
  }
  return fit_regressor(X, Y, ridge, cohort, order);
}

EvaluationReport run_evaluation(const std::vector<ParticipantRecord>& records,
                                const EvalOptions& opt) {
  EvaluationReport rep;
  const auto windows = windows_of(records, opt.window, opt.stride);
  const auto sp = split(windows, opt.ratio, opt.seed, opt.stratified);
  rep.windows = windows.size();
  rep.train_windows = sp.train.size();
  rep.test_windows = sp.test.size();
  const auto ytr = labels_of(sp.train);
  const auto yte = labels_of(sp.test);

  auto classify = [&](FeatureKind kind, std::size_t order, ConfusionMatrix& cm,
                      std::vector<ClassPrediction>* keep) {
    const auto model =
        fit_classifier(classifier_features(kind, order, sp.train), ytr, opt.classifier, kind, order);
    const auto preds = predict_classes(model, classifier_features(kind, order, sp.test));
    std::vector<Cohort> labels(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) labels[i] = preds[i].label;
    cm = confusion(labels, yte);
    if (keep) *keep = preds;
  };

  std::vector<ClassPrediction> preds;
  classify(FeatureKind::signature, opt.order, rep.confusion, &preds);
  rep.metrics = class_metrics(rep.confusion);
  classify(FeatureKind::mean_scores, 0, rep.baseline_confusion, nullptr);
  rep.baseline_metrics = class_metrics(rep.baseline_confusion);

  for (const auto& [a, b] : kCohortPairs)
    rep.pairwise.push_back(opt.pairwise_retrain
                               ? pairwise_eval_retrained(sp.train, sp.test, a, b, opt.order,
                                                         opt.classifier)
                               : pairwise_from_predictions(preds, yte, a, b));

  rep.order_accuracy.push_back({opt.order, rep.metrics.accuracy});
  for (std::size_t o : opt.compare_orders) {
    if (o == opt.order) continue;
    ConfusionMatrix cm;
    classify(FeatureKind::signature, o, cm, nullptr);
    rep.order_accuracy.push_back({o, class_metrics(cm).accuracy});
  }
  std::sort(rep.order_accuracy.begin(), rep.order_accuracy.end(),
            [](const OrderAccuracy& a, const OrderAccuracy& b) { return a.order < b.order; });

  std::vector<Cohort> who;
  for (const auto& r : records) who.push_back(r.cohort);
  const auto people = split_by(records, split_indices_stratified(who, opt.ratio, opt.seed), opt.seed);
  for (Cohort c : kAllCohorts) {
    const auto train_ex = cohort_forecast_examples(people.train, c, opt.window, opt.forecast_stride);
    const auto test_ex = cohort_forecast_examples(people.test, c, opt.window, opt.forecast_stride);
    if (test_ex.empty())
      throw InputError("no held-out forecast examples for cohort '" + std::string(to_string(c)) +
                       "'");
    const auto reg = fit_cohort_regressor(train_ex, c, opt.order, opt.ridge);
    std::vector<Scores> model_pred;
    std::vector<Scores> persist_pred;
    std::vector<Scores> actual;
    for (const auto& ex : test_ex) {
      model_pred.push_back(predict_mood(reg, featurize(ex.window, opt.order)));
      persist_pred.push_back(persistence_predict(ex.window));
      actual.push_back(ex.next);
    }
    rep.forecasts.push_back(CohortForecast{c, train_ex.size(), test_ex.size(),
                                           score_forecasts(model_pred, actual),
                                           score_forecasts(persist_pred, actual)});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json rate_json(const Rate& r) { return r ? json(*r) : json("undefined"); }

json per_cohort(const std::array<Rate, kNumCohorts>& v) {
  json out = json::object();
  for (Cohort c : kAllCohorts) out[std::string(to_string(c))] = rate_json(v[index_of(c)]);
  return out;
}

json per_category(const std::array<double, kNumCategories>& v) {
  json out = json::object();
  for (std::size_t c = 0; c < kNumCategories; ++c) out[std::string(kCategoryNames[c])] = v[c];
  return out;
}

}  // namespace

json to_json(const ConfusionMatrix& m) {
  json classes = json::array();
  for (Cohort c : kAllCohorts) classes.push_back(std::string(to_string(c)));
  json rows = json::array();
  for (const auto& r : m.counts) rows.push_back(r);
  return {{"classes", classes}, {"rows", "predicted"}, {"columns", "actual"}, {"counts", rows},
          {"total", m.total()}};
}

json to_json(const ClassMetrics& m) {
  return {{"accuracy", m.accuracy},
          {"sensitivity", per_cohort(m.sensitivity)},
          {"specificity", per_cohort(m.specificity)},
          {"ppv", per_cohort(m.ppv)}};
}

json to_json(const PairwiseResult& p) {
  return {{"pair", {std::string(to_string(p.first)), std::string(to_string(p.second))}},
          {"examples", p.examples},
          {"accuracy", p.accuracy},
          {"auc", p.auc}};
}

json to_json(const BootstrapResult& b) {
  return {{"B", b.accuracies.size()}, {"mean", b.mean}, {"std", b.std}, {"seed", b.seed}};
}

json to_json(const ForecastScores& f) {
  return {{"mae", per_category(f.mae)},
          {"correct_rate", per_category(f.correct_rate)},
          {"overall_correct_rate", f.overall_correct_rate}};
}

json to_json(const EvaluationReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairwise) pairs.push_back(to_json(p));
  json orders = json::array();
  for (const auto& o : r.order_accuracy) orders.push_back({{"order", o.order}, {"accuracy", o.accuracy}});
  json forecasts = json::object();
  for (const auto& f : r.forecasts)
    forecasts[std::string(to_string(f.cohort))] = {{"train_examples", f.train_examples},
                                                   {"test_examples", f.test_examples},
                                                   {"model", to_json(f.model)},
                                                   {"persistence", to_json(f.persistence)}};
  return {
      {"windows", {{"total", r.windows}, {"train", r.train_windows}, {"test", r.test_windows}}},
      {"classification",
       {{"signature", {{"confusion", to_json(r.confusion)}, {"metrics", to_json(r.metrics)}}},
        {"mean_baseline",
         {{"confusion", to_json(r.baseline_confusion)}, {"metrics", to_json(r.baseline_metrics)}}},
        {"pairwise", pairs},
        {"orders", orders}}},
      {"prediction", forecasts},
  };
}

}  // namespace moodsig
