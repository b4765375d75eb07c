#include "moodsig/learn.hpp"

#include <algorithm>
#include <string>

#include "moodsig/errors.hpp"
#include "moodsig/sigcore.hpp"

namespace moodsig {

namespace {

void require_finite(const Eigen::MatrixXd& X, const char* what) {
  if (!X.allFinite()) throw InputError(std::string(what) + " contain NaN or infinite values");
}

}  // namespace

// ---------------------------------------------------------------------------
// Scaler

ScalerParams ScalerParams::fit(const Eigen::MatrixXd& X) {
  if (X.rows() == 0) throw InputError("cannot fit a scaler on zero rows");
  ScalerParams s;
  const double n = static_cast<double>(X.rows());
  s.mean = X.colwise().sum().transpose() / n;
  s.std.resize(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double var = (X.col(j).array() - s.mean[j]).square().sum() / n;
    const double sd = std::sqrt(var);
    s.std[j] = sd > 1e-12 * std::max(1.0, std::abs(s.mean[j])) ? sd : 1.0;
  }
  return s;
}

Eigen::MatrixXd ScalerParams::transform(const Eigen::MatrixXd& X) const {
  if (X.cols() != dim()) throw ShapeError("scaler: feature length mismatch");
  return (X.rowwise() - mean.transpose()).array().rowwise() / std.transpose().array();
}

Eigen::VectorXd ScalerParams::transform(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != dim())
    throw ShapeError("feature length " + std::to_string(x.size()) + " does not match model (" +
                     std::to_string(dim()) + ")");
  Eigen::Map<const Eigen::VectorXd> v(x.data(), dim());
  return ((v - mean).array() / std.array()).matrix();
}

// ---------------------------------------------------------------------------
// Logistic regression

double logistic_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& w, double b, double l2) {
  const double n = static_cast<double>(X.rows());
  const Eigen::VectorXd z = (X * w).array() + b;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double zi = z[i];
    const double softplus = zi > 0 ? zi + std::log1p(std::exp(-zi)) : std::log1p(std::exp(zi));
    loss += softplus - y[i] * zi;
  }
  return loss / n + 0.5 * l2 / n * w.squaredNorm();
}

Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& w, double b, double l2) {
  const double n = static_cast<double>(X.rows());
  Eigen::VectorXd r = (X * w).array() + b;
  for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = sigmoid(r[i]) - y[i];
  Eigen::VectorXd g(w.size() + 1);
  g.head(w.size()) = (X.transpose() * r) / n + (l2 / n) * w;
  g[w.size()] = r.sum() / n;
  return g;
}

namespace {

// Largest eigenvalue of [X 1]^T [X 1] / N by power iteration.
double design_curvature(const Eigen::MatrixXd& X) {
  const Eigen::Index p = X.cols();
  const double n = static_cast<double>(X.rows());
  Eigen::VectorXd v = Eigen::VectorXd::Ones(p + 1).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    const Eigen::VectorXd xv = X * v.head(p) + Eigen::VectorXd::Constant(X.rows(), v[p]);
    Eigen::VectorXd next(p + 1);
    next.head(p) = X.transpose() * xv / n;
    next[p] = xv.sum() / n;
    lambda = v.dot(next);
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    v = next / norm;
  }
  return lambda;
}

}  // namespace

LogisticModel fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const ClassifierConfig& cfg) {
  const Eigen::Index p = X.cols();
  const double n = static_cast<double>(X.rows());
  // power iteration underestimates; the margin keeps the step stable
  const double lipschitz = 0.25 * 1.25 * design_curvature(X) + cfg.l2 / n;
  const double step = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(p + 1);
  Eigen::VectorXd look = x;
  double t = 1.0;
  LogisticModel model;
  model.iterations = cfg.max_iterations;

  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    const Eigen::VectorXd g = logistic_gradient(X, y, look.head(p), look[p], cfg.l2);
    if (g.norm() <= cfg.tolerance) {
      x = look;
      model.iterations = it;
      break;
    }
    const Eigen::VectorXd next = look - step * g;
    if (g.dot(next - x) > 0.0) {
      t = 1.0;
      look = next;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      look = next + ((t - 1.0) / t_next) * (next - x);
      t = t_next;
    }
    x = next;
  }

  model.weights = x.head(p);
  model.bias = x[p];
  model.gradient_norm = logistic_gradient(X, y, model.weights, model.bias, cfg.l2).norm();
  return model;
}

// ---------------------------------------------------------------------------
// Classifier

Classifier fit_classifier(const Eigen::MatrixXd& X, std::span<const Cohort> labels,
                          const ClassifierConfig& cfg, FeatureKind kind, std::size_t order) {
  if (static_cast<std::size_t>(X.rows()) != labels.size())
    throw ShapeError("fit_classifier: feature rows and labels differ in count");
  require_finite(X, "features");
  for (Cohort c : kAllCohorts)
    if (std::find(labels.begin(), labels.end(), c) == labels.end())
      throw InputError("fit_classifier: no training examples for cohort '" +
                       std::string(to_string(c)) + "'");

  Classifier out;
  out.kind = kind;
  out.order = order;
  out.config = cfg;
  out.scaler = ScalerParams::fit(X);
  const Eigen::MatrixXd Xs = out.scaler.transform(X);
  out.weights.resize(static_cast<Eigen::Index>(kNumCohorts), X.cols());
  for (Cohort c : kAllCohorts) {
    Eigen::VectorXd y(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      y[i] = labels[static_cast<std::size_t>(i)] == c ? 1.0 : 0.0;
    const auto m = fit_logistic(Xs, y, cfg);
    const auto row = static_cast<Eigen::Index>(index_of(c));
    out.weights.row(row) = m.weights.transpose();
    out.bias[row] = m.bias;
  }
  return out;
}

Cohort argmax_cohort(const std::array<double, kNumCohorts>& scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumCohorts; ++c)
    if (scores[c] > scores[best]) best = c;
  return static_cast<Cohort>(best);
}

ClassPrediction predict_class(const Classifier& c, std::span<const double> x) {
  const Eigen::VectorXd xs = c.scaler.transform(x);
  ClassPrediction out;
  for (std::size_t k = 0; k < kNumCohorts; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    out.scores[k] = sigmoid(c.weights.row(row).dot(xs) + c.bias[row]);
  }
  out.label = argmax_cohort(out.scores);
  return out;
}

std::vector<ClassPrediction> predict_classes(const Classifier& c, const Eigen::MatrixXd& X) {
  std::vector<ClassPrediction> out;
  out.reserve(static_cast<std::size_t>(X.rows()));
  std::vector<double> row(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    Eigen::Map<Eigen::RowVectorXd>(row.data(), X.cols()) = X.row(i);
    out.push_back(predict_class(c, row));
  }
  return out;
}

std::vector<double> classifier_features(const Classifier& c, const StreamWindow& w) {
  return c.kind == FeatureKind::signature ? featurize(w, c.order) : mean_baseline_features(w);
}

Eigen::MatrixXd classifier_features(FeatureKind kind, std::size_t order,
                                    std::span<const StreamWindow> windows) {
  if (kind == FeatureKind::signature) return feature_matrix(windows, order);
  Eigen::MatrixXd X(static_cast<Eigen::Index>(windows.size()),
                    static_cast<Eigen::Index>(kNumCategories));
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto f = mean_baseline_features(windows[i]);
    for (std::size_t c = 0; c < kNumCategories; ++c)
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = f[c];
  }
  return X;
}

// ---------------------------------------------------------------------------
// Regressor

Regressor fit_regressor(const Eigen::MatrixXd& X, const Eigen::MatrixXd& targets, double ridge,
                        Cohort cohort, std::size_t order) {
  if (X.rows() < 1) throw InputError("fit_regressor: need at least one example");
  if (X.rows() != targets.rows())
    throw ShapeError("fit_regressor: feature rows and targets differ in count");
  if (targets.cols() != static_cast<Eigen::Index>(kNumCategories))
    throw ShapeError("fit_regressor: targets must have 6 columns");
  if (!(ridge >= 0.0)) throw InputError("fit_regressor: ridge strength must be >= 0");
  require_finite(X, "features");
  require_finite(targets, "targets");

  Regressor r;
  r.cohort = cohort;
  r.order = order;
  r.ridge = ridge;
  r.scaler = ScalerParams::fit(X);
  const Eigen::Index p = X.cols();

  Eigen::MatrixXd A(X.rows(), p + 1);
  A.col(0).setOnes();
  A.rightCols(p) = r.scaler.transform(X);
  Eigen::MatrixXd normal = A.transpose() * A;
  normal.diagonal().tail(p).array() += ridge;
  const Eigen::MatrixXd rhs = A.transpose() * targets;

  Eigen::MatrixXd theta;
  if (ridge > 0.0) {
    theta = normal.ldlt().solve(rhs);
  } else {
    theta = normal.completeOrthogonalDecomposition().solve(rhs);
  }
  r.bias = theta.row(0).transpose();
  r.weights = theta.bottomRows(p).transpose();
  return r;
}

std::array<double, kNumCategories> predict_raw(const Regressor& r, std::span<const double> x) {
  const Eigen::VectorXd xs = r.scaler.transform(x);
  std::array<double, kNumCategories> out{};
  for (std::size_t c = 0; c < kNumCategories; ++c) {
    const auto row = static_cast<Eigen::Index>(c);
    out[c] = r.weights.row(row).dot(xs) + r.bias[row];
  }
  return out;
}

int round_score(double raw) {
  if (std::isnan(raw)) throw InputError("round_score: NaN prediction");
  const double clamped = std::clamp(std::round(raw), static_cast<double>(kMinScore),
                                    static_cast<double>(kMaxScore));
  return static_cast<int>(clamped);
}

Scores predict_mood(const Regressor& r, std::span<const double> x) {
  const auto raw = predict_raw(r, x);
  Scores out{};
  for (std::size_t c = 0; c < kNumCategories; ++c) out[c] = round_score(raw[c]);
  return out;
}

// ---------------------------------------------------------------------------
// Baselines

std::vector<double> mean_baseline_features(const StreamWindow& w) {
  if (w.reports.empty()) throw InputError("mean_baseline_features: empty window");
  std::vector<double> mean(kNumCategories, 0.0);
  for (const auto& r : w.reports)
    for (std::size_t c = 0; c < kNumCategories; ++c) mean[c] += r.scores[c];
  for (auto& m : mean) m /= static_cast<double>(w.reports.size());
  return mean;
}

Scores persistence_predict(const StreamWindow& w) {
  if (w.reports.empty()) throw InputError("persistence_predict: empty window");
  return w.reports.back().scores;
}

}  // namespace moodsig
