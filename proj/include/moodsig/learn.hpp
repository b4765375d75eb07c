#pragma once

// Linear learners on window features: one-vs-rest logistic classification of
// cohorts, per-category ridge regression of the next report, and the two
// reference baselines (window means, last-report persistence).

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "moodsig/cohort.hpp"
#include "moodsig/pathprep.hpp"

namespace moodsig {

/// Per-feature standardization fitted on training rows. Columns with zero
/// spread keep std = 1 so they map to (near) zero.
struct ScalerParams {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;

  static ScalerParams fit(const Eigen::MatrixXd& X);
  Eigen::MatrixXd transform(const Eigen::MatrixXd& X) const;
  Eigen::VectorXd transform(std::span<const double> x) const;
  Eigen::Index dim() const { return mean.size(); }
};

/// Which window representation a model consumes.
enum class FeatureKind : std::uint8_t { signature, mean_scores };

struct ClassifierConfig {
  double l2 = 1.0;
  double tolerance = 1e-6;
  std::size_t max_iterations = 10000;
  std::uint64_t seed = 0;
};

/// One binary logistic model: P(y = 1 | x) = sigmoid(w.x + b).
struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
};

/// Objective  (1/N) sum log(1 + exp(z_i)) - y_i z_i  +  (l2 / 2N) |w|^2,
/// z_i = w.x_i + b. The bias is not penalized.
double logistic_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& w, double b, double l2);

/// Gradient of logistic_objective; returns (dw, db) packed as [dw..., db].
Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& w, double b, double l2);

/// Accelerated full-batch gradient descent from w = 0, b = 0 with a fixed
/// step of 1/Lipschitz and gradient-based momentum restarts. Stops when the
/// gradient norm reaches cfg.tolerance or after cfg.max_iterations.
LogisticModel fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const ClassifierConfig& cfg);

inline double sigmoid(double z) {
  return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

struct Classifier {
  FeatureKind kind = FeatureKind::signature;
  std::size_t order = 2;
  ScalerParams scaler;
  /// Row c holds the weights of the cohort-c-versus-rest model.
  Eigen::MatrixXd weights;
  Eigen::Vector3d bias = Eigen::Vector3d::Zero();
  ClassifierConfig config;

  Eigen::Index feature_dim() const { return scaler.dim(); }
};

struct ClassPrediction {
  Cohort label = Cohort::bipolar;
  /// Per-cohort logistic outputs, not renormalized.
  std::array<double, kNumCohorts> scores{};
};

/// Standardizes X with a scaler fitted on it, then fits three one-vs-rest
/// logistic models. Throws InputError if a cohort is missing or X has
/// non-finite entries.
Classifier fit_classifier(const Eigen::MatrixXd& X, std::span<const Cohort> labels,
                          const ClassifierConfig& cfg = {},
                          FeatureKind kind = FeatureKind::signature, std::size_t order = 2);

/// Argmax over the three scores; exact ties resolve to the lower encoding.
Cohort argmax_cohort(const std::array<double, kNumCohorts>& scores);

ClassPrediction predict_class(const Classifier& c, std::span<const double> x);
std::vector<ClassPrediction> predict_classes(const Classifier& c, const Eigen::MatrixXd& X);

/// Features a classifier of this kind expects for a window.
std::vector<double> classifier_features(const Classifier& c, const StreamWindow& w);
Eigen::MatrixXd classifier_features(FeatureKind kind, std::size_t order,
                                    std::span<const StreamWindow> windows);

struct Regressor {
  Cohort cohort = Cohort::bipolar;
  std::size_t order = 2;
  double ridge = 1.0;
  ScalerParams scaler;
  /// Row c predicts category c.
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;

  Eigen::Index feature_dim() const { return scaler.dim(); }
};

/// Per-category ridge regression on standardized features,
///   minimize |y - b - X w|^2 + ridge |w|^2,
/// solved through the normal equations with the intercept unpenalized.
/// `targets` is N x 6. Throws InputError on empty or non-finite input.
Regressor fit_regressor(const Eigen::MatrixXd& X, const Eigen::MatrixXd& targets,
                        double ridge = 1.0, Cohort cohort = Cohort::bipolar,
                        std::size_t order = 2);

/// Unrounded predictions for the six categories.
std::array<double, kNumCategories> predict_raw(const Regressor& r, std::span<const double> x);

/// Round half away from zero, then clamp to 1..7.
int round_score(double raw);

Scores predict_mood(const Regressor& r, std::span<const double> x);

/// Per-category arithmetic mean of the raw scores in the window.
std::vector<double> mean_baseline_features(const StreamWindow& w);

/// The last report's scores.
Scores persistence_predict(const StreamWindow& w);

}  // namespace moodsig
