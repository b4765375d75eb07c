#pragma once

// Windowing of report streams and their normalized 7-dimensional paths.

#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moodsig/cohort.hpp"

namespace moodsig {

using Scores = std::array<int, kNumCategories>;

struct MoodReport {
  long seq = 0;
  std::optional<std::chrono::year_month_day> date;
  Scores scores{};
};

inline constexpr std::size_t kDefaultWindow = 20;
inline constexpr std::size_t kPathDim = 1 + kNumCategories;

struct StreamWindow {
  std::string participant_id;
  Cohort cohort = Cohort::bipolar;
  std::vector<MoodReport> reports;
};

/// Points of the time-augmented path. Coordinate 0 is time in [0, 1];
/// coordinates 1..6 are cumulative centred scores.
struct NormalizedPath {
  std::vector<std::vector<double>> points;
};

/// Cuts `reports` into blocks of `length` consecutive reports, starting every
/// `stride` reports. A trailing remainder shorter than `length` is dropped.
std::vector<StreamWindow> window_streams(std::span<const MoodReport> reports,
                                         const std::string& participant_id,
                                         Cohort cohort,
                                         std::size_t length = kDefaultWindow,
                                         std::size_t stride = kDefaultWindow);

/// Report j (j >= 1) moves time to j/(L-1) and each category by
/// (score - 4) / (3 (L-1)). The first report only anchors the origin, so a
/// window of constant 7s ends at +1 and constant 1s at -1.
NormalizedPath normalize(const StreamWindow& w);

/// Per-step category increment shared by normalize() and prediction traces.
inline double normalized_step(int score, std::size_t length) {
  return static_cast<double>(score - kNeutralScore) /
         (3.0 * static_cast<double>(length - 1));
}

/// Signature features of a window, length tensor_dim(7, n) - 1.
std::vector<double> featurize(const StreamWindow& w, std::size_t order);

/// A window paired with the report that immediately follows it.
struct ForecastExample {
  StreamWindow window;
  Scores next{};
};

/// Every `length`-report window (starting every `stride` reports) that has a
/// following report, paired with that report.
std::vector<ForecastExample> forecast_examples(std::span<const MoodReport> reports,
                                               const std::string& participant_id,
                                               Cohort cohort,
                                               std::size_t length = kDefaultWindow,
                                               std::size_t stride = 1);

/// One featurize() row per window.
Eigen::MatrixXd feature_matrix(std::span<const StreamWindow> windows, std::size_t order);

}  // namespace moodsig
