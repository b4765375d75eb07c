#include "moodsig/pathprep.hpp"

#include "moodsig/errors.hpp"
#include "moodsig/sigcore.hpp"

namespace moodsig {

std::vector<StreamWindow> window_streams(std::span<const MoodReport> reports,
                                         const std::string& participant_id,
                                         Cohort cohort, std::size_t length,
                                         std::size_t stride) {
  if (length < 2) throw InputError("window length must be at least 2");
  if (stride < 1) throw InputError("window stride must be at least 1");
  std::vector<StreamWindow> out;
  for (std::size_t start = 0; start + length <= reports.size(); start += stride) {
    StreamWindow w;
    w.participant_id = participant_id;
    w.cohort = cohort;
    w.reports.assign(reports.begin() + static_cast<std::ptrdiff_t>(start),
                     reports.begin() + static_cast<std::ptrdiff_t>(start + length));
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<ForecastExample> forecast_examples(std::span<const MoodReport> reports,
                                               const std::string& participant_id,
                                               Cohort cohort, std::size_t length,
                                               std::size_t stride) {
  if (length < 2) throw InputError("window length must be at least 2");
  if (stride < 1) throw InputError("window stride must be at least 1");
  std::vector<ForecastExample> out;
  for (std::size_t start = 0; start + length < reports.size(); start += stride) {
    ForecastExample ex;
    ex.window.participant_id = participant_id;
    ex.window.cohort = cohort;
    ex.window.reports.assign(reports.begin() + static_cast<std::ptrdiff_t>(start),
                             reports.begin() + static_cast<std::ptrdiff_t>(start + length));
    ex.next = reports[start + length].scores;
    out.push_back(std::move(ex));
  }
  return out;
}

NormalizedPath normalize(const StreamWindow& w) {
  const std::size_t len = w.reports.size();
  if (len < 2) throw InputError("normalize: window needs at least 2 reports");
  NormalizedPath path;
  path.points.assign(len, std::vector<double>(kPathDim, 0.0));
  for (std::size_t j = 1; j < len; ++j) {
    auto& p = path.points[j];
    const auto& prev = path.points[j - 1];
    p[0] = static_cast<double>(j) / static_cast<double>(len - 1);
    for (std::size_t c = 0; c < kNumCategories; ++c)
      p[c + 1] = prev[c + 1] + normalized_step(w.reports[j].scores[c], len);
  }
  return path;
}

std::vector<double> featurize(const StreamWindow& w, std::size_t order) {
  return feature_vector(path_signature(normalize(w).points, order));
}

Eigen::MatrixXd feature_matrix(std::span<const StreamWindow> windows, std::size_t order) {
  const auto cols = static_cast<Eigen::Index>(tensor_dim(kPathDim, order) - 1);
  Eigen::MatrixXd X(static_cast<Eigen::Index>(windows.size()), cols);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto f = featurize(windows[i], order);
    X.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(f.data(), cols);
  }
  return X;
}

}  // namespace moodsig
