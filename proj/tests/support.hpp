#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "moodsig/cohortdata.hpp"
#include "moodsig/pathprep.hpp"
#include "moodsig/sigcore.hpp"

namespace testing {

using Points = std::vector<std::vector<double>>;

inline Points random_path(std::mt19937_64& rng, std::size_t d, std::size_t points,
                          double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Points out(points, std::vector<double>(d));
  for (auto& p : out)
    for (auto& x : p) x = g(rng);
  return out;
}

inline double max_abs_diff(const moodsig::TruncatedTensor& a, const moodsig::TruncatedTensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a.data()[i] - b.data()[i];
    m = std::max(m, diff < 0 ? -diff : diff);
  }
  return m;
}

/// Every word of length 0..n over {0..d-1}, in storage order.
inline std::vector<moodsig::Word> words_up_to(std::size_t d, std::size_t n) {
  std::vector<moodsig::Word> out{moodsig::Word{}};
  std::vector<moodsig::Word> frontier{moodsig::Word{}};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<moodsig::Word> next;
    for (const auto& w : frontier)
      for (std::size_t a = 0; a < d; ++a) {
        auto v = w;
        v.push_back(a);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline moodsig::StreamWindow window_from(const std::vector<moodsig::Scores>& rows,
                                         moodsig::Cohort cohort = moodsig::Cohort::bipolar,
                                         const std::string& id = "p") {
  moodsig::StreamWindow w;
  w.participant_id = id;
  w.cohort = cohort;
  for (std::size_t i = 0; i < rows.size(); ++i)
    w.reports.push_back(moodsig::MoodReport{static_cast<long>(i), std::nullopt, rows[i]});
  return w;
}

inline std::vector<moodsig::MoodReport> constant_reports(std::size_t n, int score) {
  std::vector<moodsig::MoodReport> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].seq = static_cast<long>(i);
    out[i].scores.fill(score);
  }
  return out;
}

inline std::vector<moodsig::MoodReport> random_reports(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> u(1, 7);
  std::vector<moodsig::MoodReport> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].seq = static_cast<long>(i);
    for (auto& s : out[i].scores) s = u(rng);
  }
  return out;
}

/// The default synthetic corpus, generated once per process.
inline const std::vector<moodsig::ParticipantRecord>& study_corpus() {
  static const auto records = moodsig::generate_synthetic(moodsig::SynthConfig::study_default());
  return records;
}

}  // namespace testing
