#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace moodsig {

/// Clinical group. The encoding is fixed and doubles as the tie-break order.
enum class Cohort : std::uint8_t { bipolar = 0, borderline = 1, healthy = 2 };

inline constexpr std::size_t kNumCohorts = 3;
inline constexpr std::array<Cohort, kNumCohorts> kAllCohorts{
    Cohort::bipolar, Cohort::borderline, Cohort::healthy};

constexpr std::size_t index_of(Cohort c) { return static_cast<std::size_t>(c); }

constexpr std::string_view to_string(Cohort c) {
  switch (c) {
    case Cohort::bipolar: return "bipolar";
    case Cohort::borderline: return "borderline";
    case Cohort::healthy: return "healthy";
  }
  return "unknown";
}

inline std::optional<Cohort> parse_cohort(std::string_view s) {
  for (Cohort c : kAllCohorts)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

/// The six mood categories, in report column order.
inline constexpr std::size_t kNumCategories = 6;
inline constexpr std::array<std::string_view, kNumCategories> kCategoryNames{
    "anxious", "elated", "sad", "angry", "irritable", "energetic"};

inline std::optional<std::size_t> parse_category(std::string_view s) {
  for (std::size_t i = 0; i < kNumCategories; ++i)
    if (kCategoryNames[i] == s) return i;
  return std::nullopt;
}

inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 7;
inline constexpr int kNeutralScore = 4;

}  // namespace moodsig
