#pragma once

// Participant records: CSV ingestion, a seeded synthetic cohort generator,
// and the random train/test split.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "moodsig/cohort.hpp"
#include "moodsig/errors.hpp"
#include "moodsig/pathprep.hpp"

namespace moodsig {

struct ParticipantRecord {
  std::string participant_id;
  Cohort cohort = Cohort::bipolar;
  std::vector<MoodReport> reports;
};

/// Exact header of the report CSV format.
inline constexpr const char* kReportCsvHeader =
    "participant_id,date,cohort,anxious,elated,sad,angry,irritable,energetic";

/// Parses the report CSV. Records come out in order of first appearance;
/// each participant's reports are sorted by date (when every row has one)
/// with file order breaking ties, then renumbered 0..N-1 in `seq`.
/// Throws ValidationError naming the line and field of the first bad row.
std::vector<ParticipantRecord> load_csv(std::istream& in);
std::vector<ParticipantRecord> load_csv(const std::filesystem::path& path);

void write_csv(std::ostream& out, const std::vector<ParticipantRecord>& records);
void write_csv(const std::filesystem::path& path,
               const std::vector<ParticipantRecord>& records);

/// Generative parameters for one cohort. Each category follows
///   latent = baseline + participant offset + episode * amplitude + z
///   z_t = persistence * z_{t-1} + volatility * innovation_t
/// and is quantized by clamp(round(latent), 1, 7).
struct CohortProfile {
  std::array<double, kNumCategories> baseline{4, 4, 4, 4, 4, 4};
  /// Standard deviation of the per-participant offset added to the baseline.
  double participant_spread = 0.0;
  double volatility = 1.0;
  double persistence = 0.3;
  /// Per-report probability of flipping the two-state (+1/-1) episode chain.
  double episode_rate = 0.0;
  std::array<double, kNumCategories> episode_amplitude{};
  /// Correlation of the angry and irritable innovations (and offsets).
  double anger_irritability_corr = 0.0;
  /// Category `lead_target` receives `lead_gain` times the previous
  /// innovation of `lead_source`.
  std::size_t lead_source = 0;
  std::size_t lead_target = 0;
  double lead_gain = 0.0;
  std::size_t participants = 1;
};

struct SynthConfig {
  std::array<CohortProfile, kNumCohorts> cohorts;
  /// Mean reports per participant and the half-width of the uniform spread
  /// around it, as a fraction of the mean.
  std::size_t reports_per_participant = 115;
  double reports_spread = 0.0;
  /// When nonzero, per-participant counts are adjusted so that cutting every
  /// stream into `window`-report blocks yields exactly this many windows.
  std::size_t target_windows = 0;
  std::size_t window = kDefaultWindow;
  std::uint64_t seed = 0;

  /// Three cohorts sized 48/31/51, tuned so that dynamics rather than mean
  /// levels carry most of the cohort information, with 733 windows in total.
  static SynthConfig study_default(std::uint64_t seed = 20170601);

  /// Throws InputError describing the first invalid field.
  void validate() const;
};

/// Deterministic given cfg.seed. Participants are numbered p0001... in
/// cohort order.
std::vector<ParticipantRecord> generate_synthetic(const SynthConfig& cfg);

/// Random number engine for substream `index` of a master seed. Used for
/// per-participant generation, bootstrap iterations and similar so serial and
/// parallel runs coincide.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [0, bound) from raw engine output, independent of the
/// standard library's distribution implementation.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform random permutation of 0..n-1 (Fisher-Yates over uniform_index).
std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed);

/// All windows of every record.
std::vector<StreamWindow> windows_of(const std::vector<ParticipantRecord>& records,
                                     std::size_t length = kDefaultWindow,
                                     std::size_t stride = kDefaultWindow);

template <class T>
struct Split {
  std::vector<T> train;
  std::vector<T> test;
  std::uint64_t seed = 0;
};

using DatasetSplit = Split<StreamWindow>;

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
/// The first floor(ratio n) entries of a seeded permutation of 0..n-1 train.
SplitIndices split_indices(std::size_t n, double ratio, std::uint64_t seed);
/// Same rule applied within each cohort; the train total can fall short of
/// floor(ratio n) by less than the number of cohorts.
SplitIndices split_indices_stratified(std::span<const Cohort> labels, double ratio,
                                      std::uint64_t seed);

template <class T>
Split<T> split_by(const std::vector<T>& items, const SplitIndices& idx, std::uint64_t seed) {
  Split<T> out;
  out.seed = seed;
  out.train.reserve(idx.train.size());
  out.test.reserve(idx.test.size());
  for (auto i : idx.train) out.train.push_back(items[i]);
  for (auto i : idx.test) out.test.push_back(items[i]);
  return out;
}

/// Uniform random split of windows; the first floor(ratio N) of a seeded
/// permutation go to train.
DatasetSplit split(const std::vector<StreamWindow>& windows, double ratio,
                   std::uint64_t seed, bool stratified = false);

/// Split of whole participants, for tasks where overlapping windows of one
/// participant must not straddle train and test.
Split<ParticipantRecord> split_participants(const std::vector<ParticipantRecord>& records,
                                            double ratio, std::uint64_t seed);

}  // namespace moodsig
