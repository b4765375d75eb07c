#include "moodsig/cohortdata.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace moodsig {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view s) {
  // YYYY-MM-DD
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto num = [&](std::string_view part, auto& value) {
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    return ec == std::errc() && p == part.data() + part.size();
  };
  if (!num(s.substr(0, 4), y) || !num(s.substr(5, 2), m) || !num(s.substr(8, 2), d))
    return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                  std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

std::string format_date(const std::chrono::year_month_day& ymd) {
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

}  // namespace

std::vector<ParticipantRecord> load_csv(std::istream& in) {
  std::vector<ParticipantRecord> records;
  std::map<std::string, std::size_t, std::less<>> index;
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) return records;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kReportCsvHeader)
    throw ValidationError(line_no, "header", "expected '" + std::string(kReportCsvHeader) + "'");

  static constexpr std::array<const char*, 9> kFields{
      "participant_id", "date", "cohort", "anxious", "elated",
      "sad", "angry", "irritable", "energetic"};

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != kFields.size())
      throw ValidationError(line_no, "row",
                            fmt::format("expected {} fields, got {}", kFields.size(),
                                        fields.size()));
    if (fields[0].empty()) throw ValidationError(line_no, kFields[0], "empty participant id");

    MoodReport report;
    if (!fields[1].empty()) {
      report.date = parse_date(fields[1]);
      if (!report.date)
        throw ValidationError(line_no, kFields[1],
                              "not an ISO-8601 date: '" + std::string(fields[1]) + "'");
    }
    const auto cohort = parse_cohort(fields[2]);
    if (!cohort)
      throw ValidationError(line_no, kFields[2],
                            "unknown cohort '" + std::string(fields[2]) + "'");
    for (std::size_t c = 0; c < kNumCategories; ++c) {
      const auto f = fields[3 + c];
      int v = 0;
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || p != f.data() + f.size())
        throw ValidationError(line_no, kFields[3 + c], "not an integer: '" + std::string(f) + "'");
      if (v < kMinScore || v > kMaxScore)
        throw ValidationError(line_no, kFields[3 + c],
                              fmt::format("score {} outside {}..{}", v, kMinScore, kMaxScore));
      report.scores[c] = v;
    }

    auto it = index.find(fields[0]);
    if (it == index.end()) {
      it = index.emplace(std::string(fields[0]), records.size()).first;
      records.push_back(ParticipantRecord{std::string(fields[0]), *cohort, {}});
    } else if (records[it->second].cohort != *cohort) {
      throw ValidationError(line_no, kFields[2],
                            "participant '" + it->first + "' listed under two cohorts");
    }
    auto& rec = records[it->second];
    report.seq = static_cast<long>(rec.reports.size());
    rec.reports.push_back(report);
  }

  for (auto& rec : records) {
    const bool all_dated = std::all_of(rec.reports.begin(), rec.reports.end(),
                                       [](const MoodReport& r) { return r.date.has_value(); });
    if (all_dated)
      std::stable_sort(rec.reports.begin(), rec.reports.end(),
                       [](const MoodReport& a, const MoodReport& b) { return *a.date < *b.date; });
    for (std::size_t i = 0; i < rec.reports.size(); ++i) rec.reports[i].seq = static_cast<long>(i);
  }
  return records;
}

std::vector<ParticipantRecord> load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return load_csv(in);
}

void write_csv(std::ostream& out, const std::vector<ParticipantRecord>& records) {
  out << kReportCsvHeader << '\n';
  for (const auto& rec : records) {
    for (const auto& r : rec.reports) {
      out << rec.participant_id << ',' << (r.date ? format_date(*r.date) : std::string())
          << ',' << to_string(rec.cohort);
      for (int s : r.scores) out << ',' << s;
      out << '\n';
    }
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<ParticipantRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  write_csv(out, records);
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Random streams

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  // rejection sampling removes modulo bias
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto rng = substream(seed, 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
  return perm;
}

// ---------------------------------------------------------------------------
// Synthetic cohorts

SynthConfig SynthConfig::study_default(std::uint64_t seed) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.reports_per_participant = 115;
  cfg.reports_spread = 0.6;
  cfg.target_windows = 733;
  cfg.window = kDefaultWindow;

  auto& bp = cfg.cohorts[index_of(Cohort::bipolar)];
  bp.participants = 48;
  bp.baseline = {3.5, 3.5, 3.5, 3.1, 3.4, 3.5};
  bp.participant_spread = 0.6;
  bp.volatility = 1.0;
  bp.persistence = 0.25;
  bp.episode_rate = 0.03;
  bp.episode_amplitude = {0.3, 1.2, -1.2, 0.0, 0.3, 1.2};
  bp.anger_irritability_corr = 0.6;
  bp.lead_source = 5;  // energetic
  bp.lead_target = 1;  // elated
  bp.lead_gain = 1.0;

  auto& bd = cfg.cohorts[index_of(Cohort::borderline)];
  bd.participants = 31;
  bd.baseline = {3.5, 3.5, 3.5, 3.1, 3.4, 3.5};
  bd.participant_spread = 0.6;
  bd.volatility = 1.5;
  bd.persistence = 0.25;
  bd.anger_irritability_corr = 0.97;
  bd.lead_source = 0;  // anxious
  bd.lead_target = 2;  // sad
  bd.lead_gain = 1.0;

  auto& hc = cfg.cohorts[index_of(Cohort::healthy)];
  hc.participants = 51;
  hc.baseline = {2.8, 3.7, 2.7, 2.4, 2.7, 3.9};
  hc.participant_spread = 0.5;
  hc.volatility = 0.8;
  hc.persistence = 0.3;
  hc.anger_irritability_corr = 0.5;
  hc.lead_source = 4;  // irritable
  hc.lead_target = 0;  // anxious
  hc.lead_gain = 0.8;
  return cfg;
}

void SynthConfig::validate() const {
  if (window < 2) throw InputError("synth: window must be at least 2");
  if (reports_per_participant < 1) throw InputError("synth: reports per participant must be >= 1");
  if (!(reports_spread >= 0.0 && reports_spread < 1.0))
    throw InputError("synth: reports spread must lie in [0, 1)");
  for (Cohort c : kAllCohorts) {
    const auto& p = cohorts[index_of(c)];
    const std::string name(to_string(c));
    if (p.participants < 1) throw InputError("synth: " + name + " needs at least 1 participant");
    if (!(p.volatility >= 0.0)) throw InputError("synth: " + name + " volatility must be >= 0");
    if (!(p.participant_spread >= 0.0))
      throw InputError("synth: " + name + " participant spread must be >= 0");
    if (!(p.persistence >= 0.0 && p.persistence < 1.0))
      throw InputError("synth: " + name + " persistence must lie in [0, 1)");
    if (!(p.episode_rate >= 0.0 && p.episode_rate <= 1.0))
      throw InputError("synth: " + name + " episode rate must lie in [0, 1]");
    if (!(p.anger_irritability_corr >= -1.0 && p.anger_irritability_corr <= 1.0))
      throw InputError("synth: " + name + " correlation must lie in [-1, 1]");
    if (p.lead_source >= kNumCategories || p.lead_target >= kNumCategories)
      throw InputError("synth: " + name + " lead categories out of range");
  }
}

namespace {

constexpr std::size_t kAngry = 3;
constexpr std::size_t kIrritable = 4;

std::vector<std::size_t> report_counts(const SynthConfig& cfg, std::size_t participants) {
  auto rng = substream(cfg.seed, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double mean = static_cast<double>(cfg.reports_per_participant);
  std::vector<std::size_t> counts(participants);
  for (auto& n : counts) {
    const double raw = mean * (1.0 + cfg.reports_spread * (2.0 * unit(rng) - 1.0));
    n = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(raw)));
  }
  if (cfg.target_windows == 0) return counts;

  const std::size_t L = cfg.window;
  std::vector<std::size_t> windows(participants);
  std::vector<std::size_t> rest(participants);
  std::size_t total = 0;
  for (std::size_t i = 0; i < participants; ++i) {
    windows[i] = counts[i] / L;
    rest[i] = counts[i] % L;
    total += windows[i];
  }
  const std::size_t floor_w = cfg.target_windows >= participants ? 1 : 0;
  while (total < cfg.target_windows) {
    ++windows[uniform_index(rng, participants)];
    ++total;
  }
  while (total > cfg.target_windows) {
    const auto j = uniform_index(rng, participants);
    if (windows[j] > floor_w) {
      --windows[j];
      --total;
    }
  }
  for (std::size_t i = 0; i < participants; ++i) {
    counts[i] = windows[i] * L + rest[i];
    if (counts[i] == 0) counts[i] = 1;
  }
  return counts;
}

ParticipantRecord generate_participant(const CohortProfile& p, Cohort cohort,
                                       std::string id, std::size_t n_reports,
                                       std::mt19937_64 rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double rho = p.anger_irritability_corr;
  const double rho_c = std::sqrt(std::max(0.0, 1.0 - rho * rho));

  auto correlated = [&](std::array<double, kNumCategories>& v) {
    for (auto& x : v) x = normal(rng);
    v[kIrritable] = rho * v[kAngry] + rho_c * v[kIrritable];
  };

  std::array<double, kNumCategories> offset{};
  correlated(offset);
  for (auto& o : offset) o *= p.participant_spread;

  ParticipantRecord rec;
  rec.participant_id = std::move(id);
  rec.cohort = cohort;
  rec.reports.reserve(n_reports);

  const auto start = std::chrono::sys_days{std::chrono::year{2014} / 1 / 1} +
                     std::chrono::days{static_cast<int>(uniform_index(rng, 365))};
  double episode = unit(rng) < 0.5 ? -1.0 : 1.0;
  std::array<double, kNumCategories> z{};
  std::array<double, kNumCategories> prev_innovation{};
  std::array<double, kNumCategories> innovation{};

  for (std::size_t t = 0; t < n_reports; ++t) {
    if (p.episode_rate > 0.0 && unit(rng) < p.episode_rate) episode = -episode;
    correlated(innovation);
    innovation[p.lead_target] += p.lead_gain * prev_innovation[p.lead_source];

    MoodReport r;
    r.seq = static_cast<long>(t);
    r.date = std::chrono::year_month_day{start + std::chrono::days{static_cast<int>(t)}};
    for (std::size_t c = 0; c < kNumCategories; ++c) {
      z[c] = p.persistence * z[c] + p.volatility * innovation[c];
      const double latent = p.baseline[c] + offset[c] + episode * p.episode_amplitude[c] + z[c];
      r.scores[c] = static_cast<int>(
          std::clamp(std::round(latent), static_cast<double>(kMinScore),
                     static_cast<double>(kMaxScore)));
    }
    prev_innovation = innovation;
    rec.reports.push_back(r);
  }
  return rec;
}

}  // namespace

std::vector<ParticipantRecord> generate_synthetic(const SynthConfig& cfg) {
  cfg.validate();
  std::size_t participants = 0;
  for (const auto& p : cfg.cohorts) participants += p.participants;
  const auto counts = report_counts(cfg, participants);

  std::vector<ParticipantRecord> out;
  out.reserve(participants);
  std::size_t i = 0;
  for (Cohort c : kAllCohorts) {
    const auto& profile = cfg.cohorts[index_of(c)];
    for (std::size_t k = 0; k < profile.participants; ++k, ++i)
      out.push_back(generate_participant(profile, c, fmt::format("p{:04d}", i + 1), counts[i],
                                         substream(cfg.seed, i + 1)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Windows and splits

std::vector<StreamWindow> windows_of(const std::vector<ParticipantRecord>& records,
                                     std::size_t length, std::size_t stride) {
  std::vector<StreamWindow> out;
  for (const auto& rec : records) {
    auto w = window_streams(rec.reports, rec.participant_id, rec.cohort, length, stride);
    out.insert(out.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
  }
  return out;
}

namespace {

void check_ratio(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InputError("split ratio must lie in (0, 1)");
}

std::size_t train_count(std::size_t n, double ratio) {
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
}

}  // namespace

SplitIndices split_indices(std::size_t n, double ratio, std::uint64_t seed) {
  check_ratio(ratio);
  const auto perm = permutation(n, seed);
  const auto k = train_count(n, ratio);
  SplitIndices out;
  out.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
  out.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(k), perm.end());
  return out;
}

SplitIndices split_indices_stratified(std::span<const Cohort> labels, double ratio,
                                      std::uint64_t seed) {
  check_ratio(ratio);
  SplitIndices out;
  for (Cohort c : kAllCohorts) {
    std::vector<std::size_t> group;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) group.push_back(i);
    const auto perm = permutation(group.size(), seed + index_of(c));
    const auto k = train_count(group.size(), ratio);
    for (std::size_t j = 0; j < perm.size(); ++j)
      (j < k ? out.train : out.test).push_back(group[perm[j]]);
  }
  return out;
}

DatasetSplit split(const std::vector<StreamWindow>& windows, double ratio, std::uint64_t seed,
                   bool stratified) {
  if (!stratified) return split_by(windows, split_indices(windows.size(), ratio, seed), seed);
  std::vector<Cohort> labels;
  labels.reserve(windows.size());
  for (const auto& w : windows) labels.push_back(w.cohort);
  return split_by(windows, split_indices_stratified(labels, ratio, seed), seed);
}

Split<ParticipantRecord> split_participants(const std::vector<ParticipantRecord>& records,
                                            double ratio, std::uint64_t seed) {
  return split_by(records, split_indices(records.size(), ratio, seed), seed);
}

}  // namespace moodsig
