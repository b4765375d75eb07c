#include <doctest.h>

#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "moodsig/cohortdata.hpp"
#include "moodsig/errors.hpp"
#include "support.hpp"

using namespace moodsig;

namespace {

std::string csv(const std::string& body) { return std::string(kReportCsvHeader) + "\n" + body; }

std::vector<ParticipantRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return load_csv(in);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

ValidationError capture(const std::string& text) {
  try {
    parse(text);
  } catch (const ValidationError& e) {
    return e;
  }
  FAIL("expected a validation error");
  return ValidationError(0, "", "");
}

}  // namespace

TEST_SUITE("cohortdata") {
  TEST_CASE("well-formed file groups participants and sorts by date") {
    const auto recs = parse(csv(
        "a,2015-03-02,bipolar,1,2,3,4,5,6\n"
        "b,2015-01-01,healthy,4,4,4,4,4,4\n"
        "a,2015-03-01,bipolar,7,7,7,7,7,7\n"));
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].participant_id == "a");
    CHECK(recs[0].cohort == Cohort::bipolar);
    REQUIRE(recs[0].reports.size() == 2);
    CHECK(recs[0].reports[0].scores == Scores{7, 7, 7, 7, 7, 7});
    CHECK(recs[0].reports[0].seq == 0);
    CHECK(recs[0].reports[1].seq == 1);
    CHECK(recs[1].cohort == Cohort::healthy);
  }

  TEST_CASE("undated rows keep file order") {
    const auto recs = parse(csv("a,,borderline,1,1,1,1,1,1\na,,borderline,2,2,2,2,2,2\n"));
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].reports[1].scores[0] == 2);
    CHECK_FALSE(recs[0].reports[0].date.has_value());
  }

  TEST_CASE("header only and empty input give no records") {
    CHECK(parse(csv("")).empty());
    CHECK(parse("").empty());
  }

  TEST_CASE("validation errors name line and field") {
    auto e = capture(csv("a,2015-01-01,bipolar,1,2,3,9,5,6\n"));
    CHECK(e.line() == 2);
    CHECK(e.field() == "angry");

    e = capture(csv("a,2015-01-01,bipolar,1,2,3,4,5,6\na,2015-01-02,manic,1,2,3,4,5,6\n"));
    CHECK(e.line() == 3);
    CHECK(e.field() == "cohort");

    CHECK(capture(csv("a,2015-13-01,bipolar,1,2,3,4,5,6\n")).field() == "date");
    CHECK(capture(csv("a,2015-01-01,bipolar,1,2,x,4,5,6\n")).field() == "sad");
    CHECK(capture(csv("a,2015-01-01,bipolar,1,2,3,4,5\n")).field() == "row");
    CHECK(capture(csv(",2015-01-01,bipolar,1,2,3,4,5,6\n")).field() == "participant_id");
    CHECK(capture(csv("a,,bipolar,1,1,1,1,1,1\na,,healthy,1,1,1,1,1,1\n")).field() == "cohort");
    CHECK(capture("id,date\n").field() == "header");
  }

  TEST_CASE("write then load round-trips") {
    SynthConfig cfg = SynthConfig::study_default(7);
    for (auto& c : cfg.cohorts) c.participants = 2;
    cfg.target_windows = 0;
    const auto recs = generate_synthetic(cfg);
    std::ostringstream out;
    write_csv(out, recs);
    const auto back = parse(out.str());
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      CHECK(back[i].participant_id == recs[i].participant_id);
      CHECK(back[i].cohort == recs[i].cohort);
      REQUIRE(back[i].reports.size() == recs[i].reports.size());
      for (std::size_t j = 0; j < recs[i].reports.size(); ++j) {
        CHECK(back[i].reports[j].scores == recs[i].reports[j].scores);
        CHECK(back[i].reports[j].date == recs[i].reports[j].date);
      }
    }
  }

  TEST_CASE("generator is deterministic") {
    const auto cfg = SynthConfig::study_default(99);
    std::ostringstream a, b;
    write_csv(a, generate_synthetic(cfg));
    write_csv(b, generate_synthetic(cfg));
    CHECK(a.str() == b.str());
    std::ostringstream c;
    write_csv(c, generate_synthetic(SynthConfig::study_default(100)));
    CHECK(a.str() != c.str());
  }

  TEST_CASE("study default matches the study sizes") {
    const auto& recs = testing::study_corpus();
    std::array<std::size_t, kNumCohorts> per{};
    for (const auto& r : recs) {
      ++per[index_of(r.cohort)];
      for (const auto& rep : r.reports)
        for (int s : rep.scores) {
          CHECK(s >= kMinScore);
          CHECK(s <= kMaxScore);
        }
    }
    CHECK(recs.size() == 130);
    CHECK(per == std::array<std::size_t, kNumCohorts>{48, 31, 51});
    CHECK(windows_of(recs).size() == 733);
  }

  TEST_CASE("degenerate process reports the quantized baseline") {
    SynthConfig cfg = SynthConfig::study_default(3);
    cfg.target_windows = 0;
    cfg.reports_spread = 0.0;
    cfg.reports_per_participant = 30;
    for (auto& c : cfg.cohorts) {
      c.participants = 2;
      c.volatility = 0.0;
      c.persistence = 0.0;
      c.participant_spread = 0.0;
      c.episode_rate = 0.0;
      c.episode_amplitude = {};
      c.lead_gain = 0.0;
      c.baseline = {2.2, 3.6, 4.4, 5.5, 6.9, 1.1};
    }
    for (const auto& r : generate_synthetic(cfg)) {
      CHECK(r.reports.size() == 30);
      for (const auto& rep : r.reports) CHECK(rep.scores == Scores{2, 4, 4, 6, 7, 1});
    }
  }

  TEST_CASE("borderline anger and irritability move together") {
    std::vector<double> angry, irritable;
    for (const auto& r : testing::study_corpus())
      if (r.cohort == Cohort::borderline)
        for (const auto& rep : r.reports) {
          angry.push_back(rep.scores[3]);
          irritable.push_back(rep.scores[4]);
        }
    CHECK(pearson(angry, irritable) >= 0.8);
  }

  TEST_CASE("config validation") {
    SynthConfig cfg = SynthConfig::study_default();
    cfg.cohorts[0].persistence = 1.0;
    CHECK_THROWS_AS(generate_synthetic(cfg), InputError);
    cfg = SynthConfig::study_default();
    cfg.cohorts[1].anger_irritability_corr = 1.5;
    CHECK_THROWS_AS(generate_synthetic(cfg), InputError);
    cfg = SynthConfig::study_default();
    cfg.cohorts[2].volatility = -1.0;
    CHECK_THROWS_AS(generate_synthetic(cfg), InputError);
    cfg = SynthConfig::study_default();
    cfg.cohorts[2].participants = 0;
    CHECK_THROWS_AS(generate_synthetic(cfg), InputError);
  }

  TEST_CASE("split counts and disjointness") {
    const auto windows = windows_of(testing::study_corpus());
    const auto sp = split(windows, 0.7, 5);
    CHECK(sp.train.size() == 513);
    CHECK(sp.test.size() == 220);

    const auto idx = split_indices(733, 0.7, 5);
    std::set<std::size_t> all(idx.train.begin(), idx.train.end());
    for (auto i : idx.test) CHECK(all.insert(i).second);
    CHECK(all.size() == 733);
    CHECK(*all.rbegin() == 732);

    const auto ten = split_indices(10, 0.5, 1);
    CHECK(ten.train.size() == 5);
    CHECK(ten.test.size() == 5);

    CHECK(split_indices(733, 0.7, 5).train == idx.train);
    CHECK(split_indices(733, 0.7, 6).train != idx.train);
    CHECK_THROWS_AS(split_indices(10, 1.0, 1), InputError);
    CHECK_THROWS_AS(split_indices(10, 0.0, 1), InputError);
  }

  TEST_CASE("train label proportions track the corpus") {
    const auto windows = windows_of(testing::study_corpus());
    std::array<double, kNumCohorts> corpus{};
    for (const auto& w : windows) corpus[index_of(w.cohort)] += 1.0 / static_cast<double>(windows.size());
    for (std::uint64_t seed : {1u, 2u, 3u, 20170601u}) {
      const auto sp = split(windows, 0.7, seed);
      std::array<double, kNumCohorts> train{};
      for (const auto& w : sp.train) train[index_of(w.cohort)] += 1.0 / static_cast<double>(sp.train.size());
      for (std::size_t c = 0; c < kNumCohorts; ++c) CHECK(std::abs(train[c] - corpus[c]) <= 0.10);
    }
  }

  TEST_CASE("stratified split keeps each cohort's share") {
    std::vector<Cohort> labels;
    for (int i = 0; i < 10; ++i) labels.push_back(Cohort::bipolar);
    for (int i = 0; i < 20; ++i) labels.push_back(Cohort::healthy);
    for (int i = 0; i < 4; ++i) labels.push_back(Cohort::borderline);
    const auto idx = split_indices_stratified(labels, 0.5, 3);
    std::array<int, kNumCohorts> train{};
    for (auto i : idx.train) ++train[index_of(labels[i])];
    CHECK(train == std::array<int, kNumCohorts>{5, 2, 10});
    CHECK(idx.train.size() + idx.test.size() == labels.size());
  }

  TEST_CASE("rng helpers") {
    CHECK(permutation(20, 4) == permutation(20, 4));
    auto p = permutation(20, 4);
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < 20; ++i) CHECK(p[i] == i);
    auto a = substream(1, 2);
    auto b = substream(1, 2);
    auto c = substream(1, 3);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    auto r = substream(9, 0);
    for (int i = 0; i < 1000; ++i) CHECK(uniform_index(r, 7) < 7);
  }
}
