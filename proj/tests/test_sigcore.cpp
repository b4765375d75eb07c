#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "moodsig/errors.hpp"
#include "moodsig/sigcore.hpp"
#include "oracles/quadrature.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace moodsig;
using testing::max_abs_diff;
using testing::Points;

namespace {

std::vector<double> vec(std::initializer_list<double> v) { return v; }

// Word-concatenation product written independently of tensor_mul.
TruncatedTensor brute_mul(const TruncatedTensor& a, const TruncatedTensor& b) {
  TruncatedTensor out(a.alphabet(), a.order());
  const auto words = testing::words_up_to(a.alphabet(), a.order());
  for (const auto& u : words)
    for (const auto& v : words) {
      if (u.size() + v.size() > a.order()) continue;
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      out.coeff(uv) += a.coeff(u) * b.coeff(v);
    }
  return out;
}

TruncatedTensor random_tensor(std::mt19937_64& rng, std::size_t d, std::size_t n) {
  std::normal_distribution<double> g;
  TruncatedTensor t(d, n);
  for (auto& x : t.data()) x = g(rng);
  t.data()[0] = 1.0;
  return t;
}

}  // namespace

TEST_SUITE("sigcore") {
  TEST_CASE("tensor_dim closed form") {
    CHECK(tensor_dim(7, 2) == 57);
    CHECK(tensor_dim(7, 3) == 400);
    CHECK(tensor_dim(7, 4) == 2801);
    CHECK(tensor_dim(1, 3) == 4);
    CHECK(tensor_dim(3, 0) == 1);
  }

  TEST_CASE("tensor layout and coefficient access") {
    TruncatedTensor t(2, 2);
    CHECK(t.size() == 7);
    CHECK(t.level(0).size() == 1);
    CHECK(t.level(2).size() == 4);
    t.coeff({1, 0}) = 3.0;
    CHECK(t.level(2)[2] == 3.0);
    CHECK_THROWS_AS(t.coeff({2}), ShapeError);
    CHECK_THROWS_AS(t.coeff({0, 0, 0}), ShapeError);
  }

  TEST_CASE("unit is the identity of tensor_mul") {
    std::mt19937_64 rng(1);
    const auto x = random_tensor(rng, 3, 3);
    const auto u = TruncatedTensor::unit(3, 3);
    CHECK(max_abs_diff(tensor_mul(u, x), x) == 0.0);
    CHECK(max_abs_diff(tensor_mul(x, u), x) == 0.0);
  }

  TEST_CASE("one-dimensional exponentials multiply like scalars") {
    TruncatedTensor e(1, 3);
    e.data()[0] = 1;
    e.data()[1] = 1;
    e.data()[2] = 0.5;
    e.data()[3] = 1.0 / 6.0;
    const auto p = tensor_mul(e, e);
    CHECK(p.data()[0] == doctest::Approx(1.0));
    CHECK(p.data()[1] == doctest::Approx(2.0));
    CHECK(p.data()[2] == doctest::Approx(2.0));
    CHECK(p.data()[3] == doctest::Approx(4.0 / 3.0));
  }

  TEST_CASE("tensor_mul matches brute-force word concatenation") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 20; ++rep) {
      const auto a = random_tensor(rng, 2, 2);
      const auto b = random_tensor(rng, 2, 2);
      CHECK(max_abs_diff(tensor_mul(a, b), brute_mul(a, b)) < 1e-14);
    }
    const auto a = random_tensor(rng, 3, 3);
    const auto b = random_tensor(rng, 3, 3);
    CHECK(max_abs_diff(tensor_mul(a, b), brute_mul(a, b)) < 1e-13);
  }

  TEST_CASE("tensor_mul rejects mismatched shapes") {
    CHECK_THROWS_AS(tensor_mul(TruncatedTensor(2, 2), TruncatedTensor(3, 2)), ShapeError);
    CHECK_THROWS_AS(tensor_mul(TruncatedTensor(2, 2), TruncatedTensor(2, 3)), ShapeError);
  }

  TEST_CASE("tensor_exp examples") {
    const auto zero = tensor_exp(vec({0, 0, 0}), 3);
    CHECK(max_abs_diff(zero, TruncatedTensor::unit(3, 3)) == 0.0);

    const auto e = tensor_exp(vec({2}), 3);
    CHECK(e.data()[1] == doctest::Approx(2.0));
    CHECK(e.data()[2] == doctest::Approx(2.0));
    CHECK(e.data()[3] == doctest::Approx(4.0 / 3.0));

    const auto f = tensor_exp(vec({1, 1}), 2);
    for (double v : f.level(2)) CHECK(v == doctest::Approx(0.5));
  }

  TEST_CASE("tensor_inverse") {
    const auto u = TruncatedTensor::unit(2, 3);
    CHECK(max_abs_diff(tensor_inverse(u), u) == 0.0);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (std::size_t d = 1; d <= 3; ++d) {
      std::vector<double> delta(d);
      for (auto& x : delta) x = g(rng);
      std::vector<double> neg(d);
      std::transform(delta.begin(), delta.end(), neg.begin(), [](double x) { return -x; });
      CHECK(max_abs_diff(tensor_inverse(tensor_exp(delta, 3)), tensor_exp(neg, 3)) <= 1e-12);
    }

    for (int rep = 0; rep < 20; ++rep) {
      const auto sig = path_signature(testing::random_path(rng, 3, 6), 3);
      CHECK(max_abs_diff(tensor_mul(sig, tensor_inverse(sig)), TruncatedTensor::unit(3, 3)) <=
            1e-12);
    }

    TruncatedTensor bad(2, 2);
    CHECK_THROWS_AS(tensor_inverse(bad), InputError);
  }

  TEST_CASE("axis path signature") {
    const Points pts{{0, 0}, {1, 0}, {1, 1}};
    const auto s = path_signature(pts, 2);
    CHECK(s.coeff({0}) == 1.0);
    CHECK(s.coeff({1}) == 1.0);
    CHECK(s.coeff({0, 0}) == doctest::Approx(0.5));
    CHECK(s.coeff({0, 1}) == doctest::Approx(1.0));
    CHECK(s.coeff({1, 0}) == doctest::Approx(0.0));
    CHECK(s.coeff({1, 1}) == doctest::Approx(0.5));
  }

  TEST_CASE("single point gives the unit tensor") {
    const Points pts{{0.3, -2.0, 5.0}};
    CHECK(max_abs_diff(path_signature(pts, 3), TruncatedTensor::unit(3, 3)) == 0.0);
  }

  TEST_CASE("path_signature input errors") {
    CHECK_THROWS_AS(path_signature(Points{}, 2), InputError);
    CHECK_THROWS_AS(path_signature(Points{{0, 0}, {1, 0, 0}}, 2), InputError);
  }

  TEST_CASE("quadrature oracle agreement, d=2 n=3") {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 5; ++rep) {
      const auto pts = testing::random_path(rng, 2, 5);
      const auto sig = path_signature(pts, 3);
      const auto ref = oracle::iterated_integrals(pts, 3);
      for (const auto& [w, v] : ref) {
        Word word(w.begin(), w.end());
        CHECK(std::abs(sig.coeff(word) - v) <= 1e-6);
      }
    }
  }

  TEST_CASE("extend_by_segment equals appending a point") {
    std::mt19937_64 rng(5);
    auto pts = testing::random_path(rng, 3, 4);
    auto sig = path_signature(pts, 3);
    const std::vector<double> delta{0.25, -1.0, 0.5};
    extend_by_segment(sig, delta);
    auto last = pts.back();
    for (std::size_t a = 0; a < 3; ++a) last[a] += delta[a];
    pts.push_back(last);
    CHECK(max_abs_diff(sig, path_signature(pts, 3)) <= 1e-12);
  }

  TEST_CASE("Chen identity on random splits") {
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 50; ++rep) {
      const auto pts = testing::random_path(rng, 3, 8);
      const std::size_t k = 1 + rep % 6;
      const Points prefix(pts.begin(), pts.begin() + static_cast<long>(k) + 1);
      const Points suffix(pts.begin() + static_cast<long>(k), pts.end());
      const auto whole = path_signature(pts, 4);
      const auto chen = tensor_mul(path_signature(prefix, 4), path_signature(suffix, 4));
      CHECK(max_abs_diff(whole, chen) <= 1e-12);
    }
  }

  TEST_CASE("level 1 is the displacement, exactly") {
    std::mt19937_64 rng(7);
    const auto pts = testing::random_path(rng, 4, 10);
    const auto sig = path_signature(pts, 2);
    // increments are summed in path order, as the algebra does
    for (std::size_t a = 0; a < 4; ++a) {
      double acc = 0.0;
      for (std::size_t i = 1; i < pts.size(); ++i) acc += pts[i][a] - pts[i - 1][a];
      CHECK(sig.level(1)[a] == acc);
    }
  }

  TEST_CASE("shuffle product examples") {
    auto as_set = [](const std::vector<Word>& v) { return std::multiset<Word>(v.begin(), v.end()); };
    CHECK(as_set(shuffle_product({0}, {1})) == std::multiset<Word>{{0, 1}, {1, 0}});
    CHECK(as_set(shuffle_product({0}, {})) == std::multiset<Word>{{0}});
    CHECK(as_set(shuffle_product({0, 1}, {2})) ==
          std::multiset<Word>{{2, 0, 1}, {0, 2, 1}, {0, 1, 2}});
    CHECK(shuffle_product({0, 0}, {0}).size() == 3);
    CHECK(shuffle_product({0, 1}, {2, 3}).size() == 6);
  }

  TEST_CASE("feature vectors") {
    CHECK(feature_vector(TruncatedTensor::unit(7, 2)).size() == 56);
    CHECK(feature_vector(TruncatedTensor(7, 3)).size() == 399);
    CHECK(feature_vector(TruncatedTensor(7, 4)).size() == 2800);
    for (double v : feature_vector(TruncatedTensor::unit(7, 2))) CHECK(v == 0.0);

    const auto names = feature_names(2, 2);
    REQUIRE(names.size() == 6);
    CHECK(names.front() == "s_1");
    CHECK(names[2] == "s_1_1");
    CHECK(names.back() == "s_2_2");
    CHECK(feature_names(7, 3).size() == 399);
  }
}

TEST_SUITE("sigcore properties") {
  TEST_CASE("Chen identity, mixed dimensions") { CHECK(testing::chen_violation(40, 11) <= 1e-12); }
  TEST_CASE("shuffle identity") { CHECK(testing::shuffle_violation(20, 12) <= 1e-9); }
  TEST_CASE("reversal gives the inverse") { CHECK(testing::reversal_violation(40, 13) <= 1e-9); }
  TEST_CASE("midpoint refinement") { CHECK(testing::refinement_violation(40, 14) <= 1e-12); }
  TEST_CASE("level 1 displacement") { CHECK(testing::displacement_mismatches(40, 15) == 0); }
}
