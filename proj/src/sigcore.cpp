#include "moodsig/sigcore.hpp"

#include <string>
#include <utility>

#include "moodsig/errors.hpp"

namespace moodsig {

std::size_t tensor_dim(std::size_t d, std::size_t n) {
  std::size_t total = 0;
  std::size_t block = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    total += block;
    block *= d;
  }
  return total;
}

TruncatedTensor::TruncatedTensor(std::size_t d, std::size_t n) : d_(d), n_(n) {
  if (d == 0) throw InputError("alphabet size must be positive");
  level_offset_.resize(n + 2);
  std::size_t block = 1;
  level_offset_[0] = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    level_offset_[k + 1] = level_offset_[k] + block;
    block *= d;
  }
  data_.assign(level_offset_[n + 1], 0.0);
}

TruncatedTensor TruncatedTensor::unit(std::size_t d, std::size_t n) {
  TruncatedTensor t(d, n);
  t.data_[0] = 1.0;
  return t;
}

std::span<double> TruncatedTensor::level(std::size_t k) {
  return std::span<double>(data_).subspan(level_offset_[k],
                                          level_offset_[k + 1] - level_offset_[k]);
}

std::span<const double> TruncatedTensor::level(std::size_t k) const {
  return std::span<const double>(data_).subspan(
      level_offset_[k], level_offset_[k + 1] - level_offset_[k]);
}

std::size_t TruncatedTensor::offset_of(const Word& w) const {
  if (w.size() > n_)
    throw ShapeError("word of length " + std::to_string(w.size()) +
                     " exceeds truncation order " + std::to_string(n_));
  std::size_t idx = 0;
  for (std::size_t letter : w) {
    if (letter >= d_) throw ShapeError("letter outside alphabet");
    idx = idx * d_ + letter;
  }
  return level_offset_[w.size()] + idx;
}

double TruncatedTensor::coeff(const Word& w) const { return data_[offset_of(w)]; }
double& TruncatedTensor::coeff(const Word& w) { return data_[offset_of(w)]; }

TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b) {
  if (!a.same_shape(b)) throw ShapeError("tensor_mul: operands differ in (d, n)");
  const std::size_t d = a.alphabet();
  const std::size_t n = a.order();
  TruncatedTensor out(d, n);
  for (std::size_t k = 0; k <= n; ++k) {
    auto dst = out.level(k);
    std::size_t right_len = 1;  // d^(k-i), starting at i = k
    for (std::size_t i = k + 1; i-- > 0;) {
      auto left = a.level(i);
      auto right = b.level(k - i);
      for (std::size_t u = 0; u < left.size(); ++u) {
        const double lu = left[u];
        if (lu == 0.0) continue;
        double* row = dst.data() + u * right_len;
        for (std::size_t v = 0; v < right_len; ++v) row[v] += lu * right[v];
      }
      right_len *= d;
    }
  }
  return out;
}

TruncatedTensor tensor_exp(std::span<const double> delta, std::size_t n) {
  const std::size_t d = delta.size();
  TruncatedTensor out = TruncatedTensor::unit(d, n);
  for (std::size_t k = 1; k <= n; ++k) {
    auto prev = std::as_const(out).level(k - 1);
    auto cur = out.level(k);
    const double inv_k = 1.0 / static_cast<double>(k);
    for (std::size_t u = 0; u < prev.size(); ++u)
      for (std::size_t a = 0; a < d; ++a) cur[u * d + a] = prev[u] * delta[a] * inv_k;
  }
  return out;
}

TruncatedTensor tensor_inverse(const TruncatedTensor& a) {
  if (a.data()[0] != 1.0)
    throw InputError("tensor_inverse: level-0 coefficient must be exactly 1");
  const std::size_t d = a.alphabet();
  const std::size_t n = a.order();
  // x = 1 - a has no level-0 part, so x^(n+1) vanishes in the truncated algebra.
  TruncatedTensor x(d, n);
  for (std::size_t i = 1; i < a.size(); ++i) x.data()[i] = -a.data()[i];

  TruncatedTensor result = TruncatedTensor::unit(d, n);
  TruncatedTensor power = TruncatedTensor::unit(d, n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = tensor_mul(power, x);
    for (std::size_t i = 0; i < result.size(); ++i) result.data()[i] += power.data()[i];
  }
  return result;
}

void extend_by_segment(TruncatedTensor& sig, std::span<const double> delta) {
  if (delta.size() != sig.alphabet())
    throw ShapeError("segment dimension does not match signature alphabet");
  sig = tensor_mul(sig, tensor_exp(delta, sig.order()));
}

TruncatedTensor path_signature(std::span<const std::vector<double>> points,
                               std::size_t n) {
  if (points.empty()) throw InputError("path_signature: empty point sequence");
  const std::size_t d = points.front().size();
  for (const auto& p : points)
    if (p.size() != d) throw InputError("path_signature: points differ in dimension");

  TruncatedTensor sig = TruncatedTensor::unit(d, n);
  std::vector<double> delta(d);
  for (std::size_t j = 1; j < points.size(); ++j) {
    for (std::size_t a = 0; a < d; ++a) delta[a] = points[j][a] - points[j - 1][a];
    extend_by_segment(sig, delta);
  }
  return sig;
}

namespace {

void shuffle_into(const Word& u, std::size_t i, const Word& v, std::size_t j,
                  Word& prefix, std::vector<Word>& out) {
  if (i == u.size() && j == v.size()) {
    out.push_back(prefix);
    return;
  }
  if (i < u.size()) {
    prefix.push_back(u[i]);
    shuffle_into(u, i + 1, v, j, prefix, out);
    prefix.pop_back();
  }
  if (j < v.size()) {
    prefix.push_back(v[j]);
    shuffle_into(u, i, v, j + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Word> shuffle_product(const Word& u, const Word& v) {
  std::vector<Word> out;
  Word prefix;
  prefix.reserve(u.size() + v.size());
  shuffle_into(u, 0, v, 0, prefix, out);
  return out;
}

std::vector<double> feature_vector(const TruncatedTensor& sig) {
  auto all = sig.data();
  return std::vector<double>(all.begin() + 1, all.end());
}

std::vector<std::string> feature_names(std::size_t d, std::size_t n) {
  std::vector<std::string> names;
  names.reserve(tensor_dim(d, n) - 1);
  std::vector<std::string> frontier{""};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::string> next;
    next.reserve(frontier.size() * d);
    for (const auto& stem : frontier)
      for (std::size_t a = 1; a <= d; ++a) next.push_back(stem + "_" + std::to_string(a));
    for (const auto& s : next) names.push_back("s" + s);
    frontier = std::move(next);
  }
  return names;
}

}  // namespace moodsig
