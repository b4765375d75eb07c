#pragma once

// Truncated tensor algebra over R^d and exact signatures of piecewise-linear
// paths.
//
// A TruncatedTensor of order n over a d-letter alphabet stores levels 0..n.
// Level k is a dense block of d^k coefficients indexed by words of length k
// in lexicographic order: the word (i_1, ..., i_k) with 0-based letters lives
// at offset i_1 d^{k-1} + ... + i_k. All levels are packed into one flat
// buffer, level 0 first.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace moodsig {

/// Number of coefficients in a truncated tensor: sum_{k=0..n} d^k.
std::size_t tensor_dim(std::size_t d, std::size_t n);

/// A word over {0..d-1}. Letters are 0-based in code; human-facing output
/// (CSV headers, docs) uses 1-based letters.
using Word = std::vector<std::size_t>;

class TruncatedTensor {
 public:
  TruncatedTensor(std::size_t d, std::size_t n);

  /// The multiplicative identity (1, 0, 0, ...).
  static TruncatedTensor unit(std::size_t d, std::size_t n);

  std::size_t alphabet() const noexcept { return d_; }
  std::size_t order() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<double> level(std::size_t k);
  std::span<const double> level(std::size_t k) const;

  /// Coefficient of a word of length <= order(); the empty word is level 0.
  double coeff(const Word& w) const;
  double& coeff(const Word& w);

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  bool same_shape(const TruncatedTensor& other) const noexcept {
    return d_ == other.d_ && n_ == other.n_;
  }

 private:
  std::size_t offset_of(const Word& w) const;

  std::size_t d_;
  std::size_t n_;
  std::vector<double> data_;
  std::vector<std::size_t> level_offset_;
};

/// Truncated tensor product. Throws ShapeError on mismatched (d, n).
TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b);

/// exp(delta) = sum_k delta^{(x)k} / k!, the signature of one straight segment.
TruncatedTensor tensor_exp(std::span<const double> delta, std::size_t n);

/// Inverse of a tensor with level-0 coefficient exactly 1, via the truncated
/// geometric series sum_k (1 - a)^k. Throws InputError otherwise.
TruncatedTensor tensor_inverse(const TruncatedTensor& a);

/// Signature of the piecewise-linear path through `points` (row-major, each
/// row one d-vector), truncated at order n. Segments are folded left to right.
TruncatedTensor path_signature(std::span<const std::vector<double>> points,
                               std::size_t n);

/// Incremental form of path_signature: extend `sig` by one more segment.
void extend_by_segment(TruncatedTensor& sig, std::span<const double> delta);

/// All interleavings of u and v preserving each word's internal order, with
/// multiplicity. (|u|+|v| choose |u|) words.
std::vector<Word> shuffle_product(const Word& u, const Word& v);

/// Levels 1..n concatenated; length tensor_dim(d, n) - 1.
std::vector<double> feature_vector(const TruncatedTensor& sig);

/// Human-readable names for feature_vector entries, e.g. "s_1_3" for the word
/// (1,3) with 1-based letters.
std::vector<std::string> feature_names(std::size_t d, std::size_t n);

}  // namespace moodsig
