#pragma once

// Test-only oracle: iterated integrals of a piecewise-linear path by direct
// numerical quadrature. Shares no code with the tensor-algebra route.

#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

using Word = std::vector<int>;  // 0-based letters

// Enumerates every word of length 1..depth over {0..d-1}, shortest first,
// lexicographic within a length.
inline std::vector<Word> all_words(int d, int depth) {
  std::vector<Word> out;
  std::vector<Word> frontier{Word{}};
  for (int k = 1; k <= depth; ++k) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (int a = 0; a < d; ++a) {
        Word v = w;
        v.push_back(a);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Parametrizes the path on [0,1] with equal time per segment, splits [0,1]
// into `subintervals` pieces and accumulates
//   I_{w a}(t + h) = I_{w a}(t) + I_w(t + h/2) * dX_a
// with I_w at the midpoint taken as the average of its endpoint values.
inline std::map<Word, double> iterated_integrals(
    const std::vector<std::vector<double>>& points, int depth,
    std::size_t subintervals = 10000) {
  const int d = static_cast<int>(points.front().size());
  const auto words = all_words(d, depth);
  std::map<Word, double> value;
  for (const auto& w : words) value[w] = 0.0;
  if (points.size() < 2) return value;

  const std::size_t segments = points.size() - 1;
  auto position = [&](double t) {
    double s = t * static_cast<double>(segments);
    std::size_t j = static_cast<std::size_t>(s);
    if (j >= segments) j = segments - 1;
    double frac = s - static_cast<double>(j);
    std::vector<double> x(d);
    for (int a = 0; a < d; ++a)
      x[a] = points[j][a] + frac * (points[j + 1][a] - points[j][a]);
    return x;
  };

  const double h = 1.0 / static_cast<double>(subintervals);
  std::vector<double> prev = position(0.0);
  for (std::size_t i = 0; i < subintervals; ++i) {
    std::vector<double> cur = position(static_cast<double>(i + 1) * h);
    std::vector<double> dx(d);
    for (int a = 0; a < d; ++a) dx[a] = cur[a] - prev[a];

    // words are ordered by length, so each prefix increment is ready first
    std::map<Word, double> inc;
    for (const auto& w : words) {
      const int a = w.back();
      if (w.size() == 1) {
        inc[w] = dx[a];
      } else {
        Word prefix(w.begin(), w.end() - 1);
        inc[w] = (value[prefix] + 0.5 * inc[prefix]) * dx[a];
      }
    }
    for (const auto& w : words) value[w] += inc[w];
    prev = std::move(cur);
  }
  return value;
}

}  // namespace oracle
