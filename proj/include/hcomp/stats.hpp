#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "hcomp/errors.hpp"

namespace hcomp {

struct Summary {
  std::size_t count = 0;
  double mean = 0;
  double stddev = 0;  // sample standard deviation
  double stderr_ = 0;
};

inline Summary summarize(std::span<const double> xs) {
  Summary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  long double sum = 0;
  for (double x : xs) sum += x;
  s.mean = static_cast<double>(sum / static_cast<long double>(xs.size()));
  if (xs.size() > 1) {
    long double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(static_cast<double>(ss / static_cast<long double>(xs.size() - 1)));
    s.stderr_ = s.stddev / std::sqrt(static_cast<double>(xs.size()));
  }
  return s;
}

/// Linear-interpolation quantile (type 7), q in [0, 1].
inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw ParameterError("quantile of an empty sample");
  if (q < 0 || q > 1) throw ParameterError("quantile: q must lie in [0, 1]");
  std::sort(xs.begin(), xs.end());
  const double h = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

inline double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

}  // namespace hcomp
