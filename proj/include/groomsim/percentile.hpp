#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace groomsim {

// Nearest-rank percentile of a sorted sample: the smallest element such that
// at least p percent of the sample is <= it. Requires 0 <= p < 100.
template <typename T>
T nearest_rank_percentile(std::span<const T> sorted, double p) {
  if (sorted.empty())
    throw std::invalid_argument("nearest_rank_percentile: empty sample");
  if (p < 0.0 || p >= 100.0)
    throw std::invalid_argument("nearest_rank_percentile: p outside [0, 100)");
  auto rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(sorted.size())));
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

// Percentile with linear interpolation between order statistics.
inline double interpolated_percentile(std::span<const double> sorted,
                                      double p) {
  if (sorted.empty())
    throw std::invalid_argument("interpolated_percentile: empty sample");
  if (p < 0.0 || p > 100.0)
    throw std::invalid_argument("interpolated_percentile: p outside [0, 100]");
  const double h = static_cast<double>(sorted.size() - 1) * p / 100.0;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace groomsim
