#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "groomsim/ledger.hpp"
#include "groomsim/percentile.hpp"

namespace groomsim {

// One aggregate of per-(pair, day) communication volume. `key` is the tie
// strength d or the lower edge of a density d/t bucket; `label` names the
// percentile ("25", "50", "75") or the period fraction ("f=1", "f=0.9").
struct VolumeRow {
  double key = 0.0;
  std::string label;
  double value = 0.0;
  std::size_t n = 0;
};

struct VolumeTable {
  std::vector<VolumeRow> rows;
  std::size_t min_count = 0;  // rows present only when n > min_count
};

namespace detail {

inline std::string short_number(double v) {
  std::string s = std::to_string(v);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

// Per-pair daily volumes: same-day events to the same partner accumulate.
inline std::unordered_map<std::uint64_t,
                          std::vector<std::pair<std::int32_t, double>>>
daily_volumes(std::span<const InteractionEvent> events) {
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::int32_t, double>>>
      by_pair;
  for (const auto& e : events)
    by_pair[pair_key(e.groomer, e.groomee)].emplace_back(e.day, e.volume);
  for (auto& [key, list] : by_pair) {
    std::sort(list.begin(), list.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < list.size(); ++r) {
      if (w > 0 && list[w - 1].first == list[r].first)
        list[w - 1].second += list[r].second;
      else
        list[w++] = list[r];
    }
    list.resize(w);
  }
  return by_pair;
}

}  // namespace detail

// Daily volumes grouped by the pair's final strength; emits the requested
// percentiles (linear interpolation) for groups with n > min_count.
inline VolumeTable volume_by_strength(
    std::span<const InteractionEvent> events, const RelationshipLedger& ledger,
    std::span<const double> percentiles, std::size_t min_count = 20) {
  if (events.empty())
    throw std::runtime_error("volume_by_strength: no volumes present");
  auto by_pair = detail::daily_volumes(events);

  std::map<double, std::vector<double>> groups;
  for (const auto& [key, list] : by_pair) {
    auto it = ledger.pairs.find(key);
    if (it == ledger.pairs.end()) continue;
    auto& bucket = groups[it->second.strength];
    for (const auto& [day, v] : list) bucket.push_back(v);
  }

  VolumeTable table;
  table.min_count = min_count;
  for (auto& [strength, values] : groups) {
    if (values.size() <= min_count) continue;
    std::sort(values.begin(), values.end());
    for (double p : percentiles)
      table.rows.push_back({strength, detail::short_number(p),
                            interpolated_percentile(values, p),
                            values.size()});
  }
  return table;
}

// Median daily volume bucketed by grooming density d/t, recomputed for each
// truncated period fraction f: the log is cut to its first ceil(f * t_obs)
// days and strengths are re-counted inside the cut. Buckets have fixed
// width (1/t_obs unless overridden); the row key is the bucket's lower
// edge and the label records the fraction, so period curves can be
// overlaid.
inline VolumeTable volume_by_density(
    std::span<const InteractionEvent> events, const RelationshipLedger& ledger,
    std::span<const double> fractions, std::size_t min_count = 20,
    double bucket_width = 0.0) {
  if (events.empty())
    throw std::runtime_error("volume_by_density: no volumes present");
  if (ledger.t_obs < 1)
    throw std::invalid_argument("volume_by_density: t_obs < 1");
  for (double f : fractions)
    if (!(f > 0.0 && f <= 1.0))
      throw std::invalid_argument(
          "volume_by_density: fraction outside (0, 1]");
  const double width =
      bucket_width > 0.0 ? bucket_width : 1.0 / ledger.t_obs;

  auto by_pair = detail::daily_volumes(events);

  VolumeTable table;
  table.min_count = min_count;
  for (double f : fractions) {
    const auto t_cut = static_cast<std::int32_t>(
        std::ceil(f * static_cast<double>(ledger.t_obs)));
    std::map<std::int64_t, std::vector<double>> buckets;
    for (const auto& [key, list] : by_pair) {
      std::int32_t day_count = 0;
      for (const auto& [day, v] : list)
        if (day <= t_cut) ++day_count;
      if (day_count == 0) continue;
      const double density = static_cast<double>(day_count) / t_cut;
      const auto bucket =
          static_cast<std::int64_t>(std::floor(density / width + 1e-9));
      auto& values = buckets[bucket];
      for (const auto& [day, v] : list)
        if (day <= t_cut) values.push_back(v);
    }
    for (auto& [bucket, values] : buckets) {
      if (values.size() <= min_count) continue;
      std::sort(values.begin(), values.end());
      table.rows.push_back({static_cast<double>(bucket) * width,
                            "f=" + detail::short_number(f),
                            interpolated_percentile(values, 50.0),
                            values.size()});
    }
  }
  return table;
}

}  // namespace groomsim
