#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "groomsim/ledger.hpp"

namespace groomsim {

// Estimated probability that a tie at running strength d is groomed on the
// next calendar day, over the first `window_days` of the log.
struct AttachmentPoint {
  std::int32_t strength = 0;
  double probability = 0.0;
  std::size_t observations = 0;
};

struct AttachmentCurve {
  std::vector<AttachmentPoint> points;  // strictly increasing strength
  std::int32_t window_days = 0;
};

// Replays the log in day order; each (pair, day) state inside the window
// where the pair's running strength is d contributes one observation at
// level d, successful when the pair is groomed on the following day.
inline AttachmentCurve attachment_probability(
    std::span<const InteractionEvent> events, const RelationshipLedger& ledger,
    std::int32_t window_days) {
  if (window_days > ledger.t_obs)
    throw std::invalid_argument("attachment_probability: window > t_obs");
  if (window_days < 2)
    throw std::invalid_argument("attachment_probability: window < 2 days");

  std::int32_t first_day = 0;
  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> pair_days;
  for (const auto& e : events) {
    if (first_day == 0 || e.day < first_day) first_day = e.day;
    pair_days[pair_key(e.groomer, e.groomee)].push_back(e.day);
  }
  if (pair_days.empty())
    throw std::runtime_error("attachment_probability: window has no events");

  const std::int32_t window_end = first_day + window_days - 1;
  std::int32_t distinct_days = 0;
  {
    std::vector<std::int32_t> all;
    for (const auto& [key, days] : pair_days)
      for (std::int32_t d : days)
        if (d <= window_end) all.push_back(d);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    distinct_days = static_cast<std::int32_t>(all.size());
    if (distinct_days == 0)
      throw std::runtime_error("attachment_probability: window has no events");
  }
  if (distinct_days < 2)
    throw std::invalid_argument(
        "attachment_probability: events span fewer than 2 days");

  std::map<std::int32_t, std::pair<std::size_t, std::size_t>> levels;
  for (auto& [key, days] : pair_days) {
    std::sort(days.begin(), days.end());
    days.erase(std::unique(days.begin(), days.end()), days.end());
    while (!days.empty() && days.back() > window_end) days.pop_back();
    if (days.empty()) continue;
    std::size_t idx = 0;  // days[0..idx) are <= t
    for (std::int32_t t = days.front(); t <= window_end - 1; ++t) {
      while (idx < days.size() && days[idx] <= t) ++idx;
      const auto strength = static_cast<std::int32_t>(idx);
      const bool groomed_next = idx < days.size() && days[idx] == t + 1;
      auto& [total, success] = levels[strength];
      ++total;
      if (groomed_next) ++success;
    }
  }

  AttachmentCurve curve;
  curve.window_days = window_days;
  for (const auto& [strength, counts] : levels)
    curve.points.push_back({strength,
                            static_cast<double>(counts.second) /
                                static_cast<double>(counts.first),
                            counts.first});
  return curve;
}

}  // namespace groomsim
