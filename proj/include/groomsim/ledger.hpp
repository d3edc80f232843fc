#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "groomsim/event.hpp"
#include "groomsim/percentile.hpp"

namespace groomsim {

inline std::uint64_t pair_key(UserId groomer, UserId groomee) {
  return (static_cast<std::uint64_t>(groomer) << 32) | groomee;
}
inline UserId pair_groomer(std::uint64_t key) {
  return static_cast<UserId>(key >> 32);
}
inline UserId pair_groomee(std::uint64_t key) {
  return static_cast<UserId>(key & 0xffffffffu);
}

// State of one directed tie: accumulated strength plus the distinct days on
// which grooming happened.
struct PairRecord {
  double strength = 0.0;
  std::vector<std::int32_t> days;  // sorted, unique

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

// Directed tie store over an observation period of t_obs days. For empirical
// logs the strength is the distinct-day count; simulated ledgers carry
// fractional strengths from partial payments.
struct RelationshipLedger {
  std::unordered_map<std::uint64_t, PairRecord> pairs;
  std::int32_t t_obs = 0;

  bool empty() const noexcept { return pairs.empty(); }
  std::size_t size() const noexcept { return pairs.size(); }

  double strength(UserId groomer, UserId groomee) const {
    auto it = pairs.find(pair_key(groomer, groomee));
    return it == pairs.end() ? 0.0 : it->second.strength;
  }

  friend bool operator==(const RelationshipLedger&,
                         const RelationshipLedger&) = default;
};

// Builds the day-count ledger: d_ij = number of distinct days with at least
// one i->j event. Repeated same-day events never change d_ij.
inline RelationshipLedger build_ledger(std::span<const InteractionEvent> events,
                                       std::int32_t t_obs) {
  if (t_obs < 0) throw std::invalid_argument("build_ledger: t_obs < 0");
  RelationshipLedger ledger;
  ledger.t_obs = t_obs;
  for (const auto& e : events) {
    if (e.day < 1 || e.day > t_obs)
      throw std::invalid_argument("build_ledger: event day outside [1, t_obs]");
    if (e.groomer == e.groomee)
      throw std::invalid_argument("build_ledger: self-loop event");
    if (!(e.volume >= 0.0))
      throw std::invalid_argument("build_ledger: negative volume");
    ledger.pairs[pair_key(e.groomer, e.groomee)].days.push_back(e.day);
  }
  for (auto& [key, rec] : ledger.pairs) {
    std::sort(rec.days.begin(), rec.days.end());
    rec.days.erase(std::unique(rec.days.begin(), rec.days.end()),
                   rec.days.end());
    rec.strength = static_cast<double>(rec.days.size());
  }
  return ledger;
}

// Per-groomer summary: partner count N, mean outgoing strength m, and count
// of distinct active days u. N * m equals the total outgoing strength.
struct UserSummary {
  UserId user = 0;
  std::int32_t partners = 0;      // N
  double mean_strength = 0.0;     // m
  std::int32_t active_days = 0;   // u
  double total_strength = 0.0;    // N * m

  friend bool operator==(const UserSummary&, const UserSummary&) = default;
};

inline std::vector<UserSummary> user_summaries(
    const RelationshipLedger& ledger) {
  struct Accum {
    std::int32_t partners = 0;
    double total = 0.0;
    std::vector<std::int32_t> days;
  };
  std::unordered_map<UserId, Accum> by_user;
  for (const auto& [key, rec] : ledger.pairs) {
    auto& acc = by_user[pair_groomer(key)];
    acc.partners += 1;
    acc.total += rec.strength;
    acc.days.insert(acc.days.end(), rec.days.begin(), rec.days.end());
  }
  std::vector<UserSummary> out;
  out.reserve(by_user.size());
  for (auto& [user, acc] : by_user) {
    std::sort(acc.days.begin(), acc.days.end());
    acc.days.erase(std::unique(acc.days.begin(), acc.days.end()),
                   acc.days.end());
    out.push_back({user, acc.partners, acc.total / acc.partners,
                   static_cast<std::int32_t>(acc.days.size()), acc.total});
  }
  std::sort(out.begin(), out.end(),
            [](const UserSummary& a, const UserSummary& b) {
              return a.user < b.user;
            });
  return out;
}

// Retains users whose active-day count u is strictly greater than the p-th
// nearest-rank percentile of u over all users.
inline std::vector<UserId> active_user_filter(
    std::span<const UserSummary> summaries, double percentile) {
  if (summaries.empty())
    throw std::invalid_argument("active_user_filter: empty summaries");
  std::vector<std::int32_t> u_values;
  u_values.reserve(summaries.size());
  for (const auto& s : summaries) u_values.push_back(s.active_days);
  std::sort(u_values.begin(), u_values.end());
  const std::int32_t threshold = nearest_rank_percentile(
      std::span<const std::int32_t>(u_values), percentile);
  std::vector<UserId> retained;
  for (const auto& s : summaries)
    if (s.active_days > threshold) retained.push_back(s.user);
  return retained;
}

}  // namespace groomsim
