#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "groomsim/ledger.hpp"
#include "groomsim/parallel.hpp"
#include "groomsim/rng.hpp"
#include "groomsim/sim_config.hpp"

namespace groomsim {

// Cost of reinforcing a tie of strength d at step t. d is the strength
// before the increment; t is the 1-based step index, so d / t is the tie's
// grooming density.
inline double grooming_cost(double d, std::int32_t t, double alpha,
                            double beta) {
  if (t < 1) throw std::domain_error("grooming_cost: step index must be >= 1");
  return alpha * d / static_cast<double>(t) + beta;
}

// Yule-Simon partner pick: j is selected with probability d_ij over the sum
// of strengths of non-excluded partners. `draw` is uniform in [0, 1).
// Returns nullopt when no partner is eligible.
inline std::optional<UserId> select_partner(
    std::span<const std::pair<UserId, double>> strengths,
    const std::unordered_set<UserId>& excluded, double draw) {
  double total = 0.0;
  for (const auto& [id, d] : strengths)
    if (!excluded.contains(id)) total += d;
  if (!(total > 0.0)) return std::nullopt;
  const double target = draw * total;
  double cum = 0.0;
  std::optional<UserId> last;
  for (const auto& [id, d] : strengths) {
    if (excluded.contains(id)) continue;
    cum += d;
    last = id;
    if (cum > target) return id;
  }
  return last;  // rounding tail
}

// Per-groomer budget audit for one step.
struct SpendRecord {
  std::int32_t step = 0;
  UserId groomer = 0;
  double spent = 0.0;
  std::int32_t actions = 0;

  friend bool operator==(const SpendRecord&, const SpendRecord&) = default;
};

struct SimResult {
  RelationshipLedger ledger;            // t_obs = steps
  std::vector<InteractionEvent> trace;  // ordered by (step, groomer, action)
  std::vector<SpendRecord> audit;       // ordered by (step, groomer)
  IdTable ids;
};

namespace detail {

// Whole-run trajectory of a single groomer. Groomers never interact
// (groomees are passive and minted per groomer), so trajectories are
// independent and safe to compute in parallel.
struct GroomerRun {
  struct Act {
    std::int32_t step;
    std::int64_t partner;  // groomer-local partner index, in mint order
    double increment;
  };
  std::vector<Act> acts;
  std::vector<double> final_strengths;           // by local partner index
  std::vector<std::vector<std::int32_t>> days;   // by local partner index
  std::vector<std::pair<double, std::int32_t>> step_spend;  // (spent, actions)
};

inline GroomerRun run_groomer(const SimConfig& cfg, std::int32_t groomer) {
  std::mt19937_64 rng(
      derive_seed(cfg.seed, static_cast<std::uint64_t>(groomer)));
  const double q = cfg.q_values[static_cast<std::size_t>(groomer)];

  GroomerRun run;
  run.step_spend.reserve(static_cast<std::size_t>(cfg.steps));
  std::vector<double> strengths;
  std::vector<std::int32_t> last_groomed;  // step stamp, 0 = never

  for (std::int32_t t = 1; t <= cfg.steps; ++t) {
    double resource = cfg.r0;
    double spent = 0.0;
    std::int32_t actions = 0;
    std::size_t groomed_this_step = 0;

    while (resource > 0.0) {
      const bool can_create =
          !cfg.groomee_pool ||
          static_cast<std::int64_t>(strengths.size()) < *cfg.groomee_pool;
      const bool can_reinforce = groomed_this_step < strengths.size();
      if (!can_create && !can_reinforce) break;

      bool create = uniform_unit(rng) < q;
      // The chosen branch falls back to the other one when it is impossible
      // (no fresh groomee left, or every partner already groomed this step).
      if (create && !can_create) create = false;
      if (!create && !can_reinforce) create = true;

      double increment = 0.0;
      std::size_t partner = 0;
      if (create) {
        const double cost = cfg.beta;
        if (resource < cost) {
          increment = resource / cost;
          spent += resource;
          resource = 0.0;
        } else {
          increment = 1.0;
          spent += cost;
          resource -= cost;
        }
        partner = strengths.size();
        strengths.push_back(increment);
        last_groomed.push_back(t);
        run.days.emplace_back();
      } else {
        double eligible_total = 0.0;
        for (std::size_t k = 0; k < strengths.size(); ++k)
          if (last_groomed[k] != t) eligible_total += strengths[k];
        const double target = uniform_unit(rng) * eligible_total;
        double cum = 0.0;
        std::size_t pick = 0;
        bool found = false;
        for (std::size_t k = 0; k < strengths.size(); ++k) {
          if (last_groomed[k] == t) continue;
          cum += strengths[k];
          pick = k;
          if (cum > target) {
            found = true;
            break;
          }
        }
        (void)found;  // cum rounding can leave the last eligible partner
        const double cost = grooming_cost(strengths[pick], t, cfg.alpha,
                                          cfg.beta);
        if (resource < cost) {
          increment = resource / cost;
          spent += resource;
          resource = 0.0;
        } else {
          increment = 1.0;
          spent += cost;
          resource -= cost;
        }
        strengths[pick] += increment;
        last_groomed[pick] = t;
        partner = pick;
      }
      ++groomed_this_step;
      ++actions;
      run.days[partner].push_back(t);
      run.acts.push_back({t, static_cast<std::int64_t>(partner), increment});
    }
    run.step_spend.emplace_back(spent, actions);
  }
  run.final_strengths = std::move(strengths);
  return run;
}

inline std::string groomer_token(std::int32_t index, std::int32_t count) {
  const std::size_t width = std::to_string(count > 1 ? count - 1 : 0).size();
  std::string digits = std::to_string(index);
  std::string token = "g";
  if (digits.size() < width) token.append(width - digits.size(), '0');
  token += digits;
  return token;
}

}  // namespace detail

// Runs the full grooming model: for each step every groomer resets its
// budget to r0 and keeps acting while resource remains — with probability
// q_i it bonds with a fresh stranger at strength 1 for cost beta, otherwise
// it reinforces an existing tie picked proportionally to strength, adding 1
// for cost c(d) = alpha * d / t + beta. When the budget cannot cover a full
// act the groomer pays what is left for a proportional partial increment.
// A groomee is never groomed twice within one step.
inline SimResult run_simulation(const SimConfig& cfg, int threads = 1) {
  validate_config(cfg);

  std::vector<detail::GroomerRun> runs(
      static_cast<std::size_t>(cfg.groomers));
  parallel_for(runs.size(), threads, [&](std::size_t g) {
    runs[g] = detail::run_groomer(cfg, static_cast<std::int32_t>(g));
  });

  SimResult result;
  result.ledger.t_obs = cfg.steps;

  std::vector<UserId> groomer_ids(runs.size());
  for (std::size_t g = 0; g < runs.size(); ++g)
    groomer_ids[g] =
        result.ids.intern(detail::groomer_token(
            static_cast<std::int32_t>(g), cfg.groomers));

  std::vector<std::vector<UserId>> partner_ids(runs.size());
  std::size_t total_acts = 0;
  for (std::size_t g = 0; g < runs.size(); ++g) {
    const auto& run = runs[g];
    total_acts += run.acts.size();
    partner_ids[g].reserve(run.final_strengths.size());
    const std::string base = result.ids.name(groomer_ids[g]);
    for (std::size_t k = 0; k < run.final_strengths.size(); ++k) {
      std::string token = base + "_p" + std::to_string(k);
      partner_ids[g].push_back(result.ids.intern(token));
    }
    for (std::size_t k = 0; k < run.final_strengths.size(); ++k) {
      PairRecord rec;
      rec.strength = run.final_strengths[k];
      rec.days = run.days[k];
      result.ledger.pairs.emplace(
          pair_key(groomer_ids[g], partner_ids[g][k]), std::move(rec));
    }
  }

  // Merge traces into (step, groomer, action) order. Per-groomer acts are
  // already chronological, so a stable sort on the step alone suffices.
  result.trace.reserve(total_acts);
  for (std::size_t g = 0; g < runs.size(); ++g)
    for (const auto& act : runs[g].acts)
      result.trace.push_back({act.step, groomer_ids[g],
                              partner_ids[g][static_cast<std::size_t>(
                                  act.partner)],
                              act.increment});
  std::stable_sort(result.trace.begin(), result.trace.end(),
                   [](const InteractionEvent& a, const InteractionEvent& b) {
                     return a.day < b.day;
                   });

  result.audit.reserve(static_cast<std::size_t>(cfg.steps) * runs.size());
  for (std::int32_t t = 1; t <= cfg.steps; ++t)
    for (std::size_t g = 0; g < runs.size(); ++g) {
      const auto& [spent, actions] =
          runs[g].step_spend[static_cast<std::size_t>(t - 1)];
      result.audit.push_back({t, groomer_ids[g], spent, actions});
    }
  return result;
}

// Rebuilds the ledger from a simulation trace by accumulating strength
// increments. Produces the SimResult ledger bit-exactly because increments
// are re-added in the same (chronological) order per pair.
inline RelationshipLedger replay_trace(
    std::span<const InteractionEvent> trace, std::int32_t t_obs) {
  RelationshipLedger ledger;
  ledger.t_obs = t_obs;
  std::int32_t prev_day = 1;
  for (const auto& e : trace) {
    if (e.day < prev_day)
      throw std::invalid_argument("replay_trace: out-of-order steps");
    if (e.day < 1 || e.day > t_obs)
      throw std::invalid_argument("replay_trace: step outside [1, t_obs]");
    prev_day = e.day;
    auto& rec = ledger.pairs[pair_key(e.groomer, e.groomee)];
    rec.strength += e.volume;
    if (rec.days.empty() || rec.days.back() != e.day)
      rec.days.push_back(e.day);
  }
  return ledger;
}

}  // namespace groomsim
