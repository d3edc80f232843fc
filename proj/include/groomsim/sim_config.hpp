#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace groomsim {

// Full parameter set of one simulation run. The cost of a grooming act is
// c(d) = alpha * d / t + beta for reinforcement and beta for a new tie;
// each groomer spends a budget of r0 per step.
struct SimConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double r0 = 0.0;
  std::int32_t steps = 0;
  std::int32_t groomers = 0;
  std::vector<double> q_values;  // one per groomer, in [0, 1]
  std::optional<std::int64_t> groomee_pool;  // nullopt = unbounded
  std::uint64_t seed = 1;
};

// n probabilities evenly spaced over [0, 1], endpoints included.
inline std::vector<double> even_q_grid(std::int32_t n) {
  if (n < 1) throw std::invalid_argument("even_q_grid: n < 1");
  std::vector<double> q(static_cast<std::size_t>(n));
  if (n == 1) {
    q[0] = 0.5;
    return q;
  }
  for (std::int32_t i = 0; i < n; ++i)
    q[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(n - 1);
  return q;
}

// Throws std::invalid_argument naming the offending field.
inline void validate_config(const SimConfig& cfg) {
  if (!(cfg.alpha >= 0.0))
    throw std::invalid_argument("alpha: must be >= 0");
  if (!(cfg.beta > 0.0)) throw std::invalid_argument("beta: must be > 0");
  if (!(cfg.r0 > 0.0)) throw std::invalid_argument("r0: must be > 0");
  if (cfg.steps < 1) throw std::invalid_argument("steps: must be >= 1");
  if (cfg.groomers < 1)
    throw std::invalid_argument("groomers: must be >= 1");
  if (cfg.q_values.size() != static_cast<std::size_t>(cfg.groomers))
    throw std::invalid_argument(
        "q_values: length must equal the groomer count");
  for (double q : cfg.q_values)
    if (!(q >= 0.0 && q <= 1.0))
      throw std::invalid_argument("q_values: entries must lie in [0, 1]");
  if (cfg.groomee_pool && *cfg.groomee_pool < 1)
    throw std::invalid_argument("groomee_pool: must be >= 1 or unbounded");
}

}  // namespace groomsim
