#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "groomsim/parallel.hpp"
#include "groomsim/powerlaw.hpp"
#include "groomsim/regression.hpp"
#include "groomsim/rng.hpp"
#include "groomsim/simulation.hpp"

namespace groomsim {

// A regression line to reproduce, plus the simulation settings under which
// to reproduce it.
struct CalibrationTarget {
  double a = 0.0;
  double b = 0.0;
  double u_fixed = 0.0;
  std::int32_t steps = 0;
  double r0 = 0.0;
  std::int32_t groomers = 0;
  std::vector<double> q_values;
  std::int32_t replicates = 1;
  std::uint64_t seed = 1;
};

namespace detail {
inline constexpr std::uint64_t kReplicateStream = 0x726570ull;  // replicates

inline SimConfig target_sim_config(const CalibrationTarget& target,
                                   double alpha, double beta,
                                   std::int32_t replicate) {
  SimConfig cfg;
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.r0 = target.r0;
  cfg.steps = target.steps;
  cfg.groomers = target.groomers;
  cfg.q_values = target.q_values;
  cfg.seed = derive_seed(target.seed, kReplicateStream,
                         static_cast<std::uint64_t>(replicate));
  return cfg;
}
}  // namespace detail

// Mean squared residual of simulated groomers against the target line,
// pooled over replicates. Replicate seeds are derived from the master seed
// and do not depend on (alpha, beta), so repeated calls share random
// numbers and the objective surface is deterministic.
inline double objective(double alpha, double beta,
                        const CalibrationTarget& target, int threads = 1) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("objective: alpha < 0");
  if (!(beta > 0.0)) throw std::invalid_argument("objective: beta <= 0");
  if (!(target.u_fixed > 0.0))
    throw std::invalid_argument("objective: u_fixed must be > 0");
  if (target.replicates < 1)
    throw std::invalid_argument("objective: replicates must be >= 1");

  const double log_u = std::log(target.u_fixed);
  std::vector<std::pair<double, std::size_t>> partial(
      static_cast<std::size_t>(target.replicates));
  parallel_for(partial.size(), threads, [&](std::size_t r) {
    const SimConfig cfg = detail::target_sim_config(
        target, alpha, beta, static_cast<std::int32_t>(r));
    const SimResult sim = run_simulation(cfg);
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (const auto& s : user_summaries(sim.ledger)) {
      if (s.partners < 1 || !(s.mean_strength > 0.0)) continue;
      const double predicted =
          -target.a * std::log(s.mean_strength) + target.b * log_u;
      const double e = std::log(static_cast<double>(s.partners)) - predicted;
      sum_sq += e * e;
      ++count;
    }
    partial[r] = {sum_sq, count};
  });

  double sum_sq = 0.0;
  std::size_t count = 0;
  for (const auto& [s, c] : partial) {
    sum_sq += s;
    count += c;
  }
  if (count == 0)
    throw std::runtime_error("objective: simulation produced no groomers");
  return sum_sq / static_cast<double>(count);
}

struct CalibrationPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double mse = 0.0;
};

struct CalibrationResult {
  double alpha = 0.0;
  double beta = 0.0;
  double objective = 0.0;
  std::size_t evaluations = 0;
  std::vector<CalibrationPoint> trace;
  bool converged = false;
};

struct CalibrationOptions {
  std::vector<double> alpha_grid = {0.0, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  std::vector<double> beta_grid;  // default: 8 log-spaced points on [0.05, 1]
  std::int32_t nm_budget = 200;   // objective evaluations in the refinement
  double simplex_tol = 1e-3;
};

inline std::vector<double> default_beta_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 8; ++i)
    grid.push_back(0.05 * std::pow(20.0, i / 7.0));
  return grid;
}

// Coarse grid search over (alpha, beta) followed by Nelder-Mead from the
// best grid point. Stops when the simplex diameter drops below the
// tolerance or the evaluation budget is spent (convergence flag false).
inline CalibrationResult calibrate(const CalibrationTarget& target,
                                   CalibrationOptions options = {},
                                   int threads = 1) {
  if (options.beta_grid.empty()) options.beta_grid = default_beta_grid();
  if (options.alpha_grid.empty() || options.beta_grid.empty())
    throw std::invalid_argument("calibrate: empty search grid");

  CalibrationResult result;

  std::vector<CalibrationPoint> grid;
  for (double alpha : options.alpha_grid)
    for (double beta : options.beta_grid) grid.push_back({alpha, beta, 0.0});
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    grid[i].mse = objective(grid[i].alpha, grid[i].beta, target);
  });
  result.trace = grid;
  result.evaluations = grid.size();

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i].mse < grid[best].mse) best = i;

  // Nelder-Mead on the (alpha, beta) plane; infeasible points score +inf
  // without spending budget.
  struct Vertex {
    double a, b, f;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::int32_t evals_left = options.nm_budget;
  auto eval = [&](double alpha, double beta) -> double {
    if (alpha < 0.0 || beta <= 0.0) return inf;
    if (evals_left <= 0) return inf;
    --evals_left;
    const double f = objective(alpha, beta, target, threads);
    result.trace.push_back({alpha, beta, f});
    ++result.evaluations;
    return f;
  };

  if (options.nm_budget >= 3) {
    const double a0 = grid[best].alpha;
    const double b0 = grid[best].beta;
    const double ha = std::max(0.125, 0.25 * a0);
    const double hb = std::max(0.02, 0.25 * b0);
    std::array<Vertex, 3> v{{{a0, b0, grid[best].mse},
                             {a0 + ha, b0, 0.0},
                             {a0, b0 + hb, 0.0}}};
    v[1].f = eval(v[1].a, v[1].b);
    v[2].f = eval(v[2].a, v[2].b);

    auto diameter = [&v] {
      double d = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          d = std::max(d, std::hypot(v[i].a - v[j].a, v[i].b - v[j].b));
      return d;
    };

    while (evals_left > 0) {
      std::sort(v.begin(), v.end(),
                [](const Vertex& x, const Vertex& y) { return x.f < y.f; });
      if (diameter() < options.simplex_tol) {
        result.converged = true;
        break;
      }
      const double ca = 0.5 * (v[0].a + v[1].a);
      const double cb = 0.5 * (v[0].b + v[1].b);
      const double ra = ca + (ca - v[2].a);
      const double rb = cb + (cb - v[2].b);
      const double fr = eval(ra, rb);
      if (fr < v[0].f) {
        const double ea = ca + 2.0 * (ca - v[2].a);
        const double eb = cb + 2.0 * (cb - v[2].b);
        const double fe = eval(ea, eb);
        v[2] = fe < fr ? Vertex{ea, eb, fe} : Vertex{ra, rb, fr};
      } else if (fr < v[1].f) {
        v[2] = {ra, rb, fr};
      } else {
        const bool outside = fr < v[2].f;
        const double xa = outside ? ca + 0.5 * (ra - ca) : ca + 0.5 * (v[2].a - ca);
        const double xb = outside ? cb + 0.5 * (rb - cb) : cb + 0.5 * (v[2].b - cb);
        const double fx = eval(xa, xb);
        if (fx < std::min(fr, v[2].f)) {
          v[2] = {xa, xb, fx};
        } else {
          // shrink toward the best vertex
          for (int i = 1; i < 3; ++i) {
            v[i].a = v[0].a + 0.5 * (v[i].a - v[0].a);
            v[i].b = v[0].b + 0.5 * (v[i].b - v[0].b);
            v[i].f = eval(v[i].a, v[i].b);
          }
        }
      }
    }
  }

  std::size_t best_all = 0;
  for (std::size_t i = 1; i < result.trace.size(); ++i)
    if (result.trace[i].mse < result.trace[best_all].mse) best_all = i;
  result.alpha = result.trace[best_all].alpha;
  result.beta = result.trace[best_all].beta;
  result.objective = result.trace[best_all].mse;
  return result;
}

// One row of the gradient sweep: the refit constraint exponent and the
// strength power-law exponent as functions of alpha.
struct SweepRow {
  double alpha = 0.0;
  double a_mean = 0.0;
  double a_sd = 0.0;
  double plexp_mean = 0.0;
  double plexp_sd = 0.0;
};

struct SweepSettings {
  double beta = 0.0;
  double r0 = 0.0;
  std::int32_t steps = 0;
  std::int32_t groomers = 0;
  std::vector<double> q_values;
  std::int32_t replicates = 1;
  std::uint64_t seed = 1;
};

inline std::vector<SweepRow> sweep_alpha(std::span<const double> alphas,
                                         const SweepSettings& settings,
                                         int threads = 1) {
  if (alphas.empty()) throw std::invalid_argument("sweep_alpha: empty alphas");
  if (settings.replicates < 1)
    throw std::invalid_argument("sweep_alpha: replicates must be >= 1");

  const auto reps = static_cast<std::size_t>(settings.replicates);
  std::vector<double> a_fit(alphas.size() * reps);
  std::vector<double> plexp_fit(alphas.size() * reps);

  // Seeds depend only on (alpha index, replicate index), so rows are stable
  // under any evaluation order or thread count.
  parallel_for(alphas.size() * reps, threads, [&](std::size_t slot) {
    const std::size_t i = slot / reps;
    const std::size_t r = slot % reps;
    SimConfig cfg;
    cfg.alpha = alphas[i];
    cfg.beta = settings.beta;
    cfg.r0 = settings.r0;
    cfg.steps = settings.steps;
    cfg.groomers = settings.groomers;
    cfg.q_values = settings.q_values;
    cfg.seed = derive_seed(settings.seed, i, r);
    const SimResult sim = run_simulation(cfg);
    a_fit[slot] = fit_nm_regression(user_summaries(sim.ledger)).a;
    std::vector<double> strengths;
    strengths.reserve(sim.ledger.size());
    for (const auto& [key, rec] : sim.ledger.pairs)
      strengths.push_back(rec.strength);
    plexp_fit[slot] = fit_power_law(strengths).exponent;
  });

  auto mean_sd = [reps](std::span<const double> values, std::size_t i) {
    double mean = 0.0;
    for (std::size_t r = 0; r < reps; ++r) mean += values[i * reps + r];
    mean /= static_cast<double>(reps);
    double var = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const double d = values[i * reps + r] - mean;
      var += d * d;
    }
    const double sd =
        reps > 1 ? std::sqrt(var / static_cast<double>(reps - 1)) : 0.0;
    return std::pair<double, double>{mean, sd};
  };

  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const auto [am, asd] = mean_sd(a_fit, i);
    const auto [pm, psd] = mean_sd(plexp_fit, i);
    rows.push_back({alphas[i], am, asd, pm, psd});
  }
  return rows;
}

}  // namespace groomsim
