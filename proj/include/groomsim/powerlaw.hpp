#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace groomsim {

// Discrete power-law fit over integer strengths x >= x_min:
// P(x) proportional to x^(-exponent).
struct PowerLawFit {
  double exponent = 0.0;
  std::int32_t x_min = 1;
  std::size_t n_tail = 0;
  double log_likelihood = 0.0;
  std::string estimator;
};

namespace detail {

// Hurwitz zeta sum_{k>=0} (q+k)^(-s) and its derivative in s, by direct
// summation with Euler-Maclaurin tail corrections. Accurate to near machine
// precision for s > 1, q >= 1.
inline void hurwitz_zeta(double s, double q, double& zeta, double& dzeta) {
  constexpr int kFrontTerms = 1000;
  double sum = 0.0;
  double dsum = 0.0;
  for (int k = 0; k < kFrontTerms; ++k) {
    const double base = q + k;
    const double term = std::pow(base, -s);
    sum += term;
    dsum -= std::log(base) * term;
  }
  const double a = q + kFrontTerms;
  const double log_a = std::log(a);
  const double a_1ms = std::pow(a, 1.0 - s);
  const double a_ms = std::pow(a, -s);
  const double a_ms1 = std::pow(a, -s - 1.0);
  const double a_ms3 = std::pow(a, -s - 3.0);

  sum += a_1ms / (s - 1.0);
  sum += 0.5 * a_ms;
  sum += s / 12.0 * a_ms1;
  sum -= s * (s + 1.0) * (s + 2.0) / 720.0 * a_ms3;

  dsum -= a_1ms * (log_a * (s - 1.0) + 1.0) / ((s - 1.0) * (s - 1.0));
  dsum -= 0.5 * log_a * a_ms;
  dsum += (1.0 - s * log_a) / 12.0 * a_ms1;
  dsum -= (3.0 * s * s + 6.0 * s + 2.0 -
           s * (s + 1.0) * (s + 2.0) * log_a) /
          720.0 * a_ms3;

  zeta = sum;
  dzeta = dsum;
}

// -zeta'(s, x_min) / zeta(s, x_min): the mean of ln X under the discrete
// power law with exponent s. Strictly decreasing in s.
inline double model_mean_log(double s, double x_min) {
  double z = 0.0, dz = 0.0;
  hurwitz_zeta(s, x_min, z, dz);
  return -dz / z;
}

}  // namespace detail

// Maximum-likelihood exponent for the discrete power law with fixed x_min.
// Fractional strengths are floored to integers first (the empirical quantity
// is a day count); values below x_min are dropped from the tail.
inline PowerLawFit fit_power_law(std::span<const double> strengths,
                                 std::int32_t x_min = 1) {
  if (x_min < 1) throw std::invalid_argument("fit_power_law: x_min < 1");
  std::vector<double> tail;
  tail.reserve(strengths.size());
  for (double v : strengths) {
    const double x = std::floor(v);
    if (x >= x_min) tail.push_back(x);
  }
  if (tail.size() < 10)
    throw std::invalid_argument(
        "fit_power_law: fewer than 10 values at or above x_min");

  double sum_log = 0.0;
  for (double x : tail) sum_log += std::log(x);
  const double mean_log = sum_log / static_cast<double>(tail.size());
  if (!(mean_log > std::log(static_cast<double>(x_min)) + 1e-12))
    throw std::runtime_error("fit_power_law: degenerate sample");

  // The score (1/n) dL/ds = model_mean_log(s) - mean_log is monotone, so
  // bisection is safe. model_mean_log diverges as s -> 1+ and falls to
  // log(x_min) as s -> inf; the root exists by the check above.
  double lo = 1.0 + 1e-9;
  double hi = 64.0;
  if (detail::model_mean_log(hi, x_min) - mean_log > 0.0)
    throw std::runtime_error("fit_power_law: degenerate sample");
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (detail::model_mean_log(mid, x_min) - mean_log > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * hi) break;
  }
  const double exponent = 0.5 * (lo + hi);

  double z = 0.0, dz = 0.0;
  detail::hurwitz_zeta(exponent, x_min, z, dz);
  PowerLawFit fit;
  fit.exponent = exponent;
  fit.x_min = x_min;
  fit.n_tail = tail.size();
  fit.log_likelihood =
      -static_cast<double>(tail.size()) * std::log(z) - exponent * sum_log;
  fit.estimator = "discrete_mle";
  return fit;
}

}  // namespace groomsim
