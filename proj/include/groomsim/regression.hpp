#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "groomsim/ledger.hpp"

namespace groomsim {

namespace detail {

inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

// Regularized incomplete beta I_x(a, b).
inline double reg_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                             std::lgamma(b) + a * std::log(x) +
                             b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

// Two-sided p-value of a t statistic with df degrees of freedom.
inline double student_t_p_value(double t, double df) {
  return reg_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

}  // namespace detail

// Fit of log N = -a log m + b log u (no intercept). The t statistic for a
// tests a = 1 (the cost-independent null); the one for b tests b = 0.
// Adjusted R^2 follows the no-intercept convention (total sum of squares
// about zero).
struct RegressionResult {
  double a = 0.0, b = 0.0;
  double se_a = 0.0, se_b = 0.0;
  double t_a_vs_1 = 0.0, t_b_vs_0 = 0.0;
  double p_a = 0.0, p_b = 0.0;
  double adj_r_squared = 0.0;
  double residual_sigma = 0.0;
  std::size_t n = 0;
};

inline RegressionResult fit_nm_regression(
    std::span<const UserSummary> summaries) {
  struct Row {
    double x1, x2, y;
  };
  std::vector<Row> rows;
  rows.reserve(summaries.size());
  for (const auto& s : summaries) {
    if (!(s.mean_strength > 0.0) || s.active_days < 1 || s.partners < 1)
      continue;
    rows.push_back({-std::log(s.mean_strength),
                    std::log(static_cast<double>(s.active_days)),
                    std::log(static_cast<double>(s.partners))});
  }
  const std::size_t n = rows.size();
  if (n < 3)
    throw std::invalid_argument(
        "fit_nm_regression: need at least 3 users with m > 0 and u > 0");

  long double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0, syy = 0;
  for (const auto& r : rows) {
    s11 += static_cast<long double>(r.x1) * r.x1;
    s12 += static_cast<long double>(r.x1) * r.x2;
    s22 += static_cast<long double>(r.x2) * r.x2;
    s1y += static_cast<long double>(r.x1) * r.y;
    s2y += static_cast<long double>(r.x2) * r.y;
    syy += static_cast<long double>(r.y) * r.y;
  }
  const long double det = s11 * s22 - s12 * s12;
  if (!(det > 1e-12L * (s11 * s22 + 1e-30L)))
    throw std::runtime_error("fit_nm_regression: singular design");

  const double a = static_cast<double>((s1y * s22 - s2y * s12) / det);
  const double b = static_cast<double>((s2y * s11 - s1y * s12) / det);

  long double rss = 0;
  for (const auto& r : rows) {
    const long double e = r.y - a * r.x1 - b * r.x2;
    rss += e * e;
  }
  const auto df = static_cast<double>(n - 2);
  const double sigma2 = static_cast<double>(rss) / df;

  RegressionResult res;
  res.a = a;
  res.b = b;
  res.n = n;
  res.se_a = std::sqrt(sigma2 * static_cast<double>(s22 / det));
  res.se_b = std::sqrt(sigma2 * static_cast<double>(s11 / det));
  res.t_a_vs_1 = (a - 1.0) / res.se_a;
  res.t_b_vs_0 = b / res.se_b;
  res.p_a = detail::student_t_p_value(res.t_a_vs_1, df);
  res.p_b = detail::student_t_p_value(res.t_b_vs_0, df);
  const double r2 = 1.0 - static_cast<double>(rss / syy);
  res.adj_r_squared = 1.0 - (1.0 - r2) * static_cast<double>(n) / df;
  res.residual_sigma = std::sqrt(sigma2);
  return res;
}

// The fitted constraint line at a fixed activity level: log N as a function
// of log m.
struct RegressionLine {
  double a = 0.0;
  double b = 0.0;
  double log_u = 0.0;
  double operator()(double log_m) const { return -a * log_m + b * log_u; }
};

inline RegressionLine regression_line(const RegressionResult& result,
                                      double u_fixed) {
  if (!(u_fixed > 0.0))
    throw std::invalid_argument("regression_line: u_fixed must be > 0");
  return {result.a, result.b, std::log(u_fixed)};
}

// Plain least-squares line through (x, y) points, for curve diagnostics.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline LinearFit linear_fit(std::span<const double> x,
                            std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need >= 2 paired points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::runtime_error("linear_fit: constant x");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace groomsim
