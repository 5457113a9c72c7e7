// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include "prips/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "prips/error.hpp"

namespace prips::stats {
namespace {

// Continued fraction for I_x(a, b) by the modified Lentz method.
double beta_continued_fraction(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
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

void require_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw ValidationError("non-finite value in sample");
  }
}

}  // namespace

double incomplete_beta(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double t_cdf(double t, double dof) {
  if (!(dof > 0.0)) throw ValidationError("degrees of freedom must be positive");
  if (std::isnan(t)) return t;
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * incomplete_beta(x, dof / 2.0, 0.5);  // P(T > |t|)
  return t > 0 ? 1.0 - tail : tail;
}

double t_quantile(double p, double dof) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("quantile probability must be in (0, 1)");
  if (p == 0.5) return 0.0;
  const double target = p > 0.5 ? p : 1.0 - p;
  double lo = 0.0, hi = 1.0;
  while (t_cdf(hi, dof) < target) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (t_cdf(mid, dof) < target ? lo : hi) = mid;
  }
  const double q = 0.5 * (lo + hi);
  return p > 0.5 ? q : -q;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double mean(std::span<const double> x) {
  if (x.empty()) throw ValidationError("mean of an empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
  if (x.size() < 2) throw ValidationError("standard deviation needs at least 2 values");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

TestResult one_sample_t_test(std::span<const double> deltas, double level) {
  if (deltas.size() < 2) throw ValidationError("t test needs at least 2 values");
  require_finite(deltas);
  const double m = mean(deltas);
  const double s = sample_sd(deltas);
  if (!(s > 0.0)) throw ValidationError("t test on zero-variance data");
  const double n = static_cast<double>(deltas.size());
  const double se = s / std::sqrt(n);
  TestResult r;
  r.method = "t";
  r.n = deltas.size();
  r.mean = m;
  r.statistic = m / se;
  r.p_value = std::min(1.0, 2.0 * t_cdf(-std::fabs(r.statistic), n - 1.0));
  r.adjusted_p = r.p_value;
  const Interval ci = t_confidence_interval(deltas, level);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  return r;
}

std::vector<double> mann_whitney_null_counts(int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw ValidationError("negative sample size");
  // f[i][j][u]: arrangements of i a's and j b's with U = u.
  const int umax = n1 * n2;
  std::vector<std::vector<std::vector<double>>> f(
      n1 + 1, std::vector<std::vector<double>>(n2 + 1));
  for (int i = 0; i <= n1; ++i) {
    for (int j = 0; j <= n2; ++j) {
      auto& cur = f[i][j];
      cur.assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        cur[0] = 1.0;
        continue;
      }
      // Largest element is an a (beats all j b's) or a b.
      const auto& take_a = f[i - 1][j];
      const auto& take_b = f[i][j - 1];
      for (std::size_t u = 0; u < take_a.size(); ++u) cur[u + j] += take_a[u];
      for (std::size_t u = 0; u < take_b.size(); ++u) cur[u] += take_b[u];
    }
  }
  auto out = f[n1][n2];
  out.resize(umax + 1, 0.0);
  return out;
}

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          MannWhitneyMethod method) {
  if (a.empty() || b.empty()) throw ValidationError("Mann-Whitney needs two non-empty samples");
  require_finite(a);
  require_finite(b);
  const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;

  std::vector<std::pair<double, int>> pooled;
  pooled.reserve(n);
  for (double v : a) pooled.push_back({v, 0});
  for (double v : b) pooled.push_back({v, 1});
  std::sort(pooled.begin(), pooled.end());
  double rank_sum_a = 0.0, tie_term = 0.0;
  bool ties = false;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    const double t = static_cast<double>(j - i);
    if (t > 1) ties = true;
    tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second == 0) rank_sum_a += midrank;
    }
    i = j;
  }
  const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2);
  const double u1 = rank_sum_a - dn1 * (dn1 + 1.0) / 2.0;

  TestResult r;
  r.n = n;
  r.statistic = u1;
  r.mean = mean(b) - mean(a);

  bool exact = false;
  switch (method) {
    case MannWhitneyMethod::Auto: exact = n1 * n2 <= 400 && !ties; break;
    case MannWhitneyMethod::Exact:
      if (ties) throw ValidationError("exact Mann-Whitney requires untied data");
      exact = true;
      break;
    case MannWhitneyMethod::Normal: exact = false; break;
  }

  if (exact) {
    const auto counts = mann_whitney_null_counts(static_cast<int>(n1), static_cast<int>(n2));
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const auto u = static_cast<std::size_t>(std::llround(u1));
    double lower = 0.0, upper = 0.0;
    for (std::size_t k = 0; k <= u; ++k) lower += counts[k];
    for (std::size_t k = u; k < counts.size(); ++k) upper += counts[k];
    r.method = "mann-whitney-exact";
    r.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / total);
  } else {
    const double mu = dn1 * dn2 / 2.0;
    const double dn = static_cast<double>(n);
    const double var = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    r.method = "mann-whitney-normal";
    if (!(var > 0.0)) {
      r.p_value = 1.0;
    } else {
      const double z = std::max(0.0, std::fabs(u1 - mu) - 0.5) / std::sqrt(var);
      r.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    }
  }
  r.adjusted_p = r.p_value;
  return r;
}

std::vector<double> holm_adjust(std::span<const double> p_values) {
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p-value outside [0, 1]");
  }
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return p_values[x] < p_values[y]; });
  std::vector<double> out(m);
  double running = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double adj = std::min(1.0, static_cast<double>(m - j) * p_values[order[j]]);
    running = std::max(running, adj);
    out[order[j]] = running;
  }
  return out;
}

Interval t_confidence_interval(std::span<const double> x, double level) {
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("confidence level must be in (0, 1)");
  if (x.size() < 2) throw ValidationError("confidence interval needs at least 2 values");
  require_finite(x);
  const double m = mean(x);
  const double s = sample_sd(x);
  if (!(s > 0.0)) throw ValidationError("confidence interval on zero-variance data");
  const double n = static_cast<double>(x.size());
  const double half = t_quantile(0.5 + level / 2.0, n - 1.0) * s / std::sqrt(n);
  return {m - half, m + half};
}

Summary summarize(std::span<const double> x) {
  Summary s;
  s.n = x.size();
  if (x.empty()) return s;
  s.mean = mean(x);
  if (x.size() >= 2) s.sd = sample_sd(x);
  return s;
}

}  // namespace prips::stats
