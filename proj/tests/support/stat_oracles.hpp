// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

// Slow reference computations for the statistics module.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

namespace prips::testing {

/// Student t density integrated from 0 with composite Simpson.
inline double t_cdf_by_integration(double t, double nu) {
  const double logc = std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2) - 0.5 * std::log(nu * M_PI);
  auto f = [&](double x) { return std::exp(logc - (nu + 1) / 2 * std::log1p(x * x / nu)); };
  const int n = 200000;
  const double a = std::fabs(t), h = a / n;
  double s = f(0) + f(a);
  for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  const double half = s * h / 3.0;
  return t < 0 ? 0.5 - half : 0.5 + half;
}

/// Null counts of U as coefficients of the Gaussian binomial [n1+n2, n1]_q.
inline std::vector<std::int64_t> gaussian_binomial(int n1, int n2) {
  std::vector<std::int64_t> p{1};
  for (int i = 1; i <= n1; ++i) {
    p.resize(p.size() + n2 + i, 0);
    for (std::size_t k = p.size(); k-- > static_cast<std::size_t>(n2 + i);) p[k] -= p[k - n2 - i];
    for (std::size_t k = i; k < p.size(); ++k) p[k] += p[k - i];
    while (p.size() > 1 && p.back() == 0) p.pop_back();
  }
  p.resize(static_cast<std::size_t>(n1) * n2 + 1, 0);
  return p;
}

/// Null counts of U by listing every placement of sample a among the ranks.
inline std::vector<std::int64_t> enumerated_counts(int n1, int n2) {
  const int n = n1 + n2;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n1) * n2 + 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != n1) continue;
    int rank_sum = 0;
    for (int r = 0; r < n; ++r) {
      if (mask >> r & 1u) rank_sum += r + 1;
    }
    ++counts[rank_sum - n1 * (n1 + 1) / 2];
  }
  return counts;
}

/// U for sample a by direct pair counting.
inline double pairwise_u(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0.0;
  for (double x : a) {
    for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  }
  return u;
}

/// Two-sided exact p for an untied U from the null counts.
inline double exact_mw_p(int n1, int n2, double u) {
  const auto counts = gaussian_binomial(n1, n2);
  const auto k0 = static_cast<std::size_t>(u);
  std::int64_t lo = 0, hi = 0, total = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    total += counts[k];
    if (k <= k0) lo += counts[k];
    if (k >= k0) hi += counts[k];
  }
  return std::min(1.0, 2.0 * static_cast<double>(std::min(lo, hi)) / static_cast<double>(total));
}

}  // namespace prips::testing
