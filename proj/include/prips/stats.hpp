// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prips::stats {

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double x, double a, double b);

/// Student t CDF with `dof` degrees of freedom.
double t_cdf(double t, double dof);

/// Inverse of t_cdf for p in (0, 1).
double t_quantile(double p, double dof);

double normal_cdf(double z);

double mean(std::span<const double> x);

/// Sample standard deviation (n - 1 denominator). Requires n >= 2.
double sample_sd(std::span<const double> x);

struct TestResult {
  std::string method;
  double statistic = 0.0;
  double p_value = 1.0;
  double adjusted_p = 1.0;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0;
};

/// Two-sided one-sample t test against zero, with a 99% CI. Throws
/// ValidationError for n < 2 or zero variance.
TestResult one_sample_t_test(std::span<const double> deltas, double level = 0.99);

enum class MannWhitneyMethod { Auto, Exact, Normal };

/// Two-sided Mann-Whitney U. `statistic` is U for sample a. Auto uses the exact
/// null distribution when n1*n2 <= 400 and there are no ties, otherwise the
/// normal approximation with tie and continuity corrections. `mean` holds
/// mean(b) - mean(a); the CI fields are unused.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          MannWhitneyMethod method = MannWhitneyMethod::Auto);

/// Number of rank assignments giving each U value, u = 0..n1*n2.
std::vector<double> mann_whitney_null_counts(int n1, int n2);

/// Holm step-down adjustment, returned in input order.
std::vector<double> holm_adjust(std::span<const double> p_values);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// mean +- t_{(1+level)/2, n-1} * s / sqrt(n).
Interval t_confidence_interval(std::span<const double> x, double level = 0.99);

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // absent when n < 2
};

Summary summarize(std::span<const double> x);

}  // namespace prips::stats
