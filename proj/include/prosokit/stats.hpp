// prosokit/stats.hpp

// Copyright 2026  The prosokit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PROSOKIT_STATS_HPP_
#define PROSOKIT_STATS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prosokit::stats {

struct Descriptive {
  double mean = 0.0;
  double sample_std = 0.0;  // n-1 denominator, 0 when n == 1
  size_t n = 0;
};

Descriptive descriptive(std::span<const double> samples);

enum class TestMethod { StudentTwoSample, PairedT, OneWayAnovaF, TukeyQ };

const char* test_method_name(TestMethod m);

struct TestResult {
  TestMethod method = TestMethod::PairedT;
  double statistic = 0.0;
  double df1 = 0.0;                 // t tests: the single df
  std::optional<double> df2;        // ANOVA: denominator df
  double p_value = 1.0;
  // Set when every paired difference (or pooled spread) is exactly zero and
  // the statistic is reported as 0 with p = 1 instead of throwing.
  bool zero_variance = false;
};

enum class TTestMode { Paired, TwoSample };

// Two-sided Student t test. Paired mode requires equal lengths >= 2;
// two-sample mode uses the pooled-variance statistic with df = na + nb - 2.
// A zero spread with a nonzero mean difference throws Error(ZeroVariance);
// a zero spread with zero mean difference reports t = 0, p = 1 and flags
// zero_variance.
TestResult t_test(std::span<const double> a, std::span<const double> b,
                  TTestMode mode);

// Upper-tail F test across k >= 2 groups, each with n >= 2.
TestResult one_way_anova(const std::vector<std::vector<double>>& groups);

struct TukeyRow {
  std::string group_a;
  std::string group_b;
  double mean_diff = 0.0;  // mean(a) - mean(b)
  double q = 0.0;
  double p_value = 1.0;
};

struct TukeyTable {
  std::vector<TukeyRow> rows;  // one per unordered pair, (a, b) with a before b
};

// Tukey HSD with the Tukey-Kramer denominator for unbalanced groups.
// Group names default to g0, g1, ...
TukeyTable tukey_hsd(const std::vector<std::vector<double>>& groups,
                     const std::vector<std::string>& names = {});

// Chance-corrected agreement between two equal-length label sequences.
double cohens_kappa(std::span<const std::string> a,
                    std::span<const std::string> b);

// I_x(a, b) by Lentz continued fraction; absolute error <= 1e-12.
double regularized_incomplete_beta(double x, double a, double b);

// CDF of Student's t with df degrees of freedom.
double student_t_cdf(double t, double df);
// Two-sided p for a t statistic.
double student_t_two_sided_p(double t, double df);
// Upper-tail p for an F statistic with (d1, d2) degrees of freedom.
double f_upper_tail_p(double f, double d1, double d2);

// P(Q > q) for the studentized range with k groups and df error degrees of
// freedom, by Gauss-Legendre integration over the scaled-chi variable with
// the normal-range CDF evaluated inside. Absolute error <= 1e-4 (in practice
// much tighter; the k = 2 reduction matches the t CDF to ~1e-7).
double studentized_range_p(double q, int k, double df);

// {method, statistic, df, p_value} JSON object (df is a number or a pair).
std::string test_result_json(const TestResult& r);

}  // namespace prosokit::stats

#endif  // PROSOKIT_STATS_HPP_
