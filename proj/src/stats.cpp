// prosokit/stats.cpp

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

#include "prosokit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "prosokit/error.hpp"

namespace prosokit::stats {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

// Standard normal density and CDF.
double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }
double Phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Continued fraction for the incomplete beta (Numerical Recipes style
// modified Lentz).
double betacf(double a, double b, double x) {
  constexpr double kFpMin = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIter = 500;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw Error(errc::DomainError,
              "incomplete beta continued fraction did not converge");
}

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by
// Newton iteration on the Legendre polynomial.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n) : nodes(n), weights(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        double dx = p0 / pp;
        x -= dx;
        if (std::fabs(dx) < 1e-15) break;
      }
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
      weights[n - 1 - i] = weights[i];
    }
  }
};

const GaussLegendre& gl32() {
  static const GaussLegendre g(32);
  return g;
}

// CDF of the range of k iid standard normals evaluated at w.
double normal_range_cdf(double w, int k) {
  if (w <= 0.0) return 0.0;
  const auto& g = gl32();
  // Integrand support is dominated by phi(z); +-9 covers it to ~1e-18.
  constexpr double kZLo = -9.0, kZHi = 9.0;
  constexpr int kPanels = 6;
  double total = 0.0;
  double width = (kZHi - kZLo) / kPanels;
  for (int p = 0; p < kPanels; ++p) {
    double lo = kZLo + p * width;
    double mid = lo + 0.5 * width;
    double half = 0.5 * width;
    double acc = 0.0;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      double z = mid + half * g.nodes[i];
      double inner = Phi(z) - Phi(z - w);
      acc += g.weights[i] * phi(z) * std::pow(inner, k - 1);
    }
    total += acc * half;
  }
  return clamp01(k * total);
}

// log density of s = chi_df / sqrt(df).
double log_scaled_chi_pdf(double s, double df) {
  return (1.0 - 0.5 * df) * std::log(2.0) + 0.5 * df * std::log(df) +
         (df - 1.0) * std::log(s) - 0.5 * df * s * s - std::lgamma(0.5 * df);
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

Descriptive descriptive(std::span<const double> samples) {
  if (samples.empty()) throw Error(errc::EmptyInput, "no samples");
  Descriptive d;
  d.n = samples.size();
  d.mean = mean_of(samples);
  if (d.n == 1) return d;
  double ss = 0.0;
  for (double x : samples) {
    double dx = x - d.mean;
    ss += dx * dx;
  }
  d.sample_std = std::sqrt(ss / static_cast<double>(d.n - 1));
  return d;
}

const char* test_method_name(TestMethod m) {
  switch (m) {
    case TestMethod::StudentTwoSample: return "StudentTwoSample";
    case TestMethod::PairedT: return "PairedT";
    case TestMethod::OneWayAnovaF: return "OneWayAnovaF";
    case TestMethod::TukeyQ: return "TukeyQ";
  }
  return "Unknown";
}

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(errc::DomainError, "incomplete beta requires a > 0 and b > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(errc::DomainError, "incomplete beta requires x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double log_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                  a * std::log(x) + b * std::log1p(-x);
  double bt = std::exp(log_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * betacf(a, b, x) / a;
  }
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw Error(errc::DomainError, "t CDF requires df > 0");
  if (t == 0.0) return 0.5;
  double x = df / (df + t * t);
  double tail = 0.5 * regularized_incomplete_beta(x, 0.5 * df, 0.5);
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_two_sided_p(double t, double df) {
  double x = df / (df + t * t);
  return clamp01(regularized_incomplete_beta(x, 0.5 * df, 0.5));
}

double f_upper_tail_p(double f, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) {
    throw Error(errc::DomainError, "F test requires positive dfs");
  }
  if (f <= 0.0) return 1.0;
  double x = d2 / (d2 + d1 * f);
  return clamp01(regularized_incomplete_beta(x, 0.5 * d2, 0.5 * d1));
}

TestResult t_test(std::span<const double> a, std::span<const double> b,
                  TTestMode mode) {
  TestResult r;
  if (mode == TTestMode::Paired) {
    r.method = TestMethod::PairedT;
    if (a.size() != b.size()) {
      throw Error(errc::LengthMismatch,
                  "paired t test requires equal sample sizes");
    }
    if (a.size() < 2) {
      throw Error(errc::InsufficientData, "paired t test requires n >= 2");
    }
    size_t n = a.size();
    std::vector<double> diffs(n);
    for (size_t i = 0; i < n; ++i) diffs[i] = a[i] - b[i];
    Descriptive d = descriptive(diffs);
    r.df1 = static_cast<double>(n - 1);
    if (d.sample_std == 0.0) {
      if (d.mean != 0.0) {
        throw Error(errc::ZeroVariance,
                    "all paired differences equal a nonzero constant; "
                    "t statistic undefined");
      }
      r.statistic = 0.0;
      r.p_value = 1.0;
      r.zero_variance = true;
      return r;
    }
    r.statistic = d.mean / (d.sample_std / std::sqrt(static_cast<double>(n)));
    r.p_value = student_t_two_sided_p(r.statistic, r.df1);
    return r;
  }

  r.method = TestMethod::StudentTwoSample;
  if (a.size() < 2 || b.size() < 2) {
    throw Error(errc::InsufficientData,
                "two-sample t test requires n >= 2 in each sample");
  }
  double na = static_cast<double>(a.size());
  double nb = static_cast<double>(b.size());
  Descriptive da = descriptive(a);
  Descriptive db = descriptive(b);
  double pooled = ((na - 1.0) * da.sample_std * da.sample_std +
                   (nb - 1.0) * db.sample_std * db.sample_std) /
                  (na + nb - 2.0);
  r.df1 = na + nb - 2.0;
  if (pooled == 0.0) {
    if (da.mean != db.mean) {
      throw Error(errc::ZeroVariance,
                  "both samples are constant with different means; "
                  "t statistic undefined");
    }
    r.statistic = 0.0;
    r.p_value = 1.0;
    r.zero_variance = true;
    return r;
  }
  r.statistic = (da.mean - db.mean) /
                std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  r.p_value = student_t_two_sided_p(r.statistic, r.df1);
  return r;
}

namespace {

struct GroupSummary {
  size_t k = 0;
  double total_n = 0.0;
  std::vector<double> means;
  std::vector<double> ns;
  double ms_within = 0.0;
  double ms_between = 0.0;
};

GroupSummary summarize_groups(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) {
    throw Error(errc::InsufficientData, "need at least 2 groups");
  }
  GroupSummary s;
  s.k = groups.size();
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) {
      throw Error(errc::InsufficientData,
                  "each group needs at least 2 observations");
    }
    double m = mean_of(g);
    s.means.push_back(m);
    s.ns.push_back(static_cast<double>(g.size()));
    s.total_n += static_cast<double>(g.size());
    for (double x : g) grand_sum += x;
  }
  double grand_mean = grand_sum / s.total_n;
  double ss_between = 0.0, ss_within = 0.0;
  for (size_t i = 0; i < groups.size(); ++i) {
    double dm = s.means[i] - grand_mean;
    ss_between += s.ns[i] * dm * dm;
    for (double x : groups[i]) {
      double dx = x - s.means[i];
      ss_within += dx * dx;
    }
  }
  s.ms_between = ss_between / static_cast<double>(s.k - 1);
  s.ms_within = ss_within / (s.total_n - static_cast<double>(s.k));
  return s;
}

}  // namespace

TestResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  GroupSummary s = summarize_groups(groups);
  if (s.ms_within == 0.0) {
    throw Error(errc::ZeroWithinVariance,
                "all groups are internally constant; F undefined");
  }
  TestResult r;
  r.method = TestMethod::OneWayAnovaF;
  r.statistic = s.ms_between / s.ms_within;
  r.df1 = static_cast<double>(s.k - 1);
  r.df2 = s.total_n - static_cast<double>(s.k);
  r.p_value = f_upper_tail_p(r.statistic, r.df1, *r.df2);
  return r;
}

TukeyTable tukey_hsd(const std::vector<std::vector<double>>& groups,
                     const std::vector<std::string>& names) {
  GroupSummary s = summarize_groups(groups);
  if (s.ms_within == 0.0) {
    throw Error(errc::ZeroWithinVariance,
                "all groups are internally constant; q undefined");
  }
  double df_error = s.total_n - static_cast<double>(s.k);
  TukeyTable table;
  for (size_t i = 0; i < s.k; ++i) {
    for (size_t j = i + 1; j < s.k; ++j) {
      TukeyRow row;
      row.group_a = i < names.size() ? names[i] : "g" + std::to_string(i);
      row.group_b = j < names.size() ? names[j] : "g" + std::to_string(j);
      row.mean_diff = s.means[i] - s.means[j];
      // Tukey-Kramer standard error for unbalanced designs.
      double se = std::sqrt(0.5 * s.ms_within * (1.0 / s.ns[i] + 1.0 / s.ns[j]));
      row.q = std::fabs(row.mean_diff) / se;
      row.p_value = studentized_range_p(row.q, static_cast<int>(s.k), df_error);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

double cohens_kappa(std::span<const std::string> a,
                    std::span<const std::string> b) {
  if (a.size() != b.size()) {
    throw Error(errc::LengthMismatch, "rating sequences differ in length");
  }
  if (a.empty()) {
    throw Error(errc::LengthMismatch, "rating sequences are empty");
  }
  double n = static_cast<double>(a.size());
  std::map<std::string, double> freq_a, freq_b;
  double agree = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    freq_a[a[i]] += 1.0;
    freq_b[b[i]] += 1.0;
    if (a[i] == b[i]) agree += 1.0;
  }
  double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [label, ca] : freq_a) {
    auto it = freq_b.find(label);
    if (it != freq_b.end()) p_e += (ca / n) * (it->second / n);
  }
  if (p_e >= 1.0) return 1.0;  // both raters constant on the same label
  return (p_o - p_e) / (1.0 - p_e);
}

double studentized_range_p(double q, int k, double df) {
  if (q < 0.0 || k < 2 || !(df > 0.0)) {
    throw Error(errc::DomainError,
                "studentized range requires q >= 0, k >= 2, df > 0");
  }
  if (q == 0.0) return 1.0;

  // P(Q <= q) = integral over s of pdf(s) * P(range of k normals <= q*s),
  // where s is chi_df / sqrt(df). The density concentrates around 1 with
  // spread ~ 1/sqrt(2 df); widen the window generously for small df.
  double sigma = 1.0 / std::sqrt(2.0 * df);
  double lo = std::max(1e-9, 1.0 - 12.0 * sigma);
  double hi = 1.0 + 12.0 * sigma;
  if (df < 8.0) hi = std::max(hi, 10.0);

  const auto& g = gl32();
  constexpr int kPanels = 48;
  double width = (hi - lo) / kPanels;
  double cdf = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    double a = lo + p * width;
    double mid = a + 0.5 * width;
    double half = 0.5 * width;
    double acc = 0.0;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      double s = mid + half * g.nodes[i];
      double log_pdf = log_scaled_chi_pdf(s, df);
      if (log_pdf < -700.0) continue;
      acc += g.weights[i] * std::exp(log_pdf) * normal_range_cdf(q * s, k);
    }
    cdf += acc * half;
  }
  return clamp01(1.0 - cdf);
}

std::string test_result_json(const TestResult& r) {
  std::ostringstream os;
  os.precision(12);
  os << "{\"method\":\"" << test_method_name(r.method) << "\",";
  os << "\"statistic\":" << r.statistic << ",";
  if (r.df2) {
    os << "\"df\":[" << r.df1 << "," << *r.df2 << "],";
  } else {
    os << "\"df\":" << r.df1 << ",";
  }
  os << "\"p_value\":" << r.p_value;
  if (r.zero_variance) os << ",\"zero_variance\":true";
  os << "}";
  return os.str();
}

}  // namespace prosokit::stats
