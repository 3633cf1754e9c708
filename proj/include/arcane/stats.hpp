#pragma once

#include <vector>

namespace arcane::stats {

// Two-sided z critical value at alpha = 0.05.
constexpr double kZTwoSided95 = 1.959963984540054;

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);      // ddof = 1
double population_variance(const std::vector<double>& xs);  // ddof = 0
double sample_stddev(const std::vector<double>& xs);
double population_stddev(const std::vector<double>& xs);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of freedom.
// Requires each sample to hold >= 2 values and at least one sample to have
// non-zero variance.
WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct McNemarResult {
  int b = 0;  // first method correct, second wrong
  int c = 0;  // first method wrong, second correct
  double statistic = 0.0;
  double p = 1.0;
};

// McNemar's test with Edwards continuity correction; b + c == 0 yields p = 1.
McNemarResult mcnemar_test(int b, int c);

struct TrendResult {
  double slope = 0.0;
  double t = 0.0;
  double p = 1.0;  // two-sided, df = n - 2
  int n = 0;
};

// t-test on the OLS slope of y against x. Requires >= 3 points and non-constant x.
TrendResult slope_trend_test(const std::vector<double>& x, const std::vector<double>& y);

// Shannon entropy (nats) of a histogram given as non-negative counts.
double shannon_entropy(const std::vector<int>& counts);

}  // namespace arcane::stats
