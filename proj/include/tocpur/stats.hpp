#pragma once

#include <cstddef>
#include <vector>

namespace tocpur::stats {

struct TTestResult {
  double t = 0.0;
  /// Two-sided p-value.
  double p = 1.0;
  double df = 0.0;
};

/// Two-sample Student t-test with pooled variance. Zero pooled variance gives
/// t = 0, p = 1 for equal means and p = 0 otherwise.
TTestResult t_test_independent(const std::vector<double>& a, const std::vector<double>& b);

/// Welch's unequal-variance variant with Welch-Satterthwaite degrees of freedom.
TTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct GoodnessOfFit {
  double statistic = 0.0;
  double p = 1.0;
};

/// Pearson chi-square test of observed category counts against equal
/// expected frequencies.
GoodnessOfFit chi_square_uniform(const std::vector<std::size_t>& counts);

/// One-sample Kolmogorov-Smirnov test against U(0, 1), using the asymptotic
/// Kolmogorov distribution with Stephens' small-sample correction.
GoodnessOfFit ks_uniform(std::vector<double> samples);

double mean(const std::vector<double>& values);
/// Unbiased sample variance.
double variance(const std::vector<double>& values);

}  // namespace tocpur::stats
