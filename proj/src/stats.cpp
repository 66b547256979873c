#include "tocpur/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tocpur::stats {
namespace {

void check_sample(const std::vector<double>& s) {
  if (s.size() < 2) throw std::invalid_argument("t-test needs at least two observations per sample");
  for (double v : s) {
    if (!std::isfinite(v)) throw std::invalid_argument("t-test samples must be finite");
  }
}

TTestResult finish(double diff, double se, double df) {
  TTestResult r;
  r.df = df;
  if (se == 0.0) {
    r.t = 0.0;
    r.p = diff == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t = diff / se;
  const boost::math::students_t dist(df);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  return r;
}

}  // namespace

double mean(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double variance(const std::vector<double>& values) {
  if (values.size() < 2) throw std::invalid_argument("variance needs two observations");
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values.size() - 1);
}

TTestResult t_test_independent(const std::vector<double>& a, const std::vector<double>& b) {
  check_sample(a);
  check_sample(b);
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const double df = na + nb - 2.0;
  const double pooled = ((na - 1.0) * variance(a) + (nb - 1.0) * variance(b)) / df;
  return finish(mean(a) - mean(b), std::sqrt(pooled * (1.0 / na + 1.0 / nb)), df);
}

TTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  check_sample(a);
  check_sample(b);
  const double qa = variance(a) / static_cast<double>(a.size());
  const double qb = variance(b) / static_cast<double>(b.size());
  const double se2 = qa + qb;
  double df = static_cast<double>(a.size() + b.size() - 2);
  if (se2 > 0.0) {
    df = se2 * se2 /
         (qa * qa / static_cast<double>(a.size() - 1) + qb * qb / static_cast<double>(b.size() - 1));
  }
  return finish(mean(a) - mean(b), std::sqrt(se2), df);
}

GoodnessOfFit chi_square_uniform(const std::vector<std::size_t>& counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi-square test needs at least two categories");
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  if (total == 0.0) throw std::invalid_argument("chi-square test needs observations");
  const double expected = total / static_cast<double>(counts.size());
  GoodnessOfFit out;
  for (std::size_t c : counts) {
    const double diff = static_cast<double>(c) - expected;
    out.statistic += diff * diff / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  out.p = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

GoodnessOfFit ks_uniform(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("KS test needs observations");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double f = std::clamp(samples[k], 0.0, 1.0);
    d = std::max({d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
  }
  const double root = std::sqrt(n);
  const double lambda = (root + 0.12 + 0.11 / root) * d;
  double p = 0.0;
  if (lambda < 0.2) {
    p = 1.0;
  } else {
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      p += (k % 2 == 1 ? 2.0 : -2.0) * term;
      if (term < 1e-12) break;
    }
  }
  return {d, std::clamp(p, 0.0, 1.0)};
}

}  // namespace tocpur::stats
