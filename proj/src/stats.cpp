#include "arcane/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdlib>

#include "arcane/error.hpp"

namespace arcane::stats {

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw InputError("mean: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

namespace {

double sum_sq_dev(const std::vector<double>& xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s;
}

double student_t_two_sided_p(double t, double df) {
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

}  // namespace

double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) throw InputError("sample_variance: need at least 2 values");
  return sum_sq_dev(xs) / static_cast<double>(xs.size() - 1);
}

double population_variance(const std::vector<double>& xs) {
  if (xs.empty()) throw InputError("population_variance: empty sample");
  return sum_sq_dev(xs) / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) { return std::sqrt(sample_variance(xs)); }

double population_stddev(const std::vector<double>& xs) {
  return std::sqrt(population_variance(xs));
}

WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) throw InputError("welch_t_test: each sample needs >= 2 values");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = sample_variance(a) / na;
  const double vb = sample_variance(b) / nb;
  const double se2 = va + vb;
  if (se2 <= 0.0) throw InputError("welch_t_test: both samples have zero variance");

  WelchResult r;
  r.t = (mean(a) - mean(b)) / std::sqrt(se2);
  r.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

McNemarResult mcnemar_test(int b, int c) {
  if (b < 0 || c < 0) throw InputError("mcnemar_test: negative counts");
  McNemarResult r;
  r.b = b;
  r.c = c;
  if (b + c == 0) return r;  // no discordant pairs: statistic 0, p 1
  const double diff = std::fabs(static_cast<double>(b - c)) - 1.0;  // continuity correction
  const double num = diff > 0.0 ? diff * diff : 0.0;
  r.statistic = num / static_cast<double>(b + c);
  const boost::math::chi_squared dist(1.0);
  r.p = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

TrendResult slope_trend_test(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InputError("slope_trend_test: size mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw InputError("slope_trend_test: need at least 3 points");

  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw InputError("slope_trend_test: x is constant");

  TrendResult r;
  r.n = static_cast<int>(n);
  r.slope = sxy / sxx;
  const double intercept = my - r.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (intercept + r.slope * x[i]);
    sse += e * e;
  }
  const double df = static_cast<double>(n) - 2.0;
  const double se2 = sse / df / sxx;
  if (se2 <= 0.0) {
    // Perfect fit: a non-zero slope is unambiguous, a zero slope is no trend.
    r.t = 0.0;
    r.p = r.slope == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t = r.slope / std::sqrt(se2);
  const boost::math::students_t dist(df);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
  return r;
}

double shannon_entropy(const std::vector<int>& counts) {
  double total = 0.0;
  for (int c : counts) {
    if (c < 0) throw InputError("shannon_entropy: negative count");
    total += c;
  }
  if (total <= 0.0) throw InputError("shannon_entropy: empty histogram");
  double h = 0.0;
  for (int c : counts) {
    if (c == 0) continue;
    const double p = c / total;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace arcane::stats
