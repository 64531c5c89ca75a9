#include "wwrank/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "wwrank/error.hpp"

namespace wwrank::stats {

double mean(std::span<const double> x) {
  if (x.empty()) throw Error(Errc::invalid_argument, "mean: empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw Error(Errc::invalid_argument, "variance: need at least two values");
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

double skewness(std::span<const double> x) {
  const double m = mean(x);
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : x) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  const double count = static_cast<double>(x.size());
  m2 /= count;
  m3 /= count;
  return m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
}

double median(std::vector<double> x) { return quantile(std::move(x), 0.5); }

double quantile(std::vector<double> x, double p) {
  if (x.empty()) throw Error(Errc::invalid_argument, "quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_argument, "quantile: p outside [0, 1]");
  std::sort(x.begin(), x.end());
  const double h = (static_cast<double>(x.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

double normal_cdf(double x) noexcept {
  if (x > 40.0) return 1.0;
  if (x < -40.0) return 0.0;
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::invalid_argument, "normal_quantile: p must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw Error(Errc::invalid_argument, "ks_one_sample: empty sample");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const double count = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max({d, f - static_cast<double>(i) / count, static_cast<double>(i + 1) / count - f});
  }
  return d;
}

double ks_normal(std::span<const double> x) { return ks_one_sample(x, normal_cdf); }

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::invalid_argument, "ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m) {
  if (!(alpha > 0.0 && alpha < 1.0) || n == 0 || m == 0) {
    throw Error(Errc::invalid_argument, "ks_two_sample_critical: bad arguments");
  }
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

std::vector<QQPoint> qq_normal(std::span<const double> x, std::size_t count) {
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<QQPoint> out;
  out.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    const double p = static_cast<double>(k) / static_cast<double>(count + 1);
    out.push_back({p, quantile(sorted, p), normal_quantile(p)});
  }
  return out;
}

}  // namespace wwrank::stats
