#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wwrank::stats {

double mean(std::span<const double> x);
/// Unbiased sample variance (divisor n - 1).
double variance(std::span<const double> x);
/// Sample skewness m3 / m2^{3/2} with population moments.
double skewness(std::span<const double> x);
double median(std::vector<double> x);
/// Linear-interpolation quantile (Hyndman-Fan type 7), p in [0, 1].
double quantile(std::vector<double> x, double p);

/// Standard normal CDF, clamped to exactly 0 / 1 for |x| > 40.
double normal_cdf(double x) noexcept;
/// Inverse standard normal CDF for p in (0, 1).
double normal_quantile(double p);

/// sup_x |F_n(x) - F(x)| for a continuous reference CDF.
double ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf);
double ks_normal(std::span<const double> x);
/// sup_x |F_n(x) - G_m(x)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);
/// Asymptotic two-sample critical value sqrt(-ln(alpha/2)/2) * sqrt((n+m)/(nm)).
double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m);

struct QQPoint {
  double probability;
  double empirical;
  double normal;
};

/// Empirical vs standard normal quantiles at p = 1/(count+1), ..., count/(count+1);
/// the default gives the 99 percentiles.
std::vector<QQPoint> qq_normal(std::span<const double> x, std::size_t count = 99);

}  // namespace wwrank::stats
