#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "wwrank/stats.hpp"

using namespace wwrank;

TEST(Stats, Moments) {
  const std::vector<double> x{1, 2, 3, 4, 10};
  EXPECT_DOUBLE_EQ(stats::mean(x), 4.0);
  EXPECT_DOUBLE_EQ(stats::variance(x), 12.5);
  EXPECT_DOUBLE_EQ(stats::median(x), 3.0);
  EXPECT_DOUBLE_EQ(stats::median({4, 1, 3, 2}), 2.5);
  EXPECT_DOUBLE_EQ(stats::quantile(x, 0.25), 2.0);
  EXPECT_DOUBLE_EQ(stats::quantile(x, 0.9), 7.6);
  EXPECT_DOUBLE_EQ(stats::skewness(std::vector<double>{1, 2, 3}), 0.0);
  EXPECT_GT(stats::skewness(x), 0.0);
}

TEST(Stats, NormalCdfReferenceValues) {
  // Reference values to 16 digits.
  EXPECT_EQ(stats::normal_cdf(0.0), 0.5);
  EXPECT_NEAR(stats::normal_cdf(1.0), 0.8413447460685429, 1e-15);
  EXPECT_NEAR(stats::normal_cdf(-2.5), 0.006209665325776132, 1e-16);
  EXPECT_NEAR(stats::normal_cdf(1.9599639845), 0.975, 1e-10);
  EXPECT_NEAR(stats::normal_cdf(-8.0), 6.22096057427178e-16, 1e-27);
  EXPECT_EQ(stats::normal_cdf(41.0), 1.0);
  EXPECT_EQ(stats::normal_cdf(-41.0), 0.0);
  EXPECT_EQ(stats::normal_cdf(INFINITY), 1.0);
  EXPECT_EQ(stats::normal_cdf(-INFINITY), 0.0);
}

TEST(Stats, NormalQuantileInvertsCdf) {
  EXPECT_NEAR(stats::normal_quantile(0.975), 1.959963984540054, 1e-12);
  for (double p : {1e-10, 0.01, 0.3, 0.5, 0.77, 0.999}) EXPECT_NEAR(stats::normal_cdf(stats::normal_quantile(p)), p, 1e-12 * (1 + p));
}

TEST(Stats, KolmogorovDistances) {
  // Empirical CDF of {0.5} against Uniform(0, 1): sup |F_n - F| = 0.5.
  const std::vector<double> one{0.5};
  EXPECT_DOUBLE_EQ(stats::ks_one_sample(one, [](double x) { return std::clamp(x, 0.0, 1.0); }), 0.5);
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, 5};
  EXPECT_DOUBLE_EQ(stats::ks_two_sample(a, b), 1.0);
  EXPECT_DOUBLE_EQ(stats::ks_two_sample(a, a), 0.0);
  const std::vector<double> c{1, 3, 5, 7};
  const std::vector<double> d{2, 4, 6, 8};
  EXPECT_DOUBLE_EQ(stats::ks_two_sample(c, d), 0.25);
  EXPECT_NEAR(stats::ks_two_sample_critical(0.01, 500, 500), 1.6276 * std::sqrt(2.0 / 500), 1e-4);
}

TEST(Stats, QQPoints) {
  // 1001 points: the type-7 quantile at p = k/100 is exactly the 10k-th order statistic.
  std::vector<double> x(1001);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(static_cast<double>(i)) * 3;
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  const auto qq = stats::qq_normal(x);
  ASSERT_EQ(qq.size(), 99u);
  for (std::size_t k = 1; k <= 99; ++k) {
    EXPECT_NEAR(qq[k - 1].probability, k / 100.0, 1e-15);
    EXPECT_NEAR(qq[k - 1].empirical, sorted[10 * k], 1e-12);
    EXPECT_NEAR(qq[k - 1].normal, stats::normal_quantile(k / 100.0), 1e-15);
  }
  EXPECT_EQ(qq[49].normal, 0.0);
}
