#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "wwrank/error.hpp"
#include "wwrank/hypothesis.hpp"
#include "wwrank/models.hpp"
#include "wwrank/rng.hpp"
#include "wwrank/stats.hpp"

using namespace wwrank;

TEST(EigenvalueStatistic, Examples) {
  EXPECT_EQ(eigenvalue_statistic(moments(50).centering, 50), 0.0);
  // n = 3: sigma^2 = 1/24, sigma_tilde = sqrt(8) sigma^2 / sqrt(3).
  const double sigma_sq = 1.0 / 24;
  const double lambda = 1 + 2 * sigma_sq + std::sqrt(8.0) * sigma_sq / std::sqrt(3.0);
  EXPECT_NEAR(eigenvalue_statistic(lambda, 3), 1.0, 1e-12);
  EXPECT_THROW(eigenvalue_statistic(1.0, 2), Error);
}

TEST(EigenvectorStatistic, Examples) {
  for (std::size_t n : {3u, 10u, 1000u}) {
    const std::vector<double> u1(n, 1 / std::sqrt(double(n)));
    EXPECT_NEAR(eigenvector_statistic(u1, n), 1 / (6 * moments(n).sigma_tilde), 1e-9 / moments(n).sigma_tilde);
  }
  const std::vector<double> two(2, 1 / std::sqrt(2.0));
  EXPECT_THROW(eigenvector_statistic(two, 2), Error);
}

TEST(StdNormalCdf, Examples) {
  EXPECT_EQ(std_normal_cdf(0), 0.5);
  EXPECT_EQ(std_normal_cdf(50), 1.0);
  EXPECT_EQ(std_normal_cdf(-50), 0.0);
  EXPECT_NEAR(std_normal_cdf(kZ0025), 0.975, 1e-10);
}

TEST(RunTest, InvariantsAndDeterminism) {
  std::vector<double> v(packed_size(40));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(k);
  const SymmetricMatrix a(40, v);
  const auto r = run_test(a, 0.05, TiePolicy::error());
  const auto again = run_test(a, 0.05, TiePolicy::error());
  EXPECT_EQ(to_json(r).dump(), to_json(again).dump());
  EXPECT_DOUBLE_EQ(r.t_stat, (r.lambda1 - r.moments.centering) / r.moments.sigma_tilde);
  EXPECT_DOUBLE_EQ(r.p_value, 2 * (1 - stats::normal_cdf(std::abs(r.t_stat))));
  EXPECT_EQ(r.reject, r.p_value < 0.05);
  EXPECT_GT(r.u1_dot_uhat, 0.0);
  EXPECT_LE(r.u1_dot_uhat, 1.0 + 1e-12);
  EXPECT_NEAR(r.lambda1, oracle::largest_eigenvalue(rank_transform(a, TiePolicy::error()).matrix()), 1e-9);
  EXPECT_THROW(run_test(a, 0.0, TiePolicy::error()), Error);
  EXPECT_THROW(run_test(a, 1.0, TiePolicy::error()), Error);
  EXPECT_THROW(run_test(SymmetricMatrix(2, {1.0}), 0.05, TiePolicy::error()), Error);
}

TEST(RunTest, MonotoneInvarianceIsBitExact) {
  const auto f = parse_distribution("uniform(0.5,2)");
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto a = sample_homogeneous(20 + s % 7, f, s);
    const std::string base = to_json(run_test(a, 0.05, TiePolicy::error())).dump();
    for (auto g : {+[](double x) { return std::exp(x); }, +[](double x) { return x * x * x; },
                   +[](double x) { return x + 1e3; }}) {
      std::vector<double> v(a.values().begin(), a.values().end());
      for (double& x : v) x = g(x);
      EXPECT_EQ(to_json(run_test(SymmetricMatrix(a.dim(), v), 0.05, TiePolicy::error())).dump(), base);
    }
  }
}

TEST(RunTest, DecisionMatchesCriticalValue) {
  const auto f = parse_distribution("normal(0,1)");
  const auto g = parse_distribution("normal(0.3,1)");
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto a = sample_two_block(40, f, g, s).matrix;
    for (double alpha : {0.01, 0.05, 0.2}) {
      const auto r = run_test(a, alpha, TiePolicy::error());
      EXPECT_EQ(r.reject, std::abs(r.t_stat) > stats::normal_quantile(1 - alpha / 2));
    }
  }
}

TEST(RunTest, UpperTail) {
  const auto a = sample_homogeneous(30, parse_distribution("uniform(0,1)"), 3);
  TestOptions opt;
  opt.tail = Tail::upper;
  const auto r = run_test(a, 0.05, TiePolicy::error(), opt);
  EXPECT_DOUBLE_EQ(r.p_value, 1 - stats::normal_cdf(r.t_stat));
}

TEST(RunTest, JsonLayout) {
  const auto r = run_test(sample_rank_matrix(10, 1), 0.05);
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"n", "lambda1", "t_stat", "p_value", "alpha", "reject", "sigma_sq",
                                            "sigma_tilde", "centering", "u1_dot_uhat"}));
}

TEST(RunTest, NullIsDistributionFree) {
  // T_n under Uniform and Pareto(1,1) nulls at n = 500.
  const auto uni = parse_distribution("uniform(0,1)");
  const auto par = parse_distribution("pareto(1,1)");
  std::vector<double> a;
  std::vector<double> b;
  for (std::uint64_t s = 0; s < 500; ++s) {
    a.push_back(run_test(sample_homogeneous(500, uni, stream_seed(1, s)), 0.05, TiePolicy::random(s)).t_stat);
    b.push_back(run_test(sample_homogeneous(500, par, stream_seed(2, s)), 0.05, TiePolicy::random(s)).t_stat);
  }
  EXPECT_LT(stats::ks_two_sample(a, b), stats::ks_two_sample_critical(0.01, a.size(), b.size()));
}

TEST(E1F2, Examples) {
  const auto n11 = parse_distribution("normal(1,1)");
  const auto n21 = parse_distribution("normal(2,1)");
  EXPECT_EQ(e1f2(n11, n11, 0).value, 0.5);
  EXPECT_EQ(e1f2(parse_distribution("pareto(1,1)"), parse_distribution("pareto(1,1)"), 0).value, 0.5);
  EXPECT_NEAR(e1f2(n11, n21, 0).value, stats::normal_cdf(-1 / std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(e1f2(n11, n21, 0).value, 0.2398, 1e-4);
  EXPECT_EQ(e1f2(n11, parse_distribution("normal(1,1.4142135623730951)"), 0).value, 0.5);
  EXPECT_EQ(e1f2(n11, n21, 0).method, SeparationEstimate::Method::closed_form);
  EXPECT_EQ(e1f2(n11, n21, 0).value + e1f2(n21, n11, 0).value, 1.0);
}

TEST(E1F2, MonteCarlo) {
  const auto p = parse_distribution("pareto(0.5,2)");
  const auto n = parse_distribution("normal(1,0.1)");
  const auto ab = e1f2(p, n, 11, 200000);
  const auto ba = e1f2(n, p, 12, 200000);
  EXPECT_EQ(ab.method, SeparationEstimate::Method::monte_carlo);
  EXPECT_GT(ab.std_error, 0.0);
  EXPECT_NEAR(ab.value + ba.value, 1.0, 3 * std::hypot(ab.std_error, ba.std_error));
  // pr(N(1, 0.01) <= X) for X ~ Pareto(1/2, 2): integrate F_X against the normal density.
  double exact = 0.0;
  const int steps = 20000;
  for (int i = 0; i < steps; ++i) {
    const double z = -8 + 16 * (i + 0.5) / steps;
    const double y = 1 + 0.1 * z;
    const double survival = y <= 0.5 ? 1.0 : std::pow(0.5 / y, 2);
    exact += survival * std::exp(-0.5 * z * z) / std::sqrt(2 * M_PI) * 16.0 / steps;
  }
  EXPECT_NEAR(ab.value, exact, 4 * ab.std_error);
  EXPECT_THROW(e1f2(p, n, 1, 99), Error);
  EXPECT_EQ(e1f2(p, n, 5, 1000).value, e1f2(p, n, 5, 1000).value);
}
