#include <gtest/gtest.h>

#include <cmath>

#include "wwrank/distributions.hpp"
#include "wwrank/error.hpp"
#include "wwrank/hypothesis.hpp"
#include "wwrank/models.hpp"
#include "wwrank/rng.hpp"
#include "wwrank/stats.hpp"

using namespace wwrank;

TEST(Distribution, ParseAndPrint) {
  for (const char* s : {"normal(1,0.4)", "uniform(0,1)", "exponential(1)", "pareto(1,1)", "pareto(0.5,2)"}) {
    const auto d = parse_distribution(s);
    EXPECT_EQ(d.to_string(), s);
    EXPECT_EQ(parse_distribution(d.to_string()), d);
  }
  EXPECT_EQ(parse_distribution(" normal( 1 , +2e-1 ) ").to_string(), "normal(1,0.2)");
}

TEST(Distribution, ParseErrorsCarryColumn) {
  const auto column_of = [](const char* spec) -> std::string {
    try {
      parse_distribution(spec);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::parse);
      return e.what();
    }
    return "no error";
  };
  EXPECT_NE(column_of("normal(1,").find("column 10"), std::string::npos);
  EXPECT_NE(column_of("gamma(1,1)").find("unknown distribution"), std::string::npos);
  EXPECT_NE(column_of("normal(1)").find("2 parameter"), std::string::npos);
  EXPECT_NE(column_of("normal(1,-1)").find("sigma"), std::string::npos);
  EXPECT_NE(column_of("uniform(1,0)").find("a < b"), std::string::npos);
  EXPECT_NE(column_of("pareto(1,1) x").find("trailing"), std::string::npos);
}

TEST(Distribution, InvalidParameters) {
  EXPECT_THROW(EntryDistribution(Normal{0, 0}), Error);
  EXPECT_THROW(EntryDistribution(Exponential{-1}), Error);
  EXPECT_THROW(EntryDistribution(Pareto{0, 1}), Error);
}

TEST(Sampler, ParetoSupportMeanAndTail) {
  SplitMix64 rng(1);
  EntrySampler heavy(EntryDistribution(Pareto{1, 1}));
  for (int i = 0; i < 10000; ++i) EXPECT_GE(heavy(rng), 1.0);

  // Pareto(1/2, 2): mean 1, infinite variance.
  EntrySampler draw(EntryDistribution(Pareto{0.5, 2}));
  const std::size_t count = 1'000'000;
  double sum = 0.0;
  std::size_t above1 = 0;
  std::size_t above2 = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = draw(rng);
    sum += x;
    above1 += x > 1.0 ? 1 : 0;
    above2 += x > 2.0 ? 1 : 0;
  }
  EXPECT_NEAR(sum / count, 1.0, 0.01);
  // pr(X > x) = (scale / x)^shape at x = 2 scale and 4 scale.
  const double p1 = 0.25;
  const double p2 = 1.0 / 16;
  EXPECT_NEAR(above1 / double(count), p1, 3 * std::sqrt(p1 * (1 - p1) / count));
  EXPECT_NEAR(above2 / double(count), p2, 3 * std::sqrt(p2 * (1 - p2) / count));
}

TEST(Sampler, MatchesCdf) {
  for (const char* spec : {"normal(1,0.4)", "uniform(-1,3)", "exponential(2)", "pareto(1,3)"}) {
    const auto d = parse_distribution(spec);
    SplitMix64 rng(4);
    EntrySampler draw(d);
    std::vector<double> x(20000);
    for (double& v : x) v = draw(rng);
    EXPECT_LT(stats::ks_one_sample(x, [&](double t) { return d.cdf(t); }), 0.015) << spec;
  }
}

TEST(Homogeneous, MeanAndDeterminism) {
  const auto f = parse_distribution("uniform(0,1)");
  const auto a = sample_homogeneous(1000, f, 9);
  EXPECT_NEAR(stats::mean(a.values()), 0.5, 0.01);
  EXPECT_EQ(a, sample_homogeneous(1000, f, 9));
  EXPECT_NE(a, sample_homogeneous(1000, f, 10));
}

TEST(TwoBlock, LayoutAndCounts) {
  const auto f1 = parse_distribution("uniform(0,1)");
  const auto f2 = parse_distribution("uniform(10,11)");
  const auto g = sample_two_block(4, f1, f2, 3);
  EXPECT_EQ(g.blocks.labels, (std::vector<int>{1, 1, -1, -1}));
  int inside = 0;
  int across = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const bool same = g.blocks.labels[i] == g.blocks.labels[j];
      (same ? inside : across)++;
      EXPECT_EQ(g.matrix(i, j) < 1.0, same);
    }
  }
  EXPECT_EQ(inside, 2);
  EXPECT_EQ(across, 4);
  EXPECT_THROW(sample_two_block(5, f1, f2, 3), Error);
}

TEST(TwoBlock, EqualLawsReduceToHomogeneous) {
  const auto f = parse_distribution("normal(0,1)");
  std::vector<double> pooled_block;
  std::vector<double> pooled_flat;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto b = sample_two_block(200, f, f, s).matrix;
    const auto h = sample_homogeneous(200, f, 1000 + s);
    pooled_block.insert(pooled_block.end(), b.values().begin(), b.values().end());
    pooled_flat.insert(pooled_flat.end(), h.values().begin(), h.values().end());
  }
  ASSERT_GE(pooled_block.size(), 99000u);
  EXPECT_LT(stats::ks_two_sample(pooled_block, pooled_flat),
            stats::ks_two_sample_critical(0.01, pooled_block.size(), pooled_flat.size()));
}

TEST(Planted, LayoutAndBounds) {
  const auto f1 = parse_distribution("uniform(10,11)");
  const auto f2 = parse_distribution("uniform(0,1)");
  const auto g = sample_planted_submatrix(10, 3, f1, f2, 1);
  EXPECT_EQ(g.blocks.n1, 3u);
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = i + 1; j < 10; ++j) EXPECT_EQ(g.matrix(i, j) > 5, j < 3);
  }
  // n1 = 1 has no inside pair, so the draw is exactly the homogeneous background.
  EXPECT_EQ(sample_planted_submatrix(10, 1, f1, f2, 7).matrix, sample_homogeneous(10, f2, 7));
  EXPECT_NO_THROW(sample_planted_submatrix(10, 9, f1, f2, 1));
  EXPECT_THROW(sample_planted_submatrix(10, 0, f1, f2, 1), Error);
  EXPECT_THROW(sample_planted_submatrix(10, 10, f1, f2, 1), Error);
}

TEST(InterpolatedRank, ZeroExtraRanksIsWilcoxonWigner) {
  const std::size_t n = 60;
  const auto m = sample_interpolated_rank(n, ExtraRanks::finite(0), 5);
  EXPECT_NO_THROW(RankMatrix::adopt(m));
  EXPECT_NEAR(m.off_diagonal_sum() / 2, packed_size(n) / 2.0, 1e-12 * packed_size(n));
}

TEST(InterpolatedRank, FiniteAndInfinite) {
  const std::size_t n = 30;
  const std::size_t big_n = packed_size(n);
  const auto m = sample_interpolated_rank(n, ExtraRanks::finite(big_n), 2);
  for (double v : m.values()) {
    const double r = v * (2 * big_n + 1);
    EXPECT_NEAR(r, std::round(r), 1e-9);
    EXPECT_GE(std::round(r), 1);
    EXPECT_LE(std::round(r), 2 * big_n);
  }
  std::vector<double> sorted(m.values().begin(), m.values().end());
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  const auto u = sample_interpolated_rank(n, ExtraRanks::infinite(), 2);
  for (double v : u.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  EXPECT_NO_THROW(sample_interpolated_rank(n, ExtraRanks::finite(10 * big_n), 1));
  EXPECT_THROW(sample_interpolated_rank(n, ExtraRanks::finite(10 * big_n + 1), 1), Error);
}

TEST(RankSampler, MatchesRankTransformOfContinuousData) {
  // Both routes produce the same law; compare the T_n distributions.
  std::vector<double> a;
  std::vector<double> b;
  const auto f = parse_distribution("exponential(1)");
  for (std::uint64_t s = 0; s < 300; ++s) {
    a.push_back(run_test(sample_rank_matrix(60, s), 0.05).t_stat);
    b.push_back(run_test(sample_homogeneous(60, f, 5000 + s), 0.05, TiePolicy::error()).t_stat);
  }
  EXPECT_LT(stats::ks_two_sample(a, b), stats::ks_two_sample_critical(0.01, a.size(), b.size()));
}
