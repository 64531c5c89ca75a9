#include "wwrank/hypothesis.hpp"

#include <cmath>
#include <string>

#include "wwrank/error.hpp"
#include "wwrank/rng.hpp"
#include "wwrank/stats.hpp"

namespace wwrank {
namespace {

const WWMoments& checked(const WWMoments& m) {
  if (m.n < 3) throw Error(Errc::invalid_argument, "test statistics need n >= 3, got " + std::to_string(m.n));
  return m;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::invalid_argument, "alpha must lie in (0, 1)");
}

}  // namespace

double std_normal_cdf(double x) noexcept { return stats::normal_cdf(x); }

double eigenvalue_statistic(double lambda1, std::size_t n) {
  const WWMoments m = moments(n);
  checked(m);
  return (lambda1 - m.centering) / m.sigma_tilde;
}

double eigenvector_statistic_from_projection(double u1_dot_uhat, std::size_t n) {
  const WWMoments m = moments(n);
  checked(m);
  const double nd = static_cast<double>(n);
  return nd / m.sigma_tilde * (u1_dot_uhat - 1.0 + 1.0 / (6.0 * nd));
}

double eigenvector_statistic(std::span<const double> uhat, std::size_t n) {
  if (uhat.size() != n) throw Error(Errc::invalid_argument, "eigenvector_statistic: length does not match n");
  return eigenvector_statistic_from_projection(ones_projection(uhat), n);
}

double p_value(double t_stat, Tail tail) noexcept {
  if (tail == Tail::upper) return stats::normal_cdf(-t_stat);
  return 2.0 * stats::normal_cdf(-std::fabs(t_stat));
}

TestResult run_test(const RankMatrix& r, double alpha, const TestOptions& options) {
  check_alpha(alpha);
  TestResult result;
  result.n = r.dim();
  result.moments = checked(moments(r.dim()));
  result.alpha = alpha;
  const EigenPair pair = leading_eigenpair(r.matrix(), options.power);
  result.lambda1 = pair.lambda;
  result.t_stat = (pair.lambda - result.moments.centering) / result.moments.sigma_tilde;
  result.p_value = p_value(result.t_stat, options.tail);
  result.reject = result.p_value < alpha;
  result.u1_dot_uhat = ones_projection(pair.vector);
  return result;
}

TestResult run_test(const SymmetricMatrix& a, double alpha, TiePolicy policy, const TestOptions& options) {
  check_alpha(alpha);
  if (a.dim() < 3) throw Error(Errc::invalid_argument, "run_test needs n >= 3, got " + std::to_string(a.dim()));
  return run_test(rank_transform(a, policy), alpha, options);
}

nlohmann::ordered_json to_json(const TestResult& r) {
  return {
      {"n", r.n},
      {"lambda1", r.lambda1},
      {"t_stat", r.t_stat},
      {"p_value", r.p_value},
      {"alpha", r.alpha},
      {"reject", r.reject},
      {"sigma_sq", r.moments.sigma_sq},
      {"sigma_tilde", r.moments.sigma_tilde},
      {"centering", r.moments.centering},
      {"u1_dot_uhat", r.u1_dot_uhat},
  };
}

SeparationEstimate e1f2(const EntryDistribution& f1, const EntryDistribution& f2, std::uint64_t seed,
                        std::size_t samples) {
  SeparationEstimate est;
  if (f1 == f2) return est;
  if (f1.is_normal() && f2.is_normal()) {
    const auto& a = std::get<Normal>(f1.family());
    const auto& b = std::get<Normal>(f2.family());
    est.value = stats::normal_cdf((a.mu - b.mu) / std::hypot(a.sigma, b.sigma));
    return est;
  }
  if (samples < 100) throw Error(Errc::invalid_argument, "e1f2: Monte Carlo needs at least 100 samples");
  SplitMix64 rng(seed);
  EntrySampler draw1(f1);
  EntrySampler draw2(f2);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x1 = draw1(rng);
    const double x2 = draw2(rng);
    hits += x2 <= x1 ? 1 : 0;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  est.value = p;
  est.method = SeparationEstimate::Method::monte_carlo;
  est.samples = samples;
  est.seed = seed;
  est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return est;
}

}  // namespace wwrank
