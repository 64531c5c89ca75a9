#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include <nlohmann/json.hpp>

#include "wwrank/distributions.hpp"
#include "wwrank/rank_transform.hpp"
#include "wwrank/spectra.hpp"
#include "wwrank/symmetric_matrix.hpp"

namespace wwrank {

/// Upper 0.025 quantile of the standard normal.
inline constexpr double kZ0025 = 1.9599639845;

enum class Tail {
  two_sided,  ///< p = 2 (1 - Phi(|T|))
  upper,      ///< p = 1 - Phi(T); only sensible when the alternative raises lambda_1
};

struct TestOptions {
  Tail tail = Tail::two_sided;
  PowerOptions power{};
};

struct TestResult {
  std::size_t n = 0;
  double lambda1 = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
  double alpha = 0.05;
  bool reject = false;
  WWMoments moments{};
  double u1_dot_uhat = 0.0;
};

/// Standard normal CDF; exactly 0 or 1 beyond |x| > 40.
double std_normal_cdf(double x) noexcept;

/// sigma_tilde^{-1} (lambda1 - (n-1)/2 - 2 sigma^2). Requires n >= 3.
double eigenvalue_statistic(double lambda1, std::size_t n);

/// n sigma_tilde^{-1} (u1' uhat - 1 + 1/(6n)) for a sign-fixed unit vector uhat.
double eigenvector_statistic(std::span<const double> uhat, std::size_t n);

/// Same statistic from a precomputed u1' uhat.
double eigenvector_statistic_from_projection(double u1_dot_uhat, std::size_t n);

double p_value(double t_stat, Tail tail = Tail::two_sided) noexcept;

/// Rank-transform, leading eigenpair, T_n, decision (reject iff p < alpha).
TestResult run_test(const SymmetricMatrix& a, double alpha, TiePolicy policy, const TestOptions& options = {});

/// Same pipeline for an already ranked matrix.
TestResult run_test(const RankMatrix& r, double alpha, const TestOptions& options = {});

/// {n, lambda1, t_stat, p_value, alpha, reject, sigma_sq, sigma_tilde, centering, u1_dot_uhat}
nlohmann::ordered_json to_json(const TestResult& result);

struct SeparationEstimate {
  enum class Method { closed_form, monte_carlo };

  double value = 0.5;
  Method method = Method::closed_form;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double std_error = 0.0;  ///< zero for the closed form
};

inline constexpr std::size_t kDefaultSeparationSamples = 1'000'000;

/// pr(X2 <= X1) for independent X1 ~ F1, X2 ~ F2. Gaussian pairs use the
/// closed form; identical laws return exactly 1/2; everything else is Monte
/// Carlo with `samples` >= 100 pairs.
SeparationEstimate e1f2(const EntryDistribution& f1, const EntryDistribution& f2, std::uint64_t seed,
                        std::size_t samples = kDefaultSeparationSamples);

}  // namespace wwrank
