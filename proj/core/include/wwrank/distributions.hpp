#pragma once

#include <random>
#include <string>
#include <string_view>
#include <variant>

#include "wwrank/rng.hpp"

namespace wwrank {

struct Normal {
  double mu = 0.0;
  double sigma = 1.0;  ///< standard deviation
};

struct Uniform {
  double a = 0.0;
  double b = 1.0;
};

struct Exponential {
  double rate = 1.0;
};

/// Density shape * scale^shape * x^{-shape-1} on [scale, inf).
/// Pareto(1, 1) has no mean; Pareto(1/2, 2) has mean 1 and infinite variance.
struct Pareto {
  double scale = 1.0;
  double shape = 1.0;
};

/// Absolutely continuous entry law used by the generators.
class EntryDistribution {
 public:
  using Family = std::variant<Normal, Uniform, Exponential, Pareto>;

  /// Throws Error(invalid_argument) on bad parameters.
  EntryDistribution(Family family);  // NOLINT(google-explicit-constructor)

  const Family& family() const noexcept { return family_; }
  bool is_normal() const noexcept { return std::holds_alternative<Normal>(family_); }

  double cdf(double x) const noexcept;

  /// Canonical spelling, e.g. "normal(1,0.4)"; parse(to_string()) round-trips.
  std::string to_string() const;

  friend bool operator==(const EntryDistribution& a, const EntryDistribution& b) noexcept;

 private:
  Family family_;
};

/// Parses "normal(mu,sigma)", "uniform(a,b)", "exponential(rate)",
/// "pareto(scale,shape)". Errors carry the 1-based column of the problem.
EntryDistribution parse_distribution(std::string_view spec);

/// Draws from an EntryDistribution. Holds per-distribution state (the normal
/// sampler caches a spare variate), so use one sampler per stream.
class EntrySampler {
 public:
  explicit EntrySampler(const EntryDistribution& dist);

  double operator()(SplitMix64& rng);

 private:
  EntryDistribution::Family family_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
  std::exponential_distribution<double> exponential_;
};

}  // namespace wwrank
