#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "wwrank/distributions.hpp"
#include "wwrank/error.hpp"
#include "wwrank/hypothesis.hpp"
#include "wwrank/models.hpp"
#include "wwrank/spectra.hpp"

namespace wwrank {

/// 0 means one worker per hardware thread.
unsigned resolve_threads(unsigned requested) noexcept;

/// Calls fn(i) for every i in [0, count) on up to `threads` workers.
/// Callers store results by index, so the outcome does not depend on the
/// schedule. The failure with the lowest replicate index is rethrown with the
/// index prepended to its message.
template <class Fn>
void run_replicates(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex lock;
  std::size_t failed_index = count;
  std::exception_ptr failure;

  auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard guard(lock);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (!failure) return;
  const std::string where = "replicate " + std::to_string(failed_index) + ": ";
  try {
    std::rethrow_exception(failure);
  } catch (const Error& e) {
    throw Error(e.code(), where + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(where + e.what());
  }
}

enum class Model { homogeneous, two_block, planted };

std::string_view to_string(Model model) noexcept;
Model parse_model(std::string_view name);

/// Settings for a rejection-rate run. `f2` is ignored by the homogeneous model.
struct ExperimentConfig {
  Model model = Model::homogeneous;
  std::size_t n = 1000;
  std::size_t n1 = 0;  ///< planted only
  EntryDistribution f1{Uniform{}};
  EntryDistribution f2{Uniform{}};
  std::size_t replicates = 400;
  double alpha = 0.05;
  Tail tail = Tail::two_sided;
  std::uint64_t seed = 0;
  unsigned threads = 0;  ///< not echoed: reports must not depend on it
  double scale = 1.0;    ///< replicate multiplier already applied to `replicates`
  std::string label;

  /// Throws Error(invalid_argument) on inconsistent settings.
  void validate() const;
};

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);
/// Accepts the to_json layout plus an optional "threads". Missing keys keep
/// their defaults. Throws Error(parse) on malformed input.
ExperimentConfig config_from_json(const nlohmann::json& j);

struct ExperimentReport {
  nlohmann::ordered_json config;
  nlohmann::ordered_json summary;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  ///< one per replicate, in replicate order
  double elapsed_s = 0.0;

  std::vector<double> column(std::string_view name) const;

  /// {config, summary, replicates_path?, elapsed_s?}
  nlohmann::ordered_json to_json(const std::optional<std::string>& replicates_path = {},
                                 bool include_elapsed = true) const;

  /// Header row of column names, then one line per replicate.
  void write_replicates_csv(std::ostream& out) const;
};

/// mean, variance, skewness, ks_to_normal and 99 QQ points.
nlohmann::ordered_json normality_summary(std::span<const double> x);

/// Draw a matrix from cfg's model and replicate stream `index`.
SymmetricMatrix generate(const ExperimentConfig& cfg, std::size_t index);

ExperimentReport rejection_rate_experiment(const ExperimentConfig& cfg);

/// Variance of lambda_1 of the interpolated rank matrix for each k.
ExperimentReport variance_transition_experiment(std::size_t n, std::span<const ExtraRanks> ks,
                                                std::size_t replicates, std::uint64_t seed, unsigned threads = 0);

enum class NullStatistic { eigenvalue, eigenvector };

/// Null draws of the exact Wilcoxon-Wigner law. Both statistics are always
/// recorded; `which` selects the one summarized at the top level.
ExperimentReport null_distribution_experiment(std::size_t n, std::size_t replicates, std::uint64_t seed,
                                              NullStatistic which, unsigned threads = 0);

struct SemicircleReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  ESDSummary esd;
  double scaled_norm = 0.0;  ///< n^{-1/2} ||W||
  double elapsed_s = 0.0;

  nlohmann::ordered_json to_json(bool include_elapsed = true) const;
};

SemicircleReport semicircle_experiment(std::size_t n, std::size_t bins, std::uint64_t seed);

/// Frequency of ||R - E R|| >= 6 sqrt(n).
ExperimentReport operator_norm_tail_experiment(std::size_t n, std::size_t replicates, std::uint64_t seed,
                                               unsigned threads = 0);

/// Independent Uniform(0, 1) entries: the classical eigenvalue statistic and
/// the eigenvector linear form with Wilcoxon-Wigner scaling.
ExperimentReport fk_comparison_experiment(std::size_t n, std::size_t replicates, std::uint64_t seed,
                                          unsigned threads = 0);

/// mean ||u_R u_R' - u1 u1'||^2 / mean ||u_A u_A' - u1 u1'||^2 for Gaussian A
/// and its rank transform R. Tends to mu^2 / (3 sigma^2).
ExperimentReport subspace_recovery_ratio_experiment(std::size_t n, double mu, double sigma, std::size_t replicates,
                                                    std::uint64_t seed, unsigned threads = 0);

/// |u1' uhat - (-lambda_1/(n-1) + 3/2)| per replicate, summarized by median per n.
ExperimentReport eigen_relationship_experiment(std::span<const std::size_t> ns, std::size_t replicates,
                                               std::uint64_t seed, unsigned threads = 0);

}  // namespace wwrank
