#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wwrank/symmetric_matrix.hpp"

namespace wwrank {

/// What to do when two upper-triangle entries compare equal.
///
/// `random` breaks each tied group by a seeded uniform shuffle of the contested
/// ranks. The data model assumes continuous entries, so this is a practical
/// fallback rather than part of the theory; any other tie distribution would be
/// equally defensible.
class TiePolicy {
 public:
  enum class Kind { error, random };

  static constexpr TiePolicy error() noexcept { return TiePolicy(Kind::error, 0); }
  static constexpr TiePolicy random(std::uint64_t seed) noexcept { return TiePolicy(Kind::random, seed); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr std::uint64_t seed() const noexcept { return seed_; }

 private:
  constexpr TiePolicy(Kind kind, std::uint64_t seed) noexcept : kind_(kind), seed_(seed) {}
  Kind kind_;
  std::uint64_t seed_;
};

/// Wilcoxon-Wigner matrix: the packed values are a permutation of
/// {1/(N+1), ..., N/(N+1)} with N = n(n-1)/2.
class RankMatrix {
 public:
  /// Validates the permutation invariant; throws Error(invalid_argument) otherwise.
  static RankMatrix adopt(SymmetricMatrix m);

  const SymmetricMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }

  friend bool operator==(const RankMatrix&, const RankMatrix&) = default;

 private:
  friend RankMatrix rank_transform(const SymmetricMatrix&, TiePolicy);
  friend RankMatrix rank_matrix_from_permutation(std::size_t, std::vector<std::uint32_t>);
  explicit RankMatrix(SymmetricMatrix m) : m_(std::move(m)) {}
  SymmetricMatrix m_;
};

/// The normalized rank of slot k is ranks[k] / (N+1); `ranks` must be a
/// permutation of 1..N.
RankMatrix rank_matrix_from_permutation(std::size_t n, std::vector<std::uint32_t> ranks);

/// Value assigned to rank r (1-based) among N entries.
inline double normalized_rank(std::size_t r, std::size_t count) noexcept {
  return static_cast<double>(r) / static_cast<double>(count + 1);
}

/// Replaces each upper-triangle entry by its rank among all N entries divided
/// by N+1. Throws Error(ties) if equal entries exist under TiePolicy::error(),
/// Error(invalid_argument) on NaN input.
RankMatrix rank_transform(const SymmetricMatrix& a, TiePolicy policy);

/// Exact finite-n moments of a Wilcoxon-Wigner matrix and the leading
/// eigenvalue CLT constants derived from them.
struct WWMoments {
  std::size_t n = 0;
  std::size_t N = 0;
  double sigma_sq = 0.0;     ///< var(R_ij) = 1/12 - 1/(6(N+1))
  double cov = 0.0;          ///< cov(R_ij, R_kl) = -1/(12(N+1)) for distinct pairs
  double sigma_tilde = 0.0;  ///< sqrt(8 sigma_sq^2 / n)
  double centering = 0.0;    ///< (n-1)/2 + 2 sigma_sq
};

WWMoments moments(std::size_t n);

/// (R - E R) / sigma_n. Requires n >= 3.
SymmetricMatrix whiten(const RankMatrix& r);

/// R - E R.
SymmetricMatrix center(const RankMatrix& r);

}  // namespace wwrank
