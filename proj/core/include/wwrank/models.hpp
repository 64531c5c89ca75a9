#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wwrank/distributions.hpp"
#include "wwrank/rank_transform.hpp"
#include "wwrank/symmetric_matrix.hpp"

namespace wwrank {

/// Latent node labels behind a generated matrix. Assignments are
/// deterministic (leading indices); the test statistic is invariant to node
/// relabelling, so nothing is lost by not randomizing them.
struct BlockAssignment {
  enum class Kind { none, two_block, planted };

  Kind kind = Kind::none;
  /// two_block: theta_i in {+1, -1}; planted: l_i in {1, 0}; none: empty.
  std::vector<int> labels;
  /// planted: number of nodes in the submatrix.
  std::size_t n1 = 0;

  static BlockAssignment none() { return {}; }
  /// theta = +1 on the first n/2 nodes, -1 on the rest. n must be even.
  static BlockAssignment two_block(std::size_t n);
  /// l = 1 on the first n1 nodes. Requires 1 <= n1 < n.
  static BlockAssignment planted(std::size_t n, std::size_t n1);

  /// Whether pair (i, j) draws from F1.
  bool inside(std::size_t i, std::size_t j) const noexcept;
};

struct GeneratedMatrix {
  SymmetricMatrix matrix;
  BlockAssignment blocks;
};

/// N i.i.d. draws from f in pack order.
SymmetricMatrix sample_homogeneous(std::size_t n, const EntryDistribution& f, std::uint64_t seed);

/// Balanced two-block model: F1 within blocks, F2 across.
GeneratedMatrix sample_two_block(std::size_t n, const EntryDistribution& f1, const EntryDistribution& f2,
                                 std::uint64_t seed);

/// F1 on the leading n1 x n1 principal submatrix, F2 elsewhere.
GeneratedMatrix sample_planted_submatrix(std::size_t n, std::size_t n1, const EntryDistribution& f1,
                                         const EntryDistribution& f2, std::uint64_t seed);

/// Number of extra candidate ranks k for the interpolation family; nullopt is k = infinity.
struct ExtraRanks {
  std::optional<std::uint64_t> k;

  static ExtraRanks finite(std::uint64_t k) { return {k}; }
  static ExtraRanks infinite() { return {std::nullopt}; }
  bool is_infinite() const noexcept { return !k.has_value(); }
};

/// Finite k: the N packed values are drawn without replacement from
/// {1/(N_k+1), ..., N_k/(N_k+1)} with N_k = N + k (k <= 10 N).
/// Infinite k: N i.i.d. Uniform(0, 1) values.
SymmetricMatrix sample_interpolated_rank(std::size_t n, ExtraRanks k, std::uint64_t seed);

/// A draw from the exact Wilcoxon-Wigner law (k = 0), already validated.
RankMatrix sample_rank_matrix(std::size_t n, std::uint64_t seed);

}  // namespace wwrank
