#include "wwrank/models.hpp"

#include <numeric>
#include <random>
#include <string>

#include "wwrank/error.hpp"
#include "wwrank/rng.hpp"

namespace wwrank {
namespace {

void require_dim(std::size_t n, const char* who) {
  if (n < 2) throw Error(Errc::invalid_argument, std::string(who) + ": n must be >= 2");
}

GeneratedMatrix sample_blocks(std::size_t n, BlockAssignment blocks, const EntryDistribution& f1,
                              const EntryDistribution& f2, std::uint64_t seed) {
  SplitMix64 rng(seed);
  EntrySampler inside(f1);
  EntrySampler outside(f2);
  SymmetricMatrix m(n);
  auto values = m.mutable_values();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) values[k] = blocks.inside(i, j) ? inside(rng) : outside(rng);
  }
  return {std::move(m), std::move(blocks)};
}

// First `take` entries of a uniformly shuffled 1..pool (partial Fisher-Yates).
std::vector<std::uint32_t> draw_without_replacement(std::size_t pool, std::size_t take, SplitMix64& rng) {
  std::vector<std::uint32_t> ranks(pool);
  std::iota(ranks.begin(), ranks.end(), std::uint32_t{1});
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool - 1);
    std::swap(ranks[i], ranks[pick(rng)]);
  }
  ranks.resize(take);
  return ranks;
}

}  // namespace

BlockAssignment BlockAssignment::two_block(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw Error(Errc::invalid_argument, "two-block model: n must be even and >= 2, got " + std::to_string(n));
  }
  BlockAssignment b;
  b.kind = Kind::two_block;
  b.labels.assign(n, -1);
  std::fill(b.labels.begin(), b.labels.begin() + static_cast<std::ptrdiff_t>(n / 2), 1);
  return b;
}

BlockAssignment BlockAssignment::planted(std::size_t n, std::size_t n1) {
  if (n1 < 1 || n1 >= n) {
    throw Error(Errc::invalid_argument, "planted submatrix: need 1 <= n1 < n, got n1=" + std::to_string(n1) +
                                            " n=" + std::to_string(n));
  }
  BlockAssignment b;
  b.kind = Kind::planted;
  b.n1 = n1;
  b.labels.assign(n, 0);
  std::fill(b.labels.begin(), b.labels.begin() + static_cast<std::ptrdiff_t>(n1), 1);
  return b;
}

bool BlockAssignment::inside(std::size_t i, std::size_t j) const noexcept {
  switch (kind) {
    case Kind::none: return true;
    case Kind::two_block: return labels[i] * labels[j] == 1;
    case Kind::planted: return labels[i] * labels[j] == 1;
  }
  return true;
}

SymmetricMatrix sample_homogeneous(std::size_t n, const EntryDistribution& f, std::uint64_t seed) {
  require_dim(n, "sample_homogeneous");
  SplitMix64 rng(seed);
  EntrySampler draw(f);
  std::vector<double> values(packed_size(n));
  for (double& v : values) v = draw(rng);
  return SymmetricMatrix(n, std::move(values));
}

GeneratedMatrix sample_two_block(std::size_t n, const EntryDistribution& f1, const EntryDistribution& f2,
                                 std::uint64_t seed) {
  return sample_blocks(n, BlockAssignment::two_block(n), f1, f2, seed);
}

GeneratedMatrix sample_planted_submatrix(std::size_t n, std::size_t n1, const EntryDistribution& f1,
                                         const EntryDistribution& f2, std::uint64_t seed) {
  require_dim(n, "sample_planted_submatrix");
  return sample_blocks(n, BlockAssignment::planted(n, n1), f1, f2, seed);
}

SymmetricMatrix sample_interpolated_rank(std::size_t n, ExtraRanks k, std::uint64_t seed) {
  require_dim(n, "sample_interpolated_rank");
  const std::size_t count = packed_size(n);
  SplitMix64 rng(seed);
  std::vector<double> values(count);
  if (k.is_infinite()) {
    for (double& v : values) v = rng.uniform01();
    return SymmetricMatrix(n, std::move(values));
  }
  if (*k.k > 10 * static_cast<std::uint64_t>(count)) {
    throw Error(Errc::invalid_argument, "sample_interpolated_rank: k must not exceed 10 N");
  }
  const std::size_t pool = count + static_cast<std::size_t>(*k.k);
  if (pool >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::capacity, "sample_interpolated_rank: rank pool too large");
  }
  const auto ranks = draw_without_replacement(pool, count, rng);
  for (std::size_t i = 0; i < count; ++i) values[i] = normalized_rank(ranks[i], pool);
  return SymmetricMatrix(n, std::move(values));
}

RankMatrix sample_rank_matrix(std::size_t n, std::uint64_t seed) {
  require_dim(n, "sample_rank_matrix");
  const std::size_t count = packed_size(n);
  SplitMix64 rng(seed);
  return rank_matrix_from_permutation(n, draw_without_replacement(count, count, rng));
}

}  // namespace wwrank
