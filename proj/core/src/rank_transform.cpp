#include "wwrank/rank_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "wwrank/error.hpp"
#include "wwrank/rng.hpp"

namespace wwrank {
namespace {

void check_rank_capacity(std::size_t count) {
  if (count >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::capacity, "rank_transform: too many entries (" + std::to_string(count) + ")");
  }
}

}  // namespace

RankMatrix RankMatrix::adopt(SymmetricMatrix m) {
  const std::size_t count = m.size();
  std::vector<double> sorted(m.values().begin(), m.values().end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < count; ++k) {
    if (sorted[k] != normalized_rank(k + 1, count)) {
      throw Error(Errc::invalid_argument,
                  "RankMatrix: packed values are not a permutation of {1/(N+1), ..., N/(N+1)}");
    }
  }
  return RankMatrix(std::move(m));
}

RankMatrix rank_matrix_from_permutation(std::size_t n, std::vector<std::uint32_t> ranks) {
  const std::size_t count = packed_size(n);
  if (n < 2 || ranks.size() != count) {
    throw Error(Errc::invalid_argument, "rank_matrix_from_permutation: need packed_size(n) ranks");
  }
  std::vector<bool> seen(count + 1, false);
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint32_t r = ranks[k];
    if (r == 0 || r > count || seen[r]) {
      throw Error(Errc::invalid_argument, "rank_matrix_from_permutation: ranks are not a permutation of 1..N");
    }
    seen[r] = true;
    values[k] = normalized_rank(r, count);
  }
  return RankMatrix(SymmetricMatrix(n, std::move(values)));
}

RankMatrix rank_transform(const SymmetricMatrix& a, TiePolicy policy) {
  const auto values = a.values();
  const std::size_t count = values.size();
  check_rank_capacity(count);

  // (value, slot) pairs sorted lexicographically: equal values keep slot order,
  // which makes the tie groups and their shuffles deterministic.
  std::vector<std::pair<double, std::uint32_t>> order(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (std::isnan(values[k])) {
      throw Error(Errc::invalid_argument, "rank_transform: NaN entry at packed slot " + std::to_string(k));
    }
    order[k] = {values[k], static_cast<std::uint32_t>(k)};
  }
  std::sort(order.begin(), order.end());

  SplitMix64 rng(policy.seed());
  std::vector<double> ranked(count);
  std::size_t tied_entries = 0;
  for (std::size_t first = 0; first < count;) {
    std::size_t last = first + 1;
    while (last < count && order[last].first == order[first].first) ++last;
    if (last - first > 1) {
      if (policy.kind() == TiePolicy::Kind::error) {
        tied_entries += last - first;
      } else {
        std::shuffle(order.begin() + static_cast<std::ptrdiff_t>(first),
                     order.begin() + static_cast<std::ptrdiff_t>(last), rng);
      }
    }
    for (std::size_t r = first; r < last; ++r) ranked[order[r].second] = normalized_rank(r + 1, count);
    first = last;
  }
  if (tied_entries > 0) {
    throw Error(Errc::ties, "rank_transform: " + std::to_string(tied_entries) +
                                " entries share a value with another entry; use the random tie policy to break ties");
  }
  return RankMatrix(SymmetricMatrix(a.dim(), std::move(ranked)));
}

WWMoments moments(std::size_t n) {
  if (n < 2) throw Error(Errc::invalid_argument, "moments: n must be >= 2");
  WWMoments m;
  m.n = n;
  m.N = packed_size(n);
  const double np1 = static_cast<double>(m.N) + 1.0;
  m.sigma_sq = 1.0 / 12.0 - 1.0 / (6.0 * np1);
  m.cov = -1.0 / (12.0 * np1);
  m.sigma_tilde = std::sqrt(8.0 * m.sigma_sq * m.sigma_sq / static_cast<double>(n));
  m.centering = 0.5 * static_cast<double>(n - 1) + 2.0 * m.sigma_sq;
  return m;
}

SymmetricMatrix whiten(const RankMatrix& r) {
  const std::size_t n = r.dim();
  if (n < 3) throw Error(Errc::invalid_argument, "whiten: n must be >= 3 (entry variance is zero at n = 2)");
  const double sigma = std::sqrt(moments(n).sigma_sq);
  std::vector<double> w(r.matrix().values().begin(), r.matrix().values().end());
  for (double& v : w) v = (v - 0.5) / sigma;
  return SymmetricMatrix(n, std::move(w));
}

SymmetricMatrix center(const RankMatrix& r) {
  std::vector<double> c(r.matrix().values().begin(), r.matrix().values().end());
  for (double& v : c) v -= 0.5;
  return SymmetricMatrix(r.dim(), std::move(c));
}

}  // namespace wwrank
