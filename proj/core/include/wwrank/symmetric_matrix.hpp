#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wwrank {

/// Number of strictly upper-triangular entries of an n x n matrix.
constexpr std::size_t packed_size(std::size_t n) noexcept { return n * (n - 1) / 2; }

/// Flat position of the pair (i, j), i < j, in lexicographic pack order.
/// Throws Error(invalid_argument) unless 0 <= i < j < n.
std::size_t pack_index(std::size_t i, std::size_t j, std::size_t n);

/// Inverse of pack_index.
std::pair<std::size_t, std::size_t> unpack_index(std::size_t k, std::size_t n);

/// Dense real symmetric matrix with an implicit zero diagonal, stored as the
/// strictly upper triangle packed row by row: (0,1), (0,2), ..., (0,n-1), (1,2), ...
///
/// Instances are treated as immutable once handed out; the mutable accessors
/// exist for the code that builds them.
class SymmetricMatrix {
 public:
  /// Zero matrix of dimension n (n >= 2).
  explicit SymmetricMatrix(std::size_t n);
  /// Adopts packed values; values.size() must equal packed_size(n).
  SymmetricMatrix(std::size_t n, std::vector<double> values);

  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Entry (i, j); zero on the diagonal. No bounds checking beyond asserts.
  double operator()(std::size_t i, std::size_t j) const noexcept;
  /// Checked access.
  double at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double value);

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> mutable_values() noexcept { return values_; }

  /// Start of row i's strictly-upper segment (columns i+1 .. n-1) in values().
  std::size_t row_offset(std::size_t i) const noexcept { return i * (2 * n_ - i - 1) / 2; }

  /// y = M x. Sequential, fixed summation order.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;
  /// Sum over all off-diagonal entries (each unordered pair counted twice).
  double off_diagonal_sum() const noexcept;

  /// Row-major n x n copy.
  std::vector<double> to_dense() const;

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

/// E(R) for a Wilcoxon-Wigner matrix: every off-diagonal entry 1/2.
SymmetricMatrix expectation_matrix(std::size_t n);

/// Same matrix with node labels relabelled: result(perm[i], perm[j]) = m(i, j).
SymmetricMatrix permute(const SymmetricMatrix& m, std::span<const std::size_t> perm);

// ---------------------------------------------------------------------------
// Text formats

enum class MatrixFormat {
  dense_csv,            ///< n rows of n comma-separated reals
  upper_triangle_text,  ///< "n" then packed_size(n) whitespace-separated reals
  weighted_edge_list,   ///< "i j w" per line, 0-indexed, every unordered pair once
};

std::string_view to_string(MatrixFormat format) noexcept;
/// Accepts "dense-csv", "upper-triangle-text", "weighted-edge-list".
MatrixFormat parse_matrix_format(std::string_view name);

/// Entries of a dense input may disagree by at most this much (relative to
/// max(1, |A_ij|)) across the diagonal; such pairs are averaged.
inline constexpr double kSymmetryTolerance = 1e-9;

SymmetricMatrix read_matrix(std::istream& in, MatrixFormat format);
SymmetricMatrix load_matrix(const std::string& path, MatrixFormat format);

/// Emits shortest round-trip representations, so read(write(M)) == M exactly.
void write_matrix(std::ostream& out, const SymmetricMatrix& m, MatrixFormat format);
void save_matrix(const std::string& path, const SymmetricMatrix& m, MatrixFormat format);

}  // namespace wwrank
