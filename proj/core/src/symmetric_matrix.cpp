#include "wwrank/symmetric_matrix.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "wwrank/error.hpp"

namespace wwrank {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::parse: return "parse";
    case Errc::io: return "io";
    case Errc::asymmetry: return "asymmetry";
    case Errc::ties: return "ties";
    case Errc::convergence: return "convergence";
    case Errc::capacity: return "capacity";
  }
  return "unknown";
}

std::size_t pack_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i == j) {
    throw Error(Errc::invalid_argument, "pack_index: diagonal pair (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ") has no packed slot");
  }
  if (!(i < j && j < n)) {
    throw Error(Errc::invalid_argument, "pack_index: need 0 <= i < j < n, got i=" + std::to_string(i) +
                                            " j=" + std::to_string(j) + " n=" + std::to_string(n));
  }
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> unpack_index(std::size_t k, std::size_t n) {
  if (n < 2 || k >= packed_size(n)) {
    throw Error(Errc::invalid_argument, "unpack_index: flat index " + std::to_string(k) +
                                            " out of range for n=" + std::to_string(n));
  }
  // Row i holds n-1-i entries; walk rows. Good enough for the sizes used here.
  std::size_t i = 0;
  std::size_t start = 0;
  while (start + (n - 1 - i) <= k) {
    start += n - 1 - i;
    ++i;
  }
  return {i, i + 1 + (k - start)};
}

SymmetricMatrix::SymmetricMatrix(std::size_t n) : n_(n) {
  if (n < 2) throw Error(Errc::invalid_argument, "SymmetricMatrix: dimension must be >= 2");
  values_.assign(packed_size(n), 0.0);
}

SymmetricMatrix::SymmetricMatrix(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (n < 2) throw Error(Errc::invalid_argument, "SymmetricMatrix: dimension must be >= 2");
  if (values_.size() != packed_size(n)) {
    throw Error(Errc::invalid_argument, "SymmetricMatrix: expected " + std::to_string(packed_size(n)) +
                                            " packed values for n=" + std::to_string(n) + ", got " +
                                            std::to_string(values_.size()));
  }
}

double SymmetricMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
  assert(i < n_ && j < n_);
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  return values_[row_offset(i) + (j - i - 1)];
}

double SymmetricMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw Error(Errc::invalid_argument, "SymmetricMatrix::at: index out of range");
  return (*this)(i, j);
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i > j) std::swap(i, j);
  values_[pack_index(i, j, n_)] = value;
}

void SymmetricMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) {
    throw Error(Errc::invalid_argument, "SymmetricMatrix::multiply: vector length mismatch");
  }
  for (auto& v : y) v = 0.0;
  const double* a = values_.data();
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const std::size_t len = n_ - i - 1;
    const double* row = a + row_offset(i);
    const double* xs = x.data() + i + 1;
    double* ys = y.data() + i + 1;
    const double xi = x[i];
    double acc = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      acc += row[k] * xs[k];
      ys[k] += row[k] * xi;
    }
    y[i] += acc;
  }
}

std::vector<double> SymmetricMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_);
  multiply(x, y);
  return y;
}

double SymmetricMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SymmetricMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(2.0 * s);
}

double SymmetricMatrix::off_diagonal_sum() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v;
  return 2.0 * s;
}

std::vector<double> SymmetricMatrix::to_dense() const {
  std::vector<double> d(n_ * n_, 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j, ++k) {
      d[i * n_ + j] = values_[k];
      d[j * n_ + i] = values_[k];
    }
  }
  return d;
}

SymmetricMatrix expectation_matrix(std::size_t n) {
  if (n < 2) throw Error(Errc::invalid_argument, "expectation_matrix: n must be >= 2");
  return SymmetricMatrix(n, std::vector<double>(packed_size(n), 0.5));
}

SymmetricMatrix permute(const SymmetricMatrix& m, std::span<const std::size_t> perm) {
  const std::size_t n = m.dim();
  if (perm.size() != n) throw Error(Errc::invalid_argument, "permute: permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw Error(Errc::invalid_argument, "permute: not a permutation");
    seen[p] = true;
  }
  SymmetricMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.set(perm[i], perm[j], m(i, j));
  }
  return out;
}

}  // namespace wwrank
