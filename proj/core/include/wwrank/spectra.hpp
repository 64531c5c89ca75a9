#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "wwrank/symmetric_matrix.hpp"

namespace wwrank {

/// Leading eigenvalue with a unit eigenvector whose entries sum to a
/// positive number (u1' v > 0 for u1 = n^{-1/2} 1).
struct EigenPair {
  double lambda = 0.0;
  std::vector<double> vector;
  std::size_t iterations = 0;
};

struct PowerOptions {
  /// Relative Rayleigh-quotient change, two iterations running; the residual
  /// must also be at most tol * (|lambda| + ||M||_F / sqrt(n)).
  double tol = 1e-12;
  std::size_t max_iter = 10000;
  std::uint64_t restart_seed = 0x5EED5EED5EEDULL;
};

/// Power iteration from n^{-1/2} 1 with Rayleigh-quotient estimates.
///
/// The start vector matches the population eigenvector of a Wilcoxon-Wigner
/// matrix. If the iterate collapses to zero, or the converged value stalls
/// below (n/2) * mean entry (n/4 for a rank matrix) while the entries are
/// positive on average, the solve is repeated once from a seeded random vector
/// and the larger of the two eigenvalues wins.
///
/// Throws Error(convergence) after max_iter iterations, which is what happens
/// when the two largest eigenvalues have (nearly) equal modulus.
EigenPair leading_eigenpair(const SymmetricMatrix& m, const PowerOptions& options = {});

/// ||M v - lambda v||_2.
double eigen_residual(const SymmetricMatrix& m, const EigenPair& pair);

/// Default and hard limit on the dimension accepted by full_spectrum.
inline constexpr std::size_t kFullSpectrumCap = 4000;

/// All eigenvalues, descending: Householder tridiagonalization followed by the
/// implicit-shift QL iteration. Throws Error(capacity) if n > cap and
/// Error(convergence) if an eigenvalue needs more than 30 QL sweeps.
std::vector<double> full_spectrum(const SymmetricMatrix& m, std::size_t cap = kFullSpectrumCap);

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal and
/// off-diagonal (offdiag[i] couples i and i+1). Ascending order is not
/// guaranteed; callers sort.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag);

struct NormOptions {
  double tol = 1e-12;
  std::uint64_t seed = 0x0DD5EEDULL;
};

/// Extreme eigenvalues from a Lanczos run with full reorthogonalization.
struct ExtremeEigenvalues {
  double min = 0.0;
  double max = 0.0;
  std::size_t iterations = 0;
};

ExtremeEigenvalues extreme_eigenvalues(const SymmetricMatrix& m, const NormOptions& options = {});

/// Spectral norm max(|lambda_max|, |lambda_min|).
double operator_norm(const SymmetricMatrix& m, const NormOptions& options = {});

/// Semicircle law CDF on [-2, 2].
double semicircle_cdf(double x) noexcept;
/// Semicircle density (2 pi)^{-1} sqrt(4 - x^2).
double semicircle_density(double x) noexcept;

/// Normalized eigenvalue histogram of n^{-1/2} W on [-2.5, 2.5] and the
/// Kolmogorov distance of the empirical CDF to the semicircle law.
struct ESDSummary {
  std::vector<double> bin_edges;  ///< bins + 1 edges
  std::vector<double> masses;     ///< sums to 1; values outside the range land in the end bins
  double ks_to_semicircle = 0.0;
  double min_eigenvalue = 0.0;    ///< of n^{-1/2} W
  double max_eigenvalue = 0.0;
};

inline constexpr double kEsdRange = 2.5;

ESDSummary esd(const SymmetricMatrix& w, std::size_t bins, std::size_t cap = kFullSpectrumCap);
/// Same, from already-computed eigenvalues of W (not yet scaled by n^{-1/2}).
ESDSummary esd_from_eigenvalues(std::span<const double> eigenvalues, std::size_t n, std::size_t bins);

/// CSV with header "bin_left,bin_right,mass".
void write_esd_csv(std::ostream& out, const ESDSummary& summary);

/// ||u u' - v v'||_F^2 = 2 (1 - (u'v)^2) for unit vectors.
double subspace_distance_sq(std::span<const double> u, std::span<const double> v);

/// u1' v with u1 = n^{-1/2} 1.
double ones_projection(std::span<const double> v) noexcept;

}  // namespace wwrank
