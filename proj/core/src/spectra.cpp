#include "wwrank/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include "wwrank/error.hpp"
#include "wwrank/rng.hpp"

namespace wwrank {
namespace {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

void fix_sign(std::vector<double>& v) noexcept {
  double s = 0.0;
  for (double x : v) s += x;
  if (s == 0.0) {
    const auto it = std::find_if(v.begin(), v.end(), [](double x) { return x != 0.0; });
    s = it == v.end() ? 1.0 : *it;
  }
  if (s < 0.0) {
    for (double& x : v) x = -x;
  }
}

std::vector<double> random_unit_vector(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * rng.uniform01() - 1.0;
  const double s = norm2(v);
  for (double& x : v) x /= s;
  return v;
}

// Power iteration from a unit start vector. Empty optional means the iterate
// was annihilated (start vector in the null space). Stops once the Rayleigh
// quotient has settled for two iterations and the residual meets the EigenPair
// bound; the residual check also rejects the +-lambda oscillation that leaves
// the Rayleigh quotient constant.
std::optional<EigenPair> power_iterate(const SymmetricMatrix& m, std::vector<double> x, const PowerOptions& opt) {
  const std::size_t n = m.dim();
  const double spread = m.frobenius_norm() / std::sqrt(static_cast<double>(n));
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * m.frobenius_norm();
  std::vector<double> y(n);
  m.multiply(x, y);
  double lambda = dot(x, y);
  std::size_t stable = 0;
  std::size_t it = 0;
  while (true) {
    if (++it > opt.max_iter) {
      throw Error(Errc::convergence, "leading_eigenpair: no convergence after " + std::to_string(opt.max_iter) +
                                         " iterations (leading eigenvalue not dominant?)");
    }
    const double s = norm2(y);
    if (s == 0.0) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / s;
    m.multiply(x, y);
    const double next = dot(x, y);
    const double rel = std::abs(next - lambda) / std::max(std::abs(next), std::numeric_limits<double>::min());
    lambda = next;
    stable = rel < opt.tol ? stable + 1 : 0;
    if (stable >= 2) {
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) r += (y[i] - lambda * x[i]) * (y[i] - lambda * x[i]);
      if (std::sqrt(r) <= std::max(opt.tol * (std::abs(lambda) + spread), floor)) break;
    }
  }
  fix_sign(x);
  return EigenPair{lambda, std::move(x), it};
}

}  // namespace

EigenPair leading_eigenpair(const SymmetricMatrix& m, const PowerOptions& options) {
  const std::size_t n = m.dim();
  std::vector<double> start(n, 1.0 / std::sqrt(static_cast<double>(n)));
  auto pair = power_iterate(m, std::move(start), options);

  const double mean = m.off_diagonal_sum() / static_cast<double>(n * (n - 1));
  const bool stalled = pair && mean > 0.0 && pair->lambda < 0.5 * static_cast<double>(n) * mean;
  if (!pair || stalled) {
    auto retry = power_iterate(m, random_unit_vector(n, options.restart_seed), options);
    if (!pair && !retry) {
      // M annihilates two independent directions; treat as the zero matrix.
      std::vector<double> v = random_unit_vector(n, options.restart_seed);
      fix_sign(v);
      return EigenPair{0.0, std::move(v), 0};
    }
    if (!pair || (retry && retry->lambda > pair->lambda)) pair = std::move(retry);
  }
  return std::move(*pair);
}

double eigen_residual(const SymmetricMatrix& m, const EigenPair& pair) {
  auto y = m.multiply(pair.vector);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - pair.lambda * pair.vector[i];
    s += r * r;
  }
  return std::sqrt(s);
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> off) {
  const std::size_t n = d.size();
  if (n == 0) return d;
  if (off.size() + 1 != n) throw Error(Errc::invalid_argument, "tridiagonal_eigenvalues: size mismatch");
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());

  // Implicit QL with Wilkinson-style shifts (EISPACK tql1 structure).
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) + dd == dd) break;
      }
      if (m != l) {
        if (sweeps++ == 30) {
          throw Error(Errc::convergence, "full_spectrum: QL iteration did not converge for eigenvalue " +
                                             std::to_string(l));
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool deflated = false;
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(m) - 1; i >= static_cast<std::ptrdiff_t>(l); --i) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  return d;
}

std::vector<double> full_spectrum(const SymmetricMatrix& m, std::size_t cap) {
  const std::size_t n = m.dim();
  if (n > std::min(cap, kFullSpectrumCap)) {
    throw Error(Errc::capacity, "full_spectrum: n=" + std::to_string(n) + " exceeds the cap of " +
                                    std::to_string(std::min(cap, kFullSpectrumCap)));
  }
  // Householder reduction on the lower triangle of a dense row-major copy.
  std::vector<double> a = m.to_dense();
  std::vector<double> offdiag(n, 0.0);  // offdiag[i] couples rows i-1 and i
  std::vector<double> p(n);
  std::vector<double> q(n);
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double* u = &a[i * n];
    double scale = 0.0;
    for (std::size_t k = 0; k <= l; ++k) scale += std::abs(u[k]);
    if (l == 0 || scale == 0.0) {
      offdiag[i] = u[l];
      continue;
    }
    double h = 0.0;
    for (std::size_t k = 0; k <= l; ++k) {
      u[k] /= scale;
      h += u[k] * u[k];
    }
    const double f = u[l];
    const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
    offdiag[i] = scale * g;
    h -= f * g;
    u[l] = f - g;

    // p = B u / h over the leading (l+1) x (l+1) block B, read row-wise.
    std::fill(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(l + 1), 0.0);
    for (std::size_t j = 0; j <= l; ++j) {
      const double* aj = &a[j * n];
      const double uj = u[j];
      double acc = 0.0;
      for (std::size_t k = 0; k < j; ++k) {
        acc += aj[k] * u[k];
        p[k] += aj[k] * uj;
      }
      p[j] += acc + aj[j] * uj;
    }
    double up = 0.0;
    for (std::size_t j = 0; j <= l; ++j) {
      p[j] /= h;
      up += u[j] * p[j];
    }
    const double kappa = up / (2.0 * h);
    for (std::size_t j = 0; j <= l; ++j) q[j] = p[j] - kappa * u[j];
    // B <- B - q u' - u q'
    for (std::size_t j = 0; j <= l; ++j) {
      double* aj = &a[j * n];
      const double qj = q[j];
      const double uj = u[j];
      for (std::size_t k = 0; k <= j; ++k) aj[k] -= qj * u[k] + uj * q[k];
    }
  }
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a[i * n + i];
  std::vector<double> off(offdiag.begin() + 1, offdiag.end());
  auto eig = tridiagonal_eigenvalues(std::move(diag), std::move(off));
  std::sort(eig.begin(), eig.end(), std::greater<>());

  double total = 0.0;
  for (double x : eig) total += x;
  const double bound = 1e-8 * static_cast<double>(n) * std::max(m.max_abs(), std::numeric_limits<double>::min());
  if (std::abs(total) > bound) {
    throw Error(Errc::convergence, "full_spectrum: eigenvalue sum deviates from the trace");
  }
  return eig;
}

ExtremeEigenvalues extreme_eigenvalues(const SymmetricMatrix& m, const NormOptions& options) {
  const std::size_t n = m.dim();
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  basis.push_back(random_unit_vector(n, options.seed));
  std::vector<double> w(n);
  const double scale = std::max(m.frobenius_norm(), std::numeric_limits<double>::min());

  ExtremeEigenvalues out;
  std::size_t stable = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& qk = basis.back();
    m.multiply(qk, w);
    const double a = dot(qk, w);
    alpha.push_back(a);
    for (std::size_t i = 0; i < n; ++i) w[i] -= a * qk[i];
    if (k > 0) {
      const auto& prev = basis[k - 1];
      for (std::size_t i = 0; i < n; ++i) w[i] -= beta.back() * prev[i];
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qj : basis) {
        const double c = dot(qj, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * qj[i];
      }
    }
    const double b = norm2(w);

    auto theta = tridiagonal_eigenvalues(alpha, beta);
    const auto [lo, hi] = std::minmax_element(theta.begin(), theta.end());
    const double new_min = *lo;
    const double new_max = *hi;
    const double ref = std::max({std::abs(new_min), std::abs(new_max), std::numeric_limits<double>::min()});
    const bool settled = k > 0 && std::abs(new_max - out.max) <= options.tol * ref &&
                         std::abs(new_min - out.min) <= options.tol * ref;
    out.min = new_min;
    out.max = new_max;
    out.iterations = k + 1;
    stable = settled ? stable + 1 : 0;
    if (stable >= 3 || b <= 1e-14 * scale || k + 1 == n) break;
    for (std::size_t i = 0; i < n; ++i) w[i] /= b;
    beta.push_back(b);
    basis.push_back(w);
  }
  return out;
}

double operator_norm(const SymmetricMatrix& m, const NormOptions& options) {
  const auto ext = extreme_eigenvalues(m, options);
  return std::max(std::abs(ext.min), std::abs(ext.max));
}

double semicircle_cdf(double x) noexcept {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) + std::asin(0.5 * x) / std::numbers::pi;
}

double semicircle_density(double x) noexcept {
  if (x <= -2.0 || x >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

ESDSummary esd_from_eigenvalues(std::span<const double> eigenvalues, std::size_t n, std::size_t bins) {
  if (bins == 0) throw Error(Errc::invalid_argument, "esd: bins must be positive");
  if (eigenvalues.empty()) throw Error(Errc::invalid_argument, "esd: no eigenvalues");
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> x(eigenvalues.begin(), eigenvalues.end());
  for (double& v : x) v /= root_n;
  std::sort(x.begin(), x.end());

  ESDSummary s;
  const double width = 2.0 * kEsdRange / static_cast<double>(bins);
  s.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) s.bin_edges[b] = -kEsdRange + width * static_cast<double>(b);
  s.bin_edges[bins] = kEsdRange;
  s.masses.assign(bins, 0.0);
  const double unit = 1.0 / static_cast<double>(x.size());
  for (double v : x) {
    const double pos = std::floor((v + kEsdRange) / width);
    const auto b = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    s.masses[b] += unit;
  }

  double d = 0.0;
  const double count = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = semicircle_cdf(x[i]);
    d = std::max({d, f - static_cast<double>(i) / count, static_cast<double>(i + 1) / count - f});
  }
  s.ks_to_semicircle = d;
  s.min_eigenvalue = x.front();
  s.max_eigenvalue = x.back();
  return s;
}

ESDSummary esd(const SymmetricMatrix& w, std::size_t bins, std::size_t cap) {
  const auto eig = full_spectrum(w, cap);
  return esd_from_eigenvalues(eig, w.dim(), bins);
}

void write_esd_csv(std::ostream& out, const ESDSummary& summary) {
  out << "bin_left,bin_right,mass\n";
  const auto old_precision = out.precision(17);
  for (std::size_t b = 0; b < summary.masses.size(); ++b) {
    out << summary.bin_edges[b] << ',' << summary.bin_edges[b + 1] << ',' << summary.masses[b] << '\n';
  }
  out.precision(old_precision);
}

double subspace_distance_sq(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.empty()) {
    throw Error(Errc::invalid_argument, "subspace_distance_sq: vectors must have equal, nonzero length");
  }
  if (std::abs(norm2(u) - 1.0) > 1e-8 || std::abs(norm2(v) - 1.0) > 1e-8) {
    throw Error(Errc::invalid_argument, "subspace_distance_sq: inputs must be unit vectors");
  }
  const double t = dot(u, v);
  return std::max(0.0, 2.0 * (1.0 - t * t));
}

double ones_projection(std::span<const double> v) noexcept {
  double s = 0.0;
  for (double x : v) s += x;
  return s / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace wwrank
