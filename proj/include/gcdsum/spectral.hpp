#pragma once

// Largest eigenvalue of the N x N matrix A_{mn} = (m,n)^{2a} / (mn)^a by
// power iteration on a matrix-free operator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "gcdsum/alpha.hpp"
#include "gcdsum/arith.hpp"
#include "gcdsum/compensated.hpp"
#include "gcdsum/detail/parallel.hpp"
#include "gcdsum/errors.hpp"
#include "gcdsum/sums.hpp"

namespace gcdsum {

/// Applies A through the divisor decomposition
///   (Ax)_m = m^{-a} sum_{e | m} j_{2a}(e) c_e,  c_e = sum_{e | n} n^{-a} x_n,
/// at O(N log N) cost per product.
class GcdOperator {
 public:
  GcdOperator(std::uint64_t n, AlphaParam alpha, unsigned threads = 1)
      : n_(n), alpha_(alpha), threads_(std::max(1u, threads)) {
    if (n == 0) throw DomainError("GcdOperator: N must be positive");
    std::unique_ptr<SpfTable> owned;
    const SpfTable& table = detail::table_for(std::max<std::uint64_t>(n, 2), owned);
    j_ = detail::jordan_table(n, 2.0 * alpha.value(), table);
    w_.resize(n + 1);
    for (std::uint64_t m = 1; m <= n; ++m) w_[m] = std::pow(static_cast<double>(m), -alpha.value());
  }

  std::uint64_t size() const noexcept { return n_; }
  AlphaParam alpha() const noexcept { return alpha_; }

  /// y = A x; x and y are indexed 0..N-1 for m = 1..N.
  void apply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != n_ || y.size() != n_) throw DomainError("GcdOperator::apply: size mismatch");
    std::vector<double> c(n_ + 1, 0.0);
    // c_e only reads x, so splitting over e needs no merge.
    detail::parallel_for(n_, threads_, [&](unsigned, std::size_t i) {
      const std::uint64_t e = i + 1;
      double acc = 0.0;
      for (std::uint64_t m = e; m <= n_; m += e) acc += w_[m] * x[m - 1];
      c[e] = j_[e] * acc;
    });
    // Scatter j(e) c_e onto multiples of e. Per-worker partial arrays are
    // merged in worker order.
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads_, n_));
    std::vector<std::vector<double>> partial(workers, std::vector<double>(n_ + 1, 0.0));
    detail::parallel_for(n_, workers, [&](unsigned w, std::size_t i) {
      const std::uint64_t e = i + 1;
      const double ce = c[e];
      auto& out = partial[w];
      for (std::uint64_t m = e; m <= n_; m += e) out[m] += ce;
    });
    for (std::uint64_t m = 1; m <= n_; ++m) {
      double acc = 0.0;
      for (unsigned w = 0; w < workers; ++w) acc += partial[w][m];
      y[m - 1] = w_[m] * acc;
    }
  }

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> y(n_);
    apply(x, y);
    return y;
  }

 private:
  std::uint64_t n_;
  AlphaParam alpha_;
  unsigned threads_;
  std::vector<double> j_;
  std::vector<double> w_;
};

inline std::vector<double> matvec(std::span<const double> x, AlphaParam alpha, unsigned threads = 1) {
  return GcdOperator(x.size(), alpha, threads).apply(x);
}

inline constexpr double kDefaultSpectralTol = 1e-8;
inline constexpr std::uint64_t kDefaultMaxIter = 10'000;

struct SpectralReport {
  std::uint64_t n = 0;
  double alpha = 0.0;
  double lambda_est = 0.0;
  std::uint64_t iterations = 0;
  double residual = 0.0;  ///< ||A v - lambda v||_2
  double normalized_ratio = 0.0;  ///< lambda / N^{1-2a}
  bool converged = false;
  /// Rayleigh quotients never dropped by more than 1e-12 relative.
  bool rayleigh_monotone = true;
  std::vector<double> eigenvector;
};

inline double dot(std::span<const double> x, std::span<const double> y) {
  CompensatedSum<double> s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s.value();
}

/// Power iteration from the uniform unit vector. Stops when the residual
/// of the Rayleigh pair drops to `tol` or after `max_iter` products; the
/// best estimate is kept either way.
inline SpectralReport power_iteration(std::uint64_t n, AlphaParam alpha, double tol = kDefaultSpectralTol,
                                      std::uint64_t max_iter = kDefaultMaxIter, unsigned threads = 1) {
  if (!(tol > 0.0)) throw DomainError("power_iteration: tol must be positive");
  const GcdOperator op(n, alpha, threads);
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  SpectralReport rep;
  rep.n = n;
  rep.alpha = alpha;
  double prev = 0.0;
  for (std::uint64_t it = 1; it <= max_iter; ++it) {
    op.apply(v, y);
    const double lambda = dot(v, y);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = y[i] - lambda * v[i];
      r2 += d * d;
    }
    if (lambda < prev * (1.0 - 1e-12)) rep.rayleigh_monotone = false;
    prev = std::max(prev, lambda);
    rep.lambda_est = lambda;
    rep.residual = std::sqrt(r2);
    rep.iterations = it;
    if (rep.residual <= tol) {
      rep.converged = true;
      break;
    }
    const double norm = std::sqrt(dot(y, y));
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / norm;
  }
  rep.normalized_ratio = rep.lambda_est / std::pow(static_cast<double>(n), 1.0 - 2.0 * alpha.value());
  rep.eigenvector = std::move(v);
  return rep;
}

/// One power-iteration report per N.
inline std::vector<SpectralReport> spectral_scan(std::span<const std::uint64_t> ns, AlphaParam alpha,
                                                 double tol = kDefaultSpectralTol,
                                                 std::uint64_t max_iter = kDefaultMaxIter, unsigned threads = 1) {
  std::vector<SpectralReport> out;
  out.reserve(ns.size());
  for (std::uint64_t n : ns) {
    auto rep = power_iteration(n, alpha, tol, max_iter, threads);
    rep.eigenvector.clear();
    rep.eigenvector.shrink_to_fit();
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace gcdsum
