#pragma once

// Sieving, factorization and the multiplicative functions used throughout
// the library: phi, omega, d, mu, g, h, f, the Jordan-type kernel j_s, and
// the Riemann zeta function on the real axis s > 1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcdsum/alpha.hpp"
#include "gcdsum/compensated.hpp"
#include "gcdsum/errors.hpp"
#include "gcdsum/integer.hpp"
#include "gcdsum/integer_set.hpp"

namespace gcdsum {

inline constexpr std::uint64_t kDefaultSieveLimit = 10'000'000;
/// 4 bytes per entry, so about 1.6 GB at the cap.
inline constexpr std::uint64_t kMaxSieveLimit = 400'000'000;

/// Smallest-prime-factor table for 1..limit, built with a linear sieve.
/// Immutable after construction.
class SpfTable {
 public:
  explicit SpfTable(std::uint64_t limit, std::uint64_t max_limit = kMaxSieveLimit) : limit_(limit) {
    if (limit < 2) throw DomainError("spf_sieve: limit must be at least 2");
    if (limit > max_limit) {
      throw ResourceError("spf_sieve: limit " + std::to_string(limit) + " exceeds memory budget of " +
                          std::to_string(max_limit) + " entries");
    }
    spf_.assign(limit + 1, 0);
    spf_[1] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes_.push_back(static_cast<std::uint32_t>(i));
      }
      const std::uint32_t si = spf_[i];
      for (std::uint32_t p : primes_) {
        if (p > si || static_cast<std::uint64_t>(p) * i > limit) break;
        spf_[static_cast<std::uint64_t>(p) * i] = p;
      }
    }
  }

  std::uint64_t limit() const noexcept { return limit_; }

  /// Smallest prime factor of n for 1 <= n <= limit (spf(1) == 1).
  std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }

  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  bool is_prime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

inline SpfTable spf_sieve(std::uint64_t limit) { return SpfTable(limit); }

/// Process-wide table with the default limit, built on first use.
inline const SpfTable& default_spf_table() {
  static const SpfTable table(kDefaultSieveLimit);
  return table;
}

struct PrimePower {
  Nat prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its prime factorization.
class FactoredNat {
 public:
  FactoredNat() = default;

  /// Validates ordering and exponents, and recomputes the value exactly.
  static FactoredNat from_factors(std::vector<PrimePower> factors) {
    Nat value = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& f = factors[i];
      if (f.prime < 2 || f.exponent == 0) throw DomainError("invalid prime power in factorization");
      if (i > 0 && factors[i - 1].prime >= f.prime) {
        throw DomainError("factorization primes must be strictly increasing");
      }
      for (unsigned e = 0; e < f.exponent; ++e) {
        if (!checked_mul(value, f.prime, value)) {
          throw ResourceError("factored value exceeds 128-bit range");
        }
      }
    }
    FactoredNat n;
    n.value_ = value;
    n.factors_ = std::move(factors);
    return n;
  }

  Nat value() const noexcept { return value_; }
  std::span<const PrimePower> factors() const noexcept { return factors_; }

  bool is_squarefree() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& f) { return f.exponent == 1; });
  }

  /// Exponent of p in this number (0 when p does not divide it).
  unsigned valuation(Nat p) const {
    for (const auto& f : factors_) {
      if (f.prime == p) return f.exponent;
    }
    return 0;
  }

  friend bool operator==(const FactoredNat&, const FactoredNat&) = default;

 private:
  Nat value_ = 1;
  std::vector<PrimePower> factors_;
};

/// Product of two factored numbers (exponents add).
inline FactoredNat multiply(const FactoredNat& a, const FactoredNat& b) {
  std::vector<PrimePower> out;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].prime < fb[j].prime)) {
      out.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].prime < fa[i].prime) {
      out.push_back(fb[j++]);
    } else {
      out.push_back({fa[i].prime, fa[i].exponent + fb[j].exponent});
      ++i;
      ++j;
    }
  }
  return FactoredNat::from_factors(std::move(out));
}

/// a / b for b | a.
inline FactoredNat divide(const FactoredNat& a, const FactoredNat& b) {
  std::vector<PrimePower> out;
  for (const auto& f : a.factors()) {
    const unsigned eb = b.valuation(f.prime);
    if (eb > f.exponent) throw DomainError("divide: divisor does not divide dividend");
    if (f.exponent > eb) out.push_back({f.prime, f.exponent - eb});
  }
  for (const auto& f : b.factors()) {
    if (a.valuation(f.prime) == 0) throw DomainError("divide: divisor does not divide dividend");
  }
  return FactoredNat::from_factors(std::move(out));
}

/// Factorizes n using `table` below its limit, trial division by the
/// table's primes above it, and odd trial divisors past the last prime.
inline FactoredNat factorize(Nat n, const SpfTable& table) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  std::vector<PrimePower> out;
  auto push = [&out](Nat p) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  };
  const std::uint64_t limit = table.limit();
  auto small_path = [&](std::uint64_t m) {
    while (m > 1) {
      const std::uint32_t p = table.spf(m);
      push(p);
      m /= p;
    }
  };
  if (n <= limit) {
    small_path(static_cast<std::uint64_t>(n));
    return FactoredNat::from_factors(std::move(out));
  }
  for (std::uint32_t p : table.primes()) {
    if (static_cast<Nat>(p) * p > n) break;
    while (n % p == 0) {
      push(p);
      n /= p;
    }
    if (n <= limit) break;
  }
  if (n <= limit) {
    small_path(static_cast<std::uint64_t>(n));
  } else if (static_cast<Nat>(limit + 1) * (limit + 1) > n) {
    push(n);
  } else {
    Nat d = (limit + 1) | 1;
    while (d * d <= n) {
      while (n % d == 0) {
        push(d);
        n /= d;
      }
      d += 2;
    }
    if (n > 1) push(n);
  }
  return FactoredNat::from_factors(std::move(out));
}

inline FactoredNat factorize(Nat n) { return factorize(n, default_spf_table()); }

/// Factorization of a divisor d of n, read off n's primes.
inline FactoredNat factorize_divisor(const FactoredNat& n, Nat d) {
  if (d == 0) throw DomainError("factorize_divisor: d must be positive");
  std::vector<PrimePower> out;
  for (const auto& f : n.factors()) {
    unsigned e = 0;
    while (e < f.exponent && d % f.prime == 0) {
      d /= f.prime;
      ++e;
    }
    if (e > 0) out.push_back({f.prime, e});
  }
  if (d != 1) throw DomainError("factorize_divisor: argument does not divide n");
  return FactoredNat::from_factors(std::move(out));
}

inline Nat euler_phi(const FactoredNat& n) {
  Nat out = 1;
  for (const auto& f : n.factors()) {
    out *= f.prime - 1;
    for (unsigned e = 1; e < f.exponent; ++e) out *= f.prime;
  }
  return out;
}

inline unsigned omega(const FactoredNat& n) { return static_cast<unsigned>(n.factors().size()); }

inline std::uint64_t divisor_count(const FactoredNat& n) {
  std::uint64_t out = 1;
  for (const auto& f : n.factors()) out *= f.exponent + 1ULL;
  return out;
}

inline int mobius(const FactoredNat& n) {
  for (const auto& f : n.factors()) {
    if (f.exponent >= 2) return 0;
  }
  return (n.factors().size() % 2 == 0) ? 1 : -1;
}

/// Visits every divisor e of n as (e, factorization exponents) in an
/// unspecified but deterministic order. The callback gets the divisor value
/// and a span of exponents aligned with n.factors().
template <typename Fn>
void for_each_divisor(const FactoredNat& n, Fn&& fn) {
  const auto fs = n.factors();
  std::vector<unsigned> exps(fs.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, Nat e) -> void {
    if (i == fs.size()) {
      fn(e, std::span<const unsigned>(exps));
      return;
    }
    Nat cur = e;
    for (unsigned k = 0; k <= fs[i].exponent; ++k) {
      exps[i] = k;
      self(self, i + 1, cur);
      cur *= fs[i].prime;
    }
    exps[i] = 0;
  };
  rec(rec, 0, 1);
}

/// All divisors, ascending.
inline std::vector<Nat> divisors(const FactoredNat& n) {
  std::vector<Nat> out;
  out.reserve(divisor_count(n));
  for_each_divisor(n, [&](Nat e, std::span<const unsigned>) { out.push_back(e); });
  std::sort(out.begin(), out.end());
  return out;
}

inline double pow_nat(Nat p, double s) { return std::exp(s * log_nat(p)); }

/// g(p^e) = sum_{j=0..e} p^{j(alpha - 1/2)}
inline double g_prime_power(Nat p, unsigned e, AlphaParam alpha) {
  const double r = pow_nat(p, alpha.value() - 0.5);
  double sum = 1.0, term = 1.0;
  for (unsigned j = 1; j <= e; ++j) {
    term *= r;
    sum += term;
  }
  return sum;
}

/// g(m) = sum_{d | m} d^{alpha - 1/2}, evaluated over prime powers.
inline double g_fn(const FactoredNat& m, AlphaParam alpha) {
  double out = 1.0;
  for (const auto& f : m.factors()) out *= g_prime_power(f.prime, f.exponent, alpha);
  return out;
}

/// h(p^m) = sum_{l=0..m} p^{(2 alpha - 1) l} / g(p^{m - l})
inline double h_prime_power(Nat p, unsigned m, AlphaParam alpha) {
  const double r = pow_nat(p, 2.0 * alpha.value() - 1.0);
  CompensatedSum<double> sum;
  double rl = 1.0;
  for (unsigned l = 0; l <= m; ++l) {
    sum += rl / g_prime_power(p, m - l, alpha);
    rl *= r;
  }
  return sum.value();
}

/// h(n) = sum_{d | n} d^{2 alpha - 1} / g(n / d), evaluated multiplicatively.
inline double h_fn(const FactoredNat& n, AlphaParam alpha) {
  double out = 1.0;
  for (const auto& f : n.factors()) out *= h_prime_power(f.prime, f.exponent, alpha);
  return out;
}

/// Receives warnings such as f_fn on a non-squarefree argument.
inline std::function<void(std::string_view)>& warning_sink() {
  static std::function<void(std::string_view)> sink = [](std::string_view msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return sink;
}

/// Single-prime factor of f:
/// (p^{2a-1}(1-1/p)^{2a} + (1-1/p)) / ((1/p)(1-1/p) + (1-1/p)^{2-2a})
inline double f_prime(Nat p, AlphaParam alpha) {
  const double a = alpha.value();
  const double inv = 1.0 / to_double(p);
  const double q = 1.0 - inv;
  const double num = pow_nat(p, 2.0 * a - 1.0) * std::pow(q, 2.0 * a) + q;
  const double den = inv * q + std::pow(q, 2.0 - 2.0 * a);
  return num / den;
}

/// f(n) = product over distinct primes p | n of f_prime(p). The function is
/// only meaningful on squarefree n; other inputs are evaluated the same way
/// and reported to the warning sink.
inline double f_fn(const FactoredNat& n, AlphaParam alpha) {
  if (!n.is_squarefree()) {
    warning_sink()("f_fn called on non-squarefree argument " + to_string(n.value()));
  }
  double out = 1.0;
  for (const auto& f : n.factors()) out *= f_prime(f.prime, alpha);
  return out;
}

/// j_s(p^k) = p^{sk} - p^{s(k-1)}; multiplicative, so that sum_{e | n} j_s(e) = n^s.
inline double jordan_prime_power(Nat p, unsigned k, double s) {
  if (k == 0) return 1.0;
  const double lp = log_nat(p);
  // p^{s(k-1)} (p^s - 1), with expm1 keeping precision for small s log p.
  return std::exp(s * (k - 1) * lp) * std::expm1(s * lp);
}

inline double jordan_j(const FactoredNat& e, double s) {
  double out = 1.0;
  for (const auto& f : e.factors()) out *= jordan_prime_power(f.prime, f.exponent, s);
  return out;
}

/// Visits every divisor e of n together with j_s(e), carrying the kernel
/// value as a running product.
template <typename Fn>
void for_each_divisor_jordan(const FactoredNat& n, double s, Fn&& fn) {
  const auto fs = n.factors();
  std::vector<std::vector<double>> jp(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    jp[i].resize(fs[i].exponent + 1);
    for (unsigned k = 0; k <= fs[i].exponent; ++k) jp[i][k] = jordan_prime_power(fs[i].prime, k, s);
  }
  auto rec = [&](auto&& self, std::size_t i, Nat e, double j) -> void {
    if (i == fs.size()) {
      fn(e, j);
      return;
    }
    Nat cur = e;
    for (unsigned k = 0; k <= fs[i].exponent; ++k) {
      self(self, i + 1, cur, j * jp[i][k]);
      cur *= fs[i].prime;
    }
  };
  rec(rec, 0, 1, 1.0);
}

/// Primes p <= bound.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  if (bound <= default_spf_table().limit()) {
    for (std::uint32_t p : default_spf_table().primes()) {
      if (p > bound) break;
      out.push_back(p);
    }
    return out;
  }
  SpfTable table(bound);
  out.assign(table.primes().begin(), table.primes().end());
  return out;
}

inline std::uint64_t floor_bound(double bound) {
  if (!(bound >= 0) || !std::isfinite(bound)) throw DomainError("bound must be a finite nonnegative real");
  return static_cast<std::uint64_t>(std::floor(bound));
}

/// Product of all primes <= bound, exactly.
inline FactoredNat primorial(double bound) {
  if (floor_bound(bound) > kDefaultSieveLimit) {
    // theta(x) ~ x, so about x / ln 2 bits.
    throw ResourceError("primorial(" + std::to_string(bound) + ") needs about " +
                        std::to_string(static_cast<long long>(bound / std::numbers::ln2)) +
                        " bits; exact range is 128 bits");
  }
  std::vector<PrimePower> factors;
  double bits = 0.0;
  bool overflow = false;
  Nat value = 1;
  for (std::uint64_t p : primes_up_to(floor_bound(bound))) {
    factors.push_back({p, 1});
    bits += std::log2(static_cast<double>(p));
    if (!overflow && !checked_mul(value, p, value)) overflow = true;
  }
  if (overflow) {
    throw ResourceError("primorial(" + std::to_string(bound) + ") needs " +
                        std::to_string(static_cast<int>(std::ceil(bits))) + " bits; exact range is 128 bits");
  }
  return FactoredNat::from_factors(std::move(factors));
}

struct SmoothEnumeration {
  IntegerSet set;
  bool shortfall = false;
};

/// The `count` smallest squarefree integers whose prime factors are all
/// <= smooth_bound. When fewer exist, all 2^{pi(bound)} are returned and
/// `shortfall` is set.
inline SmoothEnumeration squarefree_smooth_enumerate(double smooth_bound, std::uint64_t count) {
  if (!(smooth_bound >= 2)) throw DomainError("squarefree_smooth_enumerate: smooth_bound must be >= 2");
  const auto primes = primes_up_to(floor_bound(smooth_bound));
  SmoothEnumeration out;
  if (count == 0) return out;

  const bool total_known = primes.size() < 63;
  const std::uint64_t total = total_known ? (std::uint64_t{1} << primes.size()) : 0;

  Nat threshold = std::max<Nat>(16, static_cast<Nat>(count) * 2);
  std::vector<Nat> found;
  for (;;) {
    found.clear();
    auto rec = [&](auto&& self, std::size_t i, Nat prod) -> void {
      found.push_back(prod);
      for (std::size_t j = i; j < primes.size(); ++j) {
        Nat next;
        if (!checked_mul(prod, primes[j], next) || next > threshold) break;
        self(self, j + 1, next);
      }
    };
    rec(rec, 0, 1);
    if (found.size() >= count) {
      std::sort(found.begin(), found.end());
      found.resize(count);
      out.set = IntegerSet::from_sorted(std::move(found));
      return out;
    }
    if (total_known && found.size() == total) {
      std::sort(found.begin(), found.end());
      out.set = IntegerSet::from_sorted(std::move(found));
      out.shortfall = true;
      return out;
    }
    threshold = (threshold > kNatMax / 4) ? kNatMax : threshold * 4;
  }
}

inline constexpr std::uint64_t kZetaCutoff = 10'000;
inline constexpr double kZetaRemainderCap = 1e-13;

/// Riemann zeta for real s > 1 by Euler-Maclaurin summation with cutoff
/// K = 10^4 and correction terms through B_4. The B_6 term bounds the
/// remainder and must stay below 1e-13.
inline double zeta_real(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("zeta_real: requires s > 1");
  constexpr std::uint64_t K = kZetaCutoff;
  const double kd = static_cast<double>(K);
  CompensatedSum<double> sum;
  for (std::uint64_t n = K - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  const double ks = std::pow(kd, -s);
  sum += kd * ks / (s - 1.0);
  sum += 0.5 * ks;
  sum += (1.0 / 12.0) * s * ks / kd;
  sum += (-1.0 / 720.0) * s * (s + 1) * (s + 2) * ks / (kd * kd * kd);
  const double remainder =
      (1.0 / 30240.0) * s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * ks / std::pow(kd, 5);
  if (!(remainder <= kZetaRemainderCap)) {
    throw InternalError("zeta_real: Euler-Maclaurin remainder bound " + std::to_string(remainder) +
                        " exceeds cap");
  }
  return sum.value();
}

}  // namespace gcdsum
