#pragma once

// The lower-bound construction: k is the primorial of M = N^delta, A the
// first [N^{1/3}] M-smooth squarefree numbers, D = {k/a}, S_d the first
// [N phi(d)/k] integers coprime to k/d, and the final set is the union of
// the dilations d S_d. Also the identities and estimates that the
// construction relies on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcdsum/alpha.hpp"
#include "gcdsum/arith.hpp"
#include "gcdsum/compensated.hpp"
#include "gcdsum/errors.hpp"
#include "gcdsum/integer.hpp"
#include "gcdsum/integer_set.hpp"
#include "gcdsum/sums.hpp"

namespace gcdsum {

struct ConstructionParams {
  std::uint64_t n_target = 0;
  double delta = 0.3;
  AlphaParam alpha{0.25};
  /// Exploration toggle: also require every d*s to be squarefree.
  bool squarefree_only = false;

  void validate() const {
    if (n_target == 0) throw DomainError("construction: N must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("construction: delta must lie in (0, 1)");
  }

  double smoothness_bound() const { return std::pow(static_cast<double>(n_target), delta); }
};

struct SdFamily {
  FactoredNat d;
  IntegerSet S;
  Nat s_max = 0;  ///< 0 when S is empty
};

struct ConstructionOutput {
  double smoothness_bound = 0.0;
  FactoredNat k;
  std::uint64_t a_target = 0;  ///< [N^{1/3}]
  IntegerSet A;
  IntegerSet D;
  std::vector<SdFamily> sd_families;  ///< ordered by d ascending
  IntegerSet M_set;
  std::vector<FactoredNat> M_factored;  ///< aligned with M_set
  bool shortfall = false;
};

/// floor(N phi(d) / k)
inline Nat sd_quota(std::uint64_t n, const FactoredNat& d, const FactoredNat& k) {
  Nat num;
  if (!checked_mul(static_cast<Nat>(n), euler_phi(d), num)) {
    throw ResourceError("construction: N * phi(d) exceeds 128-bit range");
  }
  return num / k.value();
}

inline ConstructionOutput build_construction(const ConstructionParams& params) {
  params.validate();
  ConstructionOutput out;
  out.smoothness_bound = params.smoothness_bound();
  if (!(out.smoothness_bound >= 2.0)) {
    throw DomainError("construction: smoothness bound N^delta = " + std::to_string(out.smoothness_bound) +
                      " is below 2 (N = " + std::to_string(params.n_target) + " too small)");
  }
  try {
    out.k = primorial(out.smoothness_bound);
  } catch (const ResourceError& e) {
    throw ResourceError(std::string(e.what()) + " (N = " + std::to_string(params.n_target) +
                        ", delta = " + std::to_string(params.delta) + ")");
  }
  out.a_target = icbrt(params.n_target);
  auto smooth = squarefree_smooth_enumerate(out.smoothness_bound, out.a_target);
  out.A = std::move(smooth.set);
  out.shortfall = smooth.shortfall;

  std::vector<Nat> dvals;
  for (Nat a : out.A) dvals.push_back(out.k.value() / a);
  out.D = IntegerSet::from_unsorted(std::move(dvals));

  std::vector<std::pair<Nat, FactoredNat>> members;
  for (Nat dv : out.D) {
    SdFamily fam;
    fam.d = factorize(dv);
    const FactoredNat cofactor = divide(out.k, fam.d);
    const Nat quota = sd_quota(params.n_target, fam.d, out.k);
    std::vector<Nat> svals;
    for (Nat s = 1; static_cast<Nat>(svals.size()) < quota; ++s) {
      if (gcd(s, cofactor.value()) != 1) continue;
      FactoredNat sf = factorize(s);
      if (params.squarefree_only && (!sf.is_squarefree() || gcd(s, dv) != 1)) continue;
      svals.push_back(s);
      members.emplace_back(dv * s, multiply(fam.d, sf));
    }
    fam.s_max = svals.empty() ? 0 : svals.back();
    fam.S = IntegerSet::from_sorted(std::move(svals));
    out.sd_families.push_back(std::move(fam));
  }
  std::sort(members.begin(), members.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Nat> mv;
  mv.reserve(members.size());
  out.M_factored.reserve(members.size());
  for (auto& [v, f] : members) {
    if (!mv.empty() && mv.back() == v) {
      throw InternalError("construction: dilated families overlap at " + to_string(v));
    }
    mv.push_back(v);
    out.M_factored.push_back(std::move(f));
  }
  out.M_set = IntegerSet::from_sorted(std::move(mv));
  return out;
}

struct ConstructionInvariants {
  bool a_squarefree_smooth = true;
  bool a_size = true;
  bool d_from_a = true;
  bool sd_coprime = true;
  bool sd_cardinality = true;
  bool disjoint = true;
  bool union_size = true;
  bool m_size = true;
  bool dilation = true;

  bool all() const {
    return a_squarefree_smooth && a_size && d_from_a && sd_coprime && sd_cardinality && disjoint && union_size &&
           m_size && dilation;
  }
};

/// Re-derives every structural property of a construction from scratch.
inline ConstructionInvariants check_construction(const ConstructionOutput& out, const ConstructionParams& params) {
  ConstructionInvariants inv;
  const auto bound = floor_bound(out.smoothness_bound);
  for (Nat a : out.A) {
    const auto fa = factorize(a);
    if (!fa.is_squarefree()) inv.a_squarefree_smooth = false;
    for (const auto& f : fa.factors()) {
      if (f.prime > bound) inv.a_squarefree_smooth = false;
    }
  }
  inv.a_size = out.A.size() <= out.a_target;

  std::vector<Nat> expect_d;
  for (Nat a : out.A) {
    if (out.k.value() % a != 0) inv.d_from_a = false;
    expect_d.push_back(out.k.value() / a);
  }
  std::sort(expect_d.begin(), expect_d.end());
  if (std::vector<Nat>(out.D.begin(), out.D.end()) != expect_d) inv.d_from_a = false;

  std::vector<Nat> all;
  bool quotas_exact = true;
  for (const auto& fam : out.sd_families) {
    const Nat dv = fam.d.value();
    if (out.k.value() % dv != 0) inv.d_from_a = false;
    const Nat cof = out.k.value() / dv;
    for (Nat s : fam.S) {
      if (gcd(s, cof) != 1) inv.sd_coprime = false;
      const Nat m = dv * s;
      if (m % dv != 0 || gcd(m / dv, cof) != 1 || !out.M_set.contains(m)) inv.dilation = false;
      all.push_back(m);
    }
    Nat num = static_cast<Nat>(params.n_target) * euler_phi(fam.d);
    if (num % out.k.value() != 0) quotas_exact = false;
    if (!params.squarefree_only && static_cast<Nat>(fam.S.size()) != num / out.k.value()) {
      inv.sd_cardinality = false;
    }
    if (params.squarefree_only && static_cast<Nat>(fam.S.size()) > num / out.k.value()) inv.sd_cardinality = false;
  }
  std::sort(all.begin(), all.end());
  inv.disjoint = std::adjacent_find(all.begin(), all.end()) == all.end();
  inv.union_size = all.size() == out.M_set.size();

  // sum_{d | k} phi(d) = k makes |M| <= N; equality needs every divisor of k
  // present in D and every quota exact.
  const std::size_t primes = out.k.factors().size();
  const bool all_divisors = primes < 63 && out.D.size() == (std::size_t{1} << primes);
  if (all_divisors && quotas_exact && !params.squarefree_only) {
    inv.m_size = out.M_set.size() <= params.n_target;
  } else {
    inv.m_size = out.M_set.size() < params.n_target;
  }
  return inv;
}

struct LowerBoundReport {
  std::uint64_t n_target = 0;
  std::size_t m_size = 0;
  double sum = 0.0;
  double scale = 0.0;  ///< N^{2-2a} (log N)^{2a}
  double ratio = 0.0;
  double est_abs_error = 0.0;
  bool shortfall = false;
};

inline LowerBoundReport lower_bound_report(const ConstructionOutput& out, const ConstructionParams& params,
                                           unsigned threads = 1) {
  if (out.M_set.empty()) throw DomainError("lower_bound_report: construction produced an empty set");
  const double a = params.alpha.value();
  const auto rep = gcd_sum_fast(std::span<const FactoredNat>(out.M_factored), params.alpha, threads);
  LowerBoundReport r;
  r.n_target = params.n_target;
  r.m_size = out.M_set.size();
  r.sum = rep.value;
  r.est_abs_error = rep.est_abs_error;
  const double n = static_cast<double>(params.n_target);
  r.scale = std::pow(n, 2.0 - 2.0 * a) * std::pow(std::log(n), 2.0 * a);
  r.ratio = r.sum / r.scale;
  r.shortfall = out.shortfall;
  return r;
}

inline LowerBoundReport lower_bound_report(const ConstructionParams& params, unsigned threads = 1) {
  return lower_bound_report(build_construction(params), params, threads);
}

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};

namespace detail {

inline void require_squarefree(const FactoredNat& k, std::string_view op) {
  if (!k.is_squarefree()) throw DomainError(std::string(op) + ": k must be squarefree");
}

inline double log_phi(const FactoredNat& n) { return log_nat(euler_phi(n)); }

/// (c,d)^{2a} (phi(k/c) phi(k/d))^a (phi(c) phi(d))^{1-a} / k^2 for c, d | k.
inline double mult_summand(const FactoredNat& k, const FactoredNat& c, const FactoredNat& d, double a) {
  const Nat g = gcd(c.value(), d.value());
  const double lg = log_nat(g);
  const double l = 2.0 * a * lg + a * (log_phi(divide(k, c)) + log_phi(divide(k, d))) +
                   (1.0 - a) * (log_phi(c) + log_phi(d)) - 2.0 * log_nat(k.value());
  return std::exp(l);
}

inline std::vector<FactoredNat> factored_divisors(const FactoredNat& k) {
  std::vector<FactoredNat> out;
  for (Nat d : divisors(k)) out.push_back(factorize_divisor(k, d));
  return out;
}

}  // namespace detail

/// (1/p)(1 - 1/p) + (1 - 1/p)^{2-2a}
inline double mult1_prime_factor(Nat p, AlphaParam alpha) {
  const double inv = 1.0 / to_double(p);
  const double q = 1.0 - inv;
  return inv * q + std::pow(q, 2.0 - 2.0 * alpha.value());
}

/// p^{2a-2}(1 - 1/p)^{2a} + (2/p)(1 - 1/p) + (1 - 1/p)^{2-2a}
inline double mult10_factor(Nat p, AlphaParam alpha) {
  const double a = alpha.value();
  const double inv = 1.0 / to_double(p);
  const double q = 1.0 - inv;
  return pow_nat(p, 2.0 * a - 2.0) * std::pow(q, 2.0 * a) + 2.0 * inv * q + std::pow(q, 2.0 - 2.0 * a);
}

/// mult10_factor(p) - 1 - 2a/p, evaluated without cancellation against 1.
inline double mult10_factor_excess(Nat p, AlphaParam alpha) {
  const double a = alpha.value();
  const double inv = 1.0 / to_double(p);
  const double lq = std::log1p(-inv);
  return pow_nat(p, 2.0 * a - 2.0) * std::exp(2.0 * a * lq) - 2.0 * inv * inv + std::expm1((2.0 - 2.0 * a) * lq) +
         (2.0 - 2.0 * a) * inv;
}

/// One-sided sum over d | k against the product form
/// prod_{p | k} mult1_prime_factor(p) * (c/k) * f(k/c).
inline IdentityCheck mult1_check(const FactoredNat& k, const FactoredNat& c, AlphaParam alpha) {
  detail::require_squarefree(k, "mult1_check");
  if (k.value() % c.value() != 0) throw DomainError("mult1_check: c must divide k");
  CompensatedSum<double> lhs;
  for (const auto& d : detail::factored_divisors(k)) lhs += detail::mult_summand(k, c, d, alpha.value());
  double rhs = 1.0;
  for (const auto& f : k.factors()) rhs *= mult1_prime_factor(f.prime, alpha);
  rhs *= std::exp(log_nat(c.value()) - log_nat(k.value())) * f_fn(divide(k, c), alpha);
  IdentityCheck out{lhs.value(), rhs, 0.0};
  out.rel_err = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

inline constexpr unsigned kMult10MaxOmega = 10;

/// Double sum over c, d | k against prod_{p | k} mult10_factor(p).
inline IdentityCheck mult10_check(const FactoredNat& k, AlphaParam alpha) {
  detail::require_squarefree(k, "mult10_check");
  if (omega(k) > kMult10MaxOmega) {
    throw BudgetError("mult10_check: omega(k) = " + std::to_string(omega(k)) + " exceeds " +
                          std::to_string(kMult10MaxOmega) + " (4^omega terms)",
                      std::uint64_t{1} << (2 * omega(k)));
  }
  const auto divs = detail::factored_divisors(k);
  CompensatedSum<double> lhs;
  for (const auto& c : divs) {
    for (const auto& d : divs) lhs += detail::mult_summand(k, c, d, alpha.value());
  }
  double rhs = 1.0;
  for (const auto& f : k.factors()) rhs *= mult10_factor(f.prime, alpha);
  IdentityCheck out{lhs.value(), rhs, 0.0};
  out.rel_err = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

struct ProdScanRow {
  double bound = 0.0;
  double product = 0.0;
  double ratio = 0.0;  ///< product / (log M)^{2a}
};

/// prod_{p <= M} mult10_factor(p) for each M, and its ratio to (log M)^{2a}.
inline std::vector<ProdScanRow> prod_lower_bound_scan(std::span<const double> bounds, AlphaParam alpha) {
  std::vector<ProdScanRow> out;
  for (double m : bounds) {
    if (!(m >= 2.0)) throw DomainError("prod_lower_bound_scan: bounds must be >= 2");
    CompensatedSum<double> log_prod;
    for (std::uint64_t p : primes_up_to(floor_bound(m))) log_prod += std::log(mult10_factor(p, alpha));
    ProdScanRow row;
    row.bound = m;
    row.product = std::exp(log_prod.value());
    row.ratio = row.product / std::pow(std::log(m), 2.0 * alpha.value());
    out.push_back(row);
  }
  return out;
}

inline constexpr std::uint64_t kSmoothEnumerationBudget = 1'000'000;

struct SmoothFSum {
  std::uint64_t terms = 0;
  double full_sum = 0.0;  ///< sum over every M-smooth squarefree n of f(n)/n
  double product = 0.0;   ///< prod_{p <= M} (1 + f(p)/p)
  double rel_err = 0.0;
};

namespace detail {

/// Calls fn(n, f(n)/n) for every squarefree n built from `primes`.
template <typename Fn>
void for_each_smooth_squarefree(std::span<const std::uint64_t> primes, AlphaParam alpha, Fn&& fn) {
  if (primes.size() >= 63 || (std::uint64_t{1} << primes.size()) > kSmoothEnumerationBudget) {
    throw BudgetError("smooth squarefree enumeration: 2^" + std::to_string(primes.size()) + " terms exceeds budget",
                      primes.size() >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << primes.size()));
  }
  std::vector<double> fp(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) fp[i] = f_prime(primes[i], alpha) / static_cast<double>(primes[i]);
  auto rec = [&](auto&& self, std::size_t i, Nat n, double w) -> void {
    if (i == primes.size()) {
      fn(n, w);
      return;
    }
    self(self, i + 1, n, w);
    self(self, i + 1, n * primes[i], w * fp[i]);
  };
  rec(rec, 0, 1, 1.0);
}

inline double smooth_f_product(std::span<const std::uint64_t> primes, AlphaParam alpha) {
  double prod = 1.0;
  for (std::uint64_t p : primes) prod *= 1.0 + f_prime(p, alpha) / static_cast<double>(p);
  return prod;
}

}  // namespace detail

/// Expands prod_{p <= M}(1 + f(p)/p) term by term.
inline SmoothFSum smooth_f_sum_identity(double bound, AlphaParam alpha) {
  const auto primes = primes_up_to(floor_bound(bound));
  SmoothFSum out;
  CompensatedSum<double> sum;
  detail::for_each_smooth_squarefree(primes, alpha, [&](Nat, double w) {
    sum += w;
    ++out.terms;
  });
  out.full_sum = sum.value();
  out.product = detail::smooth_f_product(primes, alpha);
  out.rel_err = std::abs(out.full_sum - out.product) / out.product;
  return out;
}

struct RankinTailCheck {
  double smoothness_bound = 0.0;
  std::uint64_t threshold = 0;  ///< [N^{1/3}]
  double product = 0.0;
  double head = 0.0;            ///< sum over n <= threshold
  double tail = 0.0;            ///< sum over n > threshold, summed directly
  double tail_complement = 0.0; ///< product - head
  double budget = 0.0;          ///< product / 3
  double rankin_bound = 0.0;    ///< N^{-1/(3 delta log N)} prod (1 + f(p) p^{1/(delta log N) - 1})
  bool pass = false;
};

/// Tail of sum f(n)/n over M-smooth squarefree n beyond [N^{1/3}], against a
/// third of the full product.
inline RankinTailCheck rankin_tail_check(const ConstructionParams& params) {
  params.validate();
  RankinTailCheck out;
  out.smoothness_bound = params.smoothness_bound();
  if (!(out.smoothness_bound >= 2.0)) throw DomainError("rankin_tail_check: N^delta below 2");
  out.threshold = icbrt(params.n_target);
  const auto primes = primes_up_to(floor_bound(out.smoothness_bound));
  CompensatedSum<double> head, tail;
  detail::for_each_smooth_squarefree(primes, params.alpha, [&](Nat n, double w) {
    (n <= out.threshold ? head : tail) += w;
  });
  out.product = detail::smooth_f_product(primes, params.alpha);
  out.head = head.value();
  out.tail = tail.value();
  out.tail_complement = out.product - out.head;
  out.budget = out.product / 3.0;
  const double log_n = std::log(static_cast<double>(params.n_target));
  if (log_n > 0.0) {
    const double sigma = 1.0 / (params.delta * log_n);
    double rb = std::exp(-sigma * log_n / 3.0);
    for (std::uint64_t p : primes) {
      rb *= 1.0 + f_prime(p, params.alpha) / static_cast<double>(p) * std::pow(static_cast<double>(p), sigma);
    }
    out.rankin_bound = rb;
  }
  out.pass = out.tail <= out.budget;
  return out;
}

struct SdBoundRow {
  Nat d = 0;
  std::size_t size = 0;
  double size_threshold = 0.0;  ///< N^{2/3} / (2 log N)
  bool size_ok = false;         ///< reported only
  Nat s_max = 0;
  double s_bound = 0.0;         ///< 2 N phi(d) / (d phi(k/d))
  bool precondition = false;    ///< |S_d| >= k/d
  bool s_bound_ok = false;
};

struct SdBoundsTable {
  std::vector<SdBoundRow> rows;
  std::size_t size_violations = 0;
  std::size_t asserted_violations = 0;  ///< s_d bound failures where its precondition holds
};

inline SdBoundsTable sd_bounds_check(const ConstructionOutput& out, std::uint64_t n_target) {
  SdBoundsTable table;
  const double n = static_cast<double>(n_target);
  const double threshold = std::pow(n, 2.0 / 3.0) / (2.0 * std::log(n));
  for (const auto& fam : out.sd_families) {
    SdBoundRow row;
    row.d = fam.d.value();
    row.size = fam.S.size();
    row.size_threshold = threshold;
    row.size_ok = static_cast<double>(row.size) >= threshold;
    row.s_max = fam.s_max;
    const FactoredNat cof = divide(out.k, fam.d);
    row.s_bound = 2.0 * n * to_double(euler_phi(fam.d)) / (to_double(fam.d.value()) * to_double(euler_phi(cof)));
    row.precondition = static_cast<Nat>(row.size) >= cof.value();
    row.s_bound_ok = to_double(row.s_max) <= row.s_bound;
    if (!row.size_ok) ++table.size_violations;
    if (row.precondition && !row.s_bound_ok) ++table.asserted_violations;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace gcdsum
