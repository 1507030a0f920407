#pragma once

// GCD sums  S(M) = sum_{m,n in M} (m,n)^{2 alpha} / (mn)^alpha  and the
// quantities built from them: the 2^omega-weighted variant, the normalized
// functional S(M)/|M|, the exact-formula check on {1..N} with its Mobius
// chain, and the square-free divisor-power bound probe.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcdsum/alpha.hpp"
#include "gcdsum/arith.hpp"
#include "gcdsum/compensated.hpp"
#include "gcdsum/detail/flat_accumulator.hpp"
#include "gcdsum/detail/parallel.hpp"
#include "gcdsum/errors.hpp"
#include "gcdsum/integer.hpp"
#include "gcdsum/integer_set.hpp"

namespace gcdsum {

enum class SumMethod { naive, fast, weighted };

inline std::string_view to_string(SumMethod m) {
  switch (m) {
    case SumMethod::naive: return "naive";
    case SumMethod::fast: return "fast";
    case SumMethod::weighted: return "weighted";
  }
  return "?";
}

struct SumReport {
  double value = 0.0;
  SumMethod method = SumMethod::naive;
  std::size_t n = 0;
  double alpha = 0.0;
  double est_abs_error = 0.0;
};

namespace detail {

inline constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;
inline constexpr Nat kExactDoubleLimit = Nat{1} << 53;

/// (m,n)^{2a} / (mn)^a  ==  ((m/g)(n/g))^{-a}
inline double gcd_term(Nat m, Nat n, double alpha) {
  if (m == n) return 1.0;
  const Nat g = gcd(m, n);
  const Nat a = m / g, b = n / g;
  Nat q;
  if (checked_mul(a, b, q) && q < kExactDoubleLimit) return std::pow(to_double(q), -alpha);
  return std::exp(-alpha * (log_nat(a) + log_nat(b)));
}

inline void require_nonempty(std::size_t n, std::string_view op) {
  if (n == 0) throw DomainError(std::string(op) + ": set must be nonempty");
}

/// j_s(e) for e = 0..n (index 0 unused), built multiplicatively.
inline std::vector<double> jordan_table(std::uint64_t n, double s, const SpfTable& table) {
  std::vector<double> j(n + 1, 0.0);
  if (n >= 1) j[1] = 1.0;
  for (std::uint64_t e = 2; e <= n; ++e) {
    const std::uint32_t p = table.spf(e);
    std::uint64_t m = e;
    unsigned k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    j[e] = j[m] * jordan_prime_power(p, k, s);
  }
  return j;
}

inline const SpfTable& table_for(std::uint64_t n, std::unique_ptr<SpfTable>& owned) {
  if (n <= default_spf_table().limit()) return default_spf_table();
  owned = std::make_unique<SpfTable>(n);
  return *owned;
}

}  // namespace detail

/// Direct double loop over all ordered pairs, compensated. Rows are reduced
/// in index order, so the value is identical for any thread count.
inline SumReport gcd_sum_naive(const IntegerSet& set, AlphaParam alpha, unsigned threads = 1) {
  detail::require_nonempty(set.size(), "gcd_sum_naive");
  const auto el = set.elems();
  const std::size_t n = el.size();
  std::vector<CompensatedSum<double>> rows(n);
  detail::parallel_for(n, threads, [&](unsigned, std::size_t i) {
    CompensatedSum<double> row;
    for (std::size_t j = i + 1; j < n; ++j) row += detail::gcd_term(el[i], el[j], alpha);
    rows[i] = row;
  });
  CompensatedSum<double> off;
  double inner_bounds = 0.0;
  for (const auto& r : rows) {
    off.add(r.value());
    inner_bounds += r.error_bound();
  }
  SumReport rep;
  rep.value = static_cast<double>(n) + 2.0 * off.value();
  rep.method = SumMethod::naive;
  rep.n = n;
  rep.alpha = alpha;
  // Each term carries a few ulps from pow/exp; then summation error.
  rep.est_abs_error = 2.0 * (4.0 * detail::kUnit * off.abs_sum() + inner_bounds + off.error_bound()) +
                      detail::kUnit * rep.value;
  return rep;
}

/// Divisor-grouped evaluation  S = sum_e j_{2a}(e) (sum_{e | m} m^{-a})^2.
///
/// Each element is split as m = u v, where u carries the primes dividing at
/// least max(2, |M|/8) elements. Elements are grouped by divisors e of v,
/// and inside a group the inner sums are keyed by divisors f of u. The
/// work is sum_m d(m) accumulations; memory is bounded by the group sizes
/// instead of the number of distinct divisors of the whole set.
inline SumReport gcd_sum_fast(std::span<const FactoredNat> elems, AlphaParam alpha, unsigned threads = 1) {
  detail::require_nonempty(elems.size(), "gcd_sum_fast");
  const double a = alpha.value();
  const double s = 2.0 * a;
  const std::size_t n = elems.size();

  std::vector<Nat> all_primes;
  for (const auto& m : elems) {
    for (const auto& f : m.factors()) all_primes.push_back(f.prime);
  }
  std::sort(all_primes.begin(), all_primes.end());
  const std::size_t freq_cut = std::max<std::size_t>(2, n / 8);
  std::vector<Nat> frequent;
  for (std::size_t i = 0; i < all_primes.size();) {
    std::size_t j = i;
    while (j < all_primes.size() && all_primes[j] == all_primes[i]) ++j;
    if (j - i >= freq_cut) frequent.push_back(all_primes[i]);
    i = j;
  }
  all_primes.clear();
  all_primes.shrink_to_fit();
  auto is_frequent = [&](Nat p) { return std::binary_search(frequent.begin(), frequent.end(), p); };

  std::vector<FactoredNat> u_part(n);
  std::vector<double> weight(n);
  std::vector<double> u_pow(n);

  struct Posting {
    Nat e;
    double j;
    std::uint32_t elem;
  };
  std::vector<Posting> postings;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<PrimePower> uf, vf;
    for (const auto& f : elems[i].factors()) (is_frequent(f.prime) ? uf : vf).push_back(f);
    u_part[i] = FactoredNat::from_factors(std::move(uf));
    const FactoredNat v = FactoredNat::from_factors(std::move(vf));
    weight[i] = std::exp(-a * log_nat(elems[i].value()));
    u_pow[i] = std::exp(s * log_nat(u_part[i].value()));
    for_each_divisor_jordan(v, s, [&](Nat e, double j) {
      postings.push_back({e, j, static_cast<std::uint32_t>(i)});
    });
  }
  std::sort(postings.begin(), postings.end(), [](const Posting& x, const Posting& y) {
    return x.e != y.e ? x.e < y.e : x.elem < y.elem;
  });
  std::vector<std::size_t> group_start;
  for (std::size_t i = 0; i < postings.size(); ++i) {
    if (i == 0 || postings[i].e != postings[i - 1].e) group_start.push_back(i);
  }
  const std::size_t groups = group_start.size();
  group_start.push_back(postings.size());

  std::vector<double> group_value(groups);
  std::vector<double> group_error(groups);
  threads = std::max(1u, threads);
  std::vector<detail::FlatAccumulator> maps(threads);

  detail::parallel_for(groups, threads, [&](unsigned w, std::size_t g) {
    const std::size_t lo = group_start[g], hi = group_start[g + 1];
    const double je = postings[lo].j;
    if (hi - lo == 1) {
      const std::uint32_t i = postings[lo].elem;
      // sum_{f | u} j(f) = u^{2a}
      group_value[g] = je * weight[i] * weight[i] * u_pow[i];
      group_error[g] = 8.0 * detail::kUnit * group_value[g];
      return;
    }
    auto& acc = maps[w];
    acc.clear();
    for (std::size_t p = lo; p < hi; ++p) {
      const std::uint32_t i = postings[p].elem;
      for_each_divisor_jordan(u_part[i], s, [&](Nat f, double jf) { acc.add(f, jf, weight[i]); });
    }
    CompensatedSum<double> inner;
    for (const auto& entry : acc.entries()) inner += entry.weight * entry.sum * entry.sum;
    group_value[g] = je * inner.value();
    const double size = static_cast<double>(hi - lo);
    group_error[g] = je * (inner.error_bound() + (2.0 * size + 8.0) * detail::kUnit * inner.abs_sum());
  });

  CompensatedSum<double> total;
  double err = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    total += group_value[g];
    err += group_error[g];
  }
  SumReport rep;
  rep.value = total.value();
  rep.method = SumMethod::fast;
  rep.n = n;
  rep.alpha = a;
  rep.est_abs_error = err + total.error_bound();
  return rep;
}

inline std::vector<FactoredNat> factorize_all(const IntegerSet& set) {
  std::vector<FactoredNat> out;
  out.reserve(set.size());
  for (Nat m : set) out.push_back(factorize(m));
  return out;
}

inline SumReport gcd_sum_fast(const IntegerSet& set, AlphaParam alpha, unsigned threads = 1) {
  detail::require_nonempty(set.size(), "gcd_sum_fast");
  const auto factored = factorize_all(set);
  return gcd_sum_fast(std::span<const FactoredNat>(factored), alpha, threads);
}

/// GCD sum over {1, ..., N} with dense divisor-stride arrays:
/// c_e = sum_{k} (ke)^{-a}, S = sum_e j_{2a}(e) c_e^2.
inline SumReport gcd_sum_range(std::uint64_t n, AlphaParam alpha) {
  detail::require_nonempty(n, "gcd_sum_range");
  const double a = alpha.value();
  std::unique_ptr<SpfTable> owned;
  const SpfTable& table = detail::table_for(std::max<std::uint64_t>(n, 2), owned);
  const auto j = detail::jordan_table(n, 2.0 * a, table);
  std::vector<double> w(n + 1);
  for (std::uint64_t m = 1; m <= n; ++m) w[m] = std::pow(static_cast<double>(m), -a);
  CompensatedSum<double> total;
  double err = 0.0;
  for (std::uint64_t e = 1; e <= n; ++e) {
    CompensatedSum<double> c;
    for (std::uint64_t m = e; m <= n; m += e) c += w[m];
    const double cv = c.value();
    const double term = j[e] * cv * cv;
    total += term;
    err += std::abs(term) * 8.0 * detail::kUnit + 2.0 * std::abs(j[e] * cv) * c.error_bound();
  }
  SumReport rep;
  rep.value = total.value();
  rep.method = SumMethod::fast;
  rep.n = n;
  rep.alpha = a;
  rep.est_abs_error = err + total.error_bound();
  return rep;
}

/// sum_{m,n} (m,n)^{2a}/(mn)^a * 2^{omega(mn/(m,n)^2)}, double loop over
/// factorizations: the summand is prod_p p^{-a |v_p(m) - v_p(n)|} times 2
/// per prime where the valuations differ.
inline SumReport weighted_gcd_sum_2omega(std::span<const FactoredNat> elems, AlphaParam alpha) {
  detail::require_nonempty(elems.size(), "weighted_gcd_sum_2omega");
  const double a = alpha.value();
  const std::size_t n = elems.size();
  CompensatedSum<double> off;
  for (std::size_t i = 0; i < n; ++i) {
    const auto fi = elems[i].factors();
    for (std::size_t k = i + 1; k < n; ++k) {
      const auto fk = elems[k].factors();
      double log_sum = 0.0;
      unsigned differing = 0;
      std::size_t x = 0, y = 0;
      while (x < fi.size() || y < fk.size()) {
        Nat p;
        unsigned ex = 0, ey = 0;
        if (y == fk.size() || (x < fi.size() && fi[x].prime < fk[y].prime)) {
          p = fi[x].prime;
          ex = fi[x++].exponent;
        } else if (x == fi.size() || fk[y].prime < fi[x].prime) {
          p = fk[y].prime;
          ey = fk[y++].exponent;
        } else {
          p = fi[x].prime;
          ex = fi[x++].exponent;
          ey = fk[y++].exponent;
        }
        if (ex != ey) {
          ++differing;
          log_sum += (ex > ey ? ex - ey : ey - ex) * log_nat(p);
        }
      }
      off += std::ldexp(std::exp(-a * log_sum), static_cast<int>(differing));
    }
  }
  SumReport rep;
  rep.value = static_cast<double>(n) + 2.0 * off.value();
  rep.method = SumMethod::weighted;
  rep.n = n;
  rep.alpha = a;
  rep.est_abs_error = 2.0 * (8.0 * detail::kUnit * off.abs_sum() + off.error_bound());
  return rep;
}

inline SumReport weighted_gcd_sum_2omega(const IntegerSet& set, AlphaParam alpha) {
  detail::require_nonempty(set.size(), "weighted_gcd_sum_2omega");
  const auto factored = factorize_all(set);
  return weighted_gcd_sum_2omega(std::span<const FactoredNat>(factored), alpha);
}

/// S(M) / |M| for one set (the inner functional of Gamma_alpha(N)).
inline double gamma_functional(const IntegerSet& set, AlphaParam alpha, unsigned threads = 1) {
  return gcd_sum_fast(set, alpha, threads).value / static_cast<double>(set.size());
}

inline constexpr std::uint64_t kExhaustiveBudget = 1'000'000;

struct ExhaustiveResult {
  IntegerSet best;
  double value = 0.0;
  std::uint64_t evaluated = 0;
};

/// Maximizes S(M)/|M| over all n-subsets of {1..max_value}. Ties resolve to
/// the lexicographically smallest subset (a later subset must win by a
/// relative margin of 1e-12).
inline ExhaustiveResult gamma_exhaustive(std::uint64_t n, std::uint64_t max_value, AlphaParam alpha) {
  if (n == 0 || n > max_value) throw DomainError("gamma_exhaustive: need 1 <= n <= max_value");
  // C(max_value, n); partial products stay integral. Stop once far past the budget.
  Nat combos = 1;
  for (std::uint64_t i = 0; i < n && combos <= (Nat{1} << 100); ++i) combos = combos * (max_value - i) / (i + 1);
  if (combos > kExhaustiveBudget) {
    throw BudgetError("gamma_exhaustive: C(" + std::to_string(max_value) + ", " + std::to_string(n) + ") = " +
                          to_string(combos) + " exceeds budget of " + std::to_string(kExhaustiveBudget),
                      fits_u64(combos) ? static_cast<std::uint64_t>(combos) : ~std::uint64_t{0});
  }
  const double a = alpha.value();
  const std::size_t mv = max_value;
  std::vector<double> term(mv * mv);
  for (std::size_t x = 0; x < mv; ++x) {
    for (std::size_t y = 0; y < mv; ++y) term[x * mv + y] = detail::gcd_term(x + 1, y + 1, a);
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  ExhaustiveResult out;
  std::vector<std::size_t> best_idx;
  double best = -1.0;
  for (;;) {
    double off = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) off += term[idx[x] * mv + idx[y]];
    }
    const double value = (static_cast<double>(n) + 2.0 * off) / static_cast<double>(n);
    ++out.evaluated;
    if (value > best * (1.0 + 1e-12)) {
      best = value;
      best_idx = idx;
    }
    std::size_t pos = n;
    while (pos > 0 && idx[pos - 1] == mv - n + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < n; ++q) idx[q] = idx[q - 1] + 1;
  }
  std::vector<Nat> members;
  for (std::size_t i : best_idx) members.push_back(i + 1);
  out.best = IntegerSet::from_sorted(std::move(members));
  out.value = best;
  return out;
}

struct ExactCheck {
  std::uint64_t n = 0;
  double alpha = 0.0;
  double F = 0.0;
  double constant = 0.0;
  double ratio = 0.0;
  double residual = 0.0;
};

/// zeta(2 - 2a) / (zeta(2) (1 - a)^2)
inline double exact_formula_constant(AlphaParam alpha) {
  const double a = alpha.value();
  return zeta_real(2.0 - 2.0 * a) / (zeta_real(2.0) * (1.0 - a) * (1.0 - a));
}

/// Compares F(N) = (1/N) S({1..N}) with its main term constant * N^{1-2a}.
inline ExactCheck F_exact_check(std::uint64_t n, AlphaParam alpha) {
  if (n == 0) throw DomainError("F_exact_check: N must be positive");
  ExactCheck out;
  out.n = n;
  out.alpha = alpha;
  out.F = gcd_sum_range(n, alpha).value / static_cast<double>(n);
  out.constant = exact_formula_constant(alpha);
  const double main = out.constant * std::pow(static_cast<double>(n), 1.0 - 2.0 * alpha.value());
  out.ratio = out.F / main;
  out.residual = out.F - main;
  return out;
}

/// T(x) = sum_{n <= x} n^{-a}
inline double T_alpha(double x, AlphaParam alpha) {
  if (!(x >= 1.0)) throw DomainError("T_alpha: requires x >= 1");
  const auto top = floor_bound(x);
  CompensatedSum<double> sum;
  for (std::uint64_t n = top; n >= 1; --n) sum += std::pow(static_cast<double>(n), -alpha.value());
  return sum.value();
}

inline constexpr std::uint64_t kSAlphaMax = 5000;

/// S(x) = sum over coprime m, n <= x of (mn)^{-a}, by direct double loop.
inline double S_alpha(double x, AlphaParam alpha) {
  if (!(x >= 1.0)) throw DomainError("S_alpha: requires x >= 1");
  const auto top = floor_bound(x);
  if (top > kSAlphaMax) {
    throw BudgetError("S_alpha: x = " + std::to_string(top) + " exceeds direct-loop limit " +
                          std::to_string(kSAlphaMax),
                      top);
  }
  std::vector<double> w(top + 1);
  for (std::uint64_t m = 1; m <= top; ++m) w[m] = std::pow(static_cast<double>(m), -alpha.value());
  CompensatedSum<double> off;
  for (std::uint64_t m = 1; m <= top; ++m) {
    for (std::uint64_t n = m + 1; n <= top; ++n) {
      if (gcd_u64(m, n) == 1) off += w[m] * w[n];
    }
  }
  return 1.0 + 2.0 * off.value();
}

/// beta(n) = sum_{d | n} mu(d) d^{-2a}, by divisor sum.
inline double beta_fn(const FactoredNat& n, AlphaParam alpha) {
  CompensatedSum<double> sum;
  for_each_divisor(n, [&](Nat d, std::span<const unsigned> exps) {
    int mu = 1;
    for (unsigned e : exps) {
      if (e >= 2) return;
      if (e == 1) mu = -mu;
    }
    sum += mu * std::exp(-2.0 * alpha.value() * log_nat(d));
  });
  return sum.value();
}

struct MobiusChainCheck {
  std::uint64_t x = 0;
  double t_squared = 0.0;     ///< T(x)^2
  double grouped = 0.0;       ///< sum_{d <= x} d^{-2a} S(x/d)
  double s_direct = 0.0;      ///< S(x)
  double inverted = 0.0;      ///< sum_{d <= x} mu(d) d^{-2a} T(x/d)^2
  double rel_err_grouping = 0.0;
  double rel_err_inversion = 0.0;
};

/// Both directions of the Mobius relation between T^2 and S at integer x.
inline MobiusChainCheck mobius_chain_check(std::uint64_t x, AlphaParam alpha) {
  if (x < 1) throw DomainError("mobius_chain_check: requires x >= 1");
  if (x > kSAlphaMax) throw BudgetError("mobius_chain_check: x exceeds direct-loop limit", x);
  const double a = alpha.value();
  std::map<std::uint64_t, double> s_cache, t_cache;
  auto S = [&](std::uint64_t y) {
    auto it = s_cache.find(y);
    if (it != s_cache.end()) return it->second;
    return s_cache[y] = S_alpha(static_cast<double>(y), alpha);
  };
  auto T = [&](std::uint64_t y) {
    auto it = t_cache.find(y);
    if (it != t_cache.end()) return it->second;
    return t_cache[y] = T_alpha(static_cast<double>(y), alpha);
  };
  MobiusChainCheck out;
  out.x = x;
  const double tx = T(x);
  out.t_squared = tx * tx;
  out.s_direct = S(x);
  CompensatedSum<double> grouped, inverted;
  for (std::uint64_t d = 1; d <= x; ++d) {
    const double dw = std::pow(static_cast<double>(d), -2.0 * a);
    grouped += dw * S(x / d);
    const int mu = mobius(factorize(d));
    if (mu != 0) {
      const double t = T(x / d);
      inverted += mu * dw * t * t;
    }
  }
  out.grouped = grouped.value();
  out.inverted = inverted.value();
  out.rel_err_grouping = std::abs(out.grouped - out.t_squared) / out.t_squared;
  out.rel_err_inversion = std::abs(out.inverted - out.s_direct) / out.s_direct;
  return out;
}

struct BetaSeriesCheck {
  std::uint64_t cutoff = 0;
  double partial_sum = 0.0;
  double target = 0.0;  ///< zeta(2 - 2a) / zeta(2)
  double rel_gap = 0.0;
  double min_beta = 0.0;
  double max_beta = 0.0;
  bool monotone_below = true;  ///< checkpoints increase and stay below target
};

/// Partial sums of sum_n beta(n) / n^{2-2a}, with the range of beta over n <= cutoff.
inline BetaSeriesCheck beta_series_check(std::uint64_t cutoff, AlphaParam alpha) {
  if (cutoff < 1) throw DomainError("beta_series_check: cutoff must be positive");
  const double a = alpha.value();
  BetaSeriesCheck out;
  out.cutoff = cutoff;
  out.target = zeta_real(2.0 - 2.0 * a) / zeta_real(2.0);
  out.min_beta = 1.0;
  out.max_beta = 0.0;
  std::unique_ptr<SpfTable> owned;
  const SpfTable& table = detail::table_for(std::max<std::uint64_t>(cutoff, 2), owned);
  std::vector<double> beta(cutoff + 1, 1.0);
  CompensatedSum<double> sum;
  double last_checkpoint = 0.0;
  for (std::uint64_t n = 1; n <= cutoff; ++n) {
    if (n > 1) {
      const std::uint32_t p = table.spf(n);
      std::uint64_t m = n;
      while (m % p == 0) m /= p;
      beta[n] = beta[m] * (1.0 - std::pow(static_cast<double>(p), -2.0 * a));
    }
    out.min_beta = std::min(out.min_beta, beta[n]);
    out.max_beta = std::max(out.max_beta, beta[n]);
    sum += beta[n] * std::pow(static_cast<double>(n), 2.0 * a - 2.0);
    if ((n & (n - 1)) == 0 || n == cutoff) {
      const double v = sum.value();
      if (v < last_checkpoint || v > out.target) out.monotone_below = false;
      last_checkpoint = v;
    }
  }
  out.partial_sum = sum.value();
  out.rel_gap = std::abs(out.partial_sum - out.target) / out.target;
  return out;
}

/// Parameters of the divisor-power bound; beta_prime > beta / (2 alpha).
class SquarefreeLemmaParams {
 public:
  SquarefreeLemmaParams(double beta, double beta_prime, AlphaParam alpha)
      : beta_(beta), beta_prime_(beta_prime), alpha_(alpha) {
    if (!(beta_prime > beta / (2.0 * alpha.value()))) {
      throw DomainError("squarefree lemma: need beta' > beta / (2 alpha)");
    }
  }
  double beta() const noexcept { return beta_; }
  double beta_prime() const noexcept { return beta_prime_; }
  AlphaParam alpha() const noexcept { return alpha_; }

 private:
  double beta_;
  double beta_prime_;
  AlphaParam alpha_;
};

struct SquarefreeLemmaCheck {
  double lhs = 0.0;
  double scale = 0.0;
  double ratio = 0.0;
  /// Same ratio against the conjectured exponent 2a(2^{beta'} - 1); probe only.
  double ratio_sharpened = 0.0;
};

/// lhs = sum_{m in K} d(m)^beta / m^{2a}; scale = K^{1-2a} (log K)^{2^{beta'} - 1}.
inline SquarefreeLemmaCheck squarefree_lemma_check(const IntegerSet& set, const SquarefreeLemmaParams& params) {
  if (set.size() < 2) throw DomainError("squarefree_lemma_check: need |set| >= 2");
  const double a = params.alpha().value();
  CompensatedSum<double> lhs;
  for (Nat m : set) {
    const double d = static_cast<double>(divisor_count(factorize(m)));
    lhs += std::pow(d, params.beta()) * std::exp(-2.0 * a * log_nat(m));
  }
  const double k = static_cast<double>(set.size());
  const double lk = std::log(k);
  const double expo = std::exp2(params.beta_prime()) - 1.0;
  SquarefreeLemmaCheck out;
  out.lhs = lhs.value();
  out.scale = std::pow(k, 1.0 - 2.0 * a) * std::pow(lk, expo);
  out.ratio = out.lhs / out.scale;
  out.ratio_sharpened = out.lhs / (std::pow(k, 1.0 - 2.0 * a) * std::pow(lk, 2.0 * a * expo));
  return out;
}

}  // namespace gcdsum
