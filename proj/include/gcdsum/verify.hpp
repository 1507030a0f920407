#pragma once

// Verification suites run by `gcdsum verify`. Each suite returns uniform
// rows; enforced rows failing their tolerance make the run fail.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gcdsum/alpha.hpp"
#include "gcdsum/arith.hpp"
#include "gcdsum/closure.hpp"
#include "gcdsum/extremal.hpp"
#include "gcdsum/sums.hpp"

namespace gcdsum {

struct VerifyRow {
  std::string suite;
  std::string case_name;
  double lhs = 0.0;
  double rhs = 0.0;
  double metric = 0.0;     ///< rel_err, ratio or flag value, per suite
  double tolerance = 0.0;
  bool pass = true;
  bool enforced = true;
};

struct VerifyOptions {
  AlphaParam alpha{0.25};
  std::uint64_t primes = 4;      ///< mult: k ranges over squarefree divisors of the first `primes` primes
  std::uint64_t trials = 50;     ///< randomized suites
  std::uint64_t n = 10'000;      ///< rankin: N; hbound: range limit
  double delta = 0.3;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// Random set of `size` distinct values in [1, max_value].
inline IntegerSet random_set(std::mt19937_64& rng, std::size_t size, std::uint64_t max_value) {
  std::uniform_int_distribution<std::uint64_t> pick(1, max_value);
  std::vector<Nat> v;
  while (v.size() < size) {
    const Nat x = pick(rng);
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  }
  return IntegerSet::from_unsorted(std::move(v));
}

/// All divisors of a few random squarefree seeds built from primes < 50.
inline IntegerSet random_divisor_closed_squarefree(std::mt19937_64& rng) {
  static const std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  std::uniform_int_distribution<int> seeds_dist(1, 4), omega_dist(1, 5);
  std::uniform_int_distribution<std::size_t> prime_dist(0, std::size(small) - 1);
  std::vector<Nat> all;
  const int seeds = seeds_dist(rng);
  for (int s = 0; s < seeds; ++s) {
    std::vector<std::uint64_t> ps;
    const int w = omega_dist(rng);
    while (static_cast<int>(ps.size()) < w) {
      const auto p = small[prime_dist(rng)];
      if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    }
    Nat seed = 1;
    for (auto p : ps) seed *= p;
    for (Nat d : divisors(factorize(seed))) all.push_back(d);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return IntegerSet::from_sorted(std::move(all));
}

inline std::vector<VerifyRow> verify_mult(const VerifyOptions& opt) {
  if (opt.primes > 8) throw DomainError("verify mult: at most 8 primes");
  const auto ps = primes_up_to(19);
  std::vector<PrimePower> kf;
  for (std::uint64_t i = 0; i < opt.primes; ++i) kf.push_back({ps[i], 1});
  const auto top = FactoredNat::from_factors(kf);
  std::vector<VerifyRow> rows;
  for (Nat kv : divisors(top)) {
    const auto k = factorize_divisor(top, kv);
    for (Nat cv : divisors(k)) {
      const auto r = mult1_check(k, factorize_divisor(k, cv), opt.alpha);
      rows.push_back({"mult1", "k=" + to_string(kv) + " c=" + to_string(cv), r.lhs, r.rhs, r.rel_err, 1e-9,
                      r.rel_err <= 1e-9, true});
    }
    const auto r = mult10_check(k, opt.alpha);
    rows.push_back({"mult10", "k=" + to_string(kv), r.lhs, r.rhs, r.rel_err, 1e-9, r.rel_err <= 1e-9, true});
  }
  return rows;
}

inline std::vector<VerifyRow> verify_rankin(const VerifyOptions& opt) {
  std::vector<VerifyRow> rows;
  for (double m : {7.0, 11.0, 13.0}) {
    const auto r = smooth_f_sum_identity(m, opt.alpha);
    rows.push_back({"rankin_identity", "M=" + std::to_string(static_cast<int>(m)), r.full_sum, r.product, r.rel_err,
                    1e-9, r.rel_err <= 1e-9, true});
  }
  ConstructionParams p{opt.n, opt.delta, opt.alpha};
  const auto t = rankin_tail_check(p);
  const std::string name = "N=" + std::to_string(opt.n) + " delta=" + std::to_string(opt.delta);
  rows.push_back({"rankin_tail", name, t.tail, t.budget, t.tail / t.budget, 1.0, t.pass, false});
  rows.push_back({"rankin_bound", name, t.tail, t.rankin_bound, t.tail / t.rankin_bound, 1.0,
                  t.tail <= t.rankin_bound * (1 + 1e-12), true});
  return rows;
}

inline std::vector<VerifyRow> verify_closure(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, 40);
  std::vector<VerifyRow> rows;
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    const auto set = random_set(rng, size_dist(rng), 10'000);
    const auto trace = closure_transform(set);
    const auto chk = closure_inequality_check(set, opt.alpha);
    const bool ok = chk.pass && trace.final.size() == set.size() && is_divisor_closed(trace.final);
    rows.push_back({"closure", "trial=" + std::to_string(t) + " size=" + std::to_string(set.size()), chk.lhs, chk.rhs,
                    chk.lhs / chk.rhs, 1.0, ok, true});
  }
  return rows;
}

inline std::vector<VerifyRow> verify_divideout(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<VerifyRow> rows;
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    const auto set = random_divisor_closed_squarefree(rng);
    double worst = 0.0;
    bool ok = true;
    for (Nat m : set) {
      if (m < 2 || factorize(m).factors().size() != 1) continue;
      const auto r = divideout_check(set, m);
      worst = std::max(worst, static_cast<double>(r.quotient_size) / static_cast<double>(set.size()));
      ok = ok && r.pass;
    }
    rows.push_back({"divideout", "trial=" + std::to_string(t) + " size=" + std::to_string(set.size()), worst, 0.5,
                    worst, 0.5, ok, true});
  }
  return rows;
}

inline std::vector<VerifyRow> verify_hbound(const VerifyOptions& opt) {
  if (opt.n < 2) throw DomainError("verify hbound: --n must be at least 2");
  std::vector<VerifyRow> rows;
  const std::uint64_t half = opt.n / 2;
  double low = 0.0, high = 0.0;
  for (std::uint64_t m = 1; m <= opt.n; ++m) {
    const double h = h_fn(factorize(m), opt.alpha);
    (m <= half ? low : high) = std::max(m <= half ? low : high, h);
  }
  rows.push_back({"hbound_halves", "max (n/2, n] vs max [1, n/2], n=" + std::to_string(opt.n), high, low, high / low,
                  1.0, high <= low, true});

  double worst = 0.0;
  std::uint64_t probes = 0;
  const std::uint64_t probe_top = std::max<std::uint64_t>(opt.n, 1'000'000);
  for (std::uint64_t p : primes_up_to(probe_top)) {
    Nat q = p;
    unsigned m = 1;
    while (q <= probe_top) {
      if (q >= 10'000) {
        worst = std::max(worst, h_prime_power(p, m, opt.alpha));
        ++probes;
      }
      q *= p;
      ++m;
    }
  }
  rows.push_back({"hbound_prime_power", "p^m in [1e4, " + std::to_string(probe_top) + "] probes=" + std::to_string(probes), worst, 1.0, worst, 1.0,
                  worst <= 1.0, false});

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, opt.n);
  double worst_rel = 0.0;
  for (std::uint64_t t = 0; t < std::max<std::uint64_t>(opt.trials, 1); ++t) {
    const auto n = factorize(pick(rng));
    CompensatedSum<double> direct;
    for (Nat d : divisors(n)) {
      direct += std::pow(to_double(d), 2.0 * opt.alpha.value() - 1.0) / g_fn(factorize(n.value() / d), opt.alpha);
    }
    worst_rel = std::max(worst_rel, std::abs(direct.value() - h_fn(n, opt.alpha)) / direct.value());
  }
  rows.push_back({"hbound_direct", "random n", worst_rel, 0.0, worst_rel, 1e-11, worst_rel <= 1e-11, true});
  return rows;
}

inline std::vector<VerifyRow> verify_mobius(const VerifyOptions& opt) {
  std::vector<VerifyRow> rows;
  for (std::uint64_t x : {1, 10, 100, 500, 1000, 2000}) {
    const auto c = mobius_chain_check(x, opt.alpha);
    rows.push_back({"mobius_grouping", "x=" + std::to_string(x), c.grouped, c.t_squared, c.rel_err_grouping, 1e-10,
                    c.rel_err_grouping <= 1e-10, true});
    rows.push_back({"mobius_inversion", "x=" + std::to_string(x), c.inverted, c.s_direct, c.rel_err_inversion, 1e-10,
                    c.rel_err_inversion <= 1e-10, true});
  }
  const auto b = beta_series_check(100'000, opt.alpha);
  rows.push_back({"beta_range", "n<=1e5", b.min_beta, b.max_beta, b.min_beta, 0.0,
                  b.min_beta > 0.0 && b.max_beta <= 1.0, true});
  rows.push_back({"beta_series", "cutoff=1e5", b.partial_sum, b.target, b.rel_gap, 0.01, b.rel_gap <= 0.01, false});
  return rows;
}

inline std::vector<VerifyRow> verify_oracle(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, 300);
  std::vector<VerifyRow> rows;
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    const auto set = random_set(rng, size_dist(rng), 1'000'000);
    const double naive = gcd_sum_naive(set, opt.alpha, opt.threads).value;
    const double fast = gcd_sum_fast(set, opt.alpha, opt.threads).value;
    const double rel = std::abs(fast - naive) / naive;
    rows.push_back({"oracle", "trial=" + std::to_string(t) + " size=" + std::to_string(set.size()), fast, naive, rel,
                    1e-9, rel <= 1e-9, true});
  }
  return rows;
}

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"mult", "rankin", "closure", "divideout", "hbound", "mobius", "oracle"};
  return names;
}

inline std::vector<VerifyRow> run_verify_suite(const std::string& suite, const VerifyOptions& opt) {
  if (suite == "mult") return verify_mult(opt);
  if (suite == "rankin") return verify_rankin(opt);
  if (suite == "closure") return verify_closure(opt);
  if (suite == "divideout") return verify_divideout(opt);
  if (suite == "hbound") return verify_hbound(opt);
  if (suite == "mobius") return verify_mobius(opt);
  if (suite == "oracle") return verify_oracle(opt);
  if (suite == "all") {
    std::vector<VerifyRow> rows;
    for (const auto& name : verify_suite_names()) {
      auto part = run_verify_suite(name, opt);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
  }
  throw DomainError("unknown verify suite '" + suite + "'");
}

}  // namespace gcdsum
