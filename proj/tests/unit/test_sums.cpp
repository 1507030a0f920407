#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gcdsum/sums.hpp"

using namespace gcdsum;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

IntegerSet random_set(std::mt19937_64& rng, std::size_t max_size, std::uint64_t max_value) {
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::uniform_int_distribution<std::uint64_t> pick(1, max_value);
  std::vector<Nat> v;
  const auto want = size(rng);
  while (v.size() < want) {
    const Nat x = pick(rng);
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  }
  return IntegerSet::from_unsorted(v);
}

IntegerSet set_of(std::initializer_list<Nat> v) { return IntegerSet::from_unsorted(v); }

}  // namespace

TEST(NaiveSum, Examples) {
  const AlphaParam a(0.25);
  EXPECT_DOUBLE_EQ(gcd_sum_naive(set_of({1}), a).value, 1.0);
  EXPECT_DOUBLE_EQ(gcd_sum_naive(set_of({1}), AlphaParam(0.4)).value, 1.0);
  EXPECT_NEAR(gcd_sum_naive(set_of({1, 2}), a).value, 2.0 + 2.0 * std::pow(2.0, -0.25), 1e-14);
  EXPECT_LE(rel(gcd_sum_naive(IntegerSet::range(10), a).value, 60.48522675024058), 1e-14);
  EXPECT_LE(rel(gcd_sum_naive(IntegerSet::range(10), AlphaParam(0.1)).value, 80.77493991089722), 1e-14);
  EXPECT_LE(rel(gcd_sum_naive(IntegerSet::range(10), AlphaParam(0.4)).value, 46.97153271191369), 1e-14);
  EXPECT_THROW(gcd_sum_naive(IntegerSet{}, a), DomainError);
}

TEST(FastSum, Examples) {
  const AlphaParam a(0.25);
  EXPECT_DOUBLE_EQ(gcd_sum_fast(set_of({1}), a).value, 1.0);
  EXPECT_NEAR(gcd_sum_fast(set_of({2, 4}), a).value, 2.0 + 2.0 * std::sqrt(2.0) / std::pow(8.0, 0.25), 1e-14);
  EXPECT_NEAR(gcd_sum_fast(set_of({2, 4}), a).value, 3.6817928305074290, 1e-13);
  EXPECT_LE(rel(gcd_sum_fast(IntegerSet::range(10), a).value, 60.48522675024058), 1e-14);
  EXPECT_LE(rel(gcd_sum_range(10, a).value, 60.48522675024058), 1e-14);
  EXPECT_THROW(gcd_sum_fast(IntegerSet{}, a), DomainError);
}

TEST(FastSum, MatchesNaiveOnRandomSets) {
  std::mt19937_64 rng(2024);
  for (double av : {0.1, 0.25, 0.4}) {
    const AlphaParam a(av);
    for (int t = 0; t < 60; ++t) {
      const auto s = random_set(rng, 300, 1'000'000);
      ASSERT_LE(rel(gcd_sum_fast(s, a).value, gcd_sum_naive(s, a).value), 1e-9);
    }
  }
}

TEST(FastSum, HighlyCompositeAndHugeElements) {
  // Many shared small primes push work through the frequent-prime split.
  std::vector<Nat> v;
  for (std::uint64_t m = 1; m <= 2000; ++m) v.push_back(Nat{m} * 720720);
  v.push_back(Nat{1} << 100);
  v.push_back((Nat{1} << 99) * 3);
  const auto s = IntegerSet::from_unsorted(v);
  const AlphaParam a(0.3);
  EXPECT_LE(rel(gcd_sum_fast(s, a).value, gcd_sum_naive(s, a).value), 1e-10);
}

TEST(FastSum, RangeMatchesGeneral) {
  const AlphaParam a(0.35);
  for (std::uint64_t n : {1, 2, 17, 500, 3000}) {
    ASSERT_LE(rel(gcd_sum_range(n, a).value, gcd_sum_fast(IntegerSet::range(n), a).value), 1e-12);
  }
}

TEST(FastSum, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(3);
  const auto s = random_set(rng, 300, 1'000'000);
  const AlphaParam a(0.25);
  const double one = gcd_sum_fast(s, a, 1).value;
  EXPECT_EQ(one, gcd_sum_fast(s, a, 1).value);
  for (unsigned t : {2u, 3u, 8u}) {
    const double v = gcd_sum_fast(s, a, t).value;
    EXPECT_EQ(v, gcd_sum_fast(s, a, t).value);
    EXPECT_LE(rel(v, one), 1e-12);
    EXPECT_LE(rel(gcd_sum_naive(s, a, t).value, gcd_sum_naive(s, a, 1).value), 1e-12);
  }
}

TEST(SumProperties, DiagonalLowerBoundAndErrorEstimate) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_set(rng, 100, 100'000);
    const auto r = gcd_sum_fast(s, AlphaParam(0.2));
    EXPECT_GE(r.value, static_cast<double>(s.size()));
    EXPECT_GE(r.est_abs_error, 0.0);
    EXPECT_LT(r.est_abs_error, 1e-9 * r.value);
    EXPECT_EQ(r.n, s.size());
  }
}

TEST(SumProperties, DilationInvariance) {
  std::mt19937_64 rng(10);
  const AlphaParam a(0.25);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_set(rng, 100, 100'000);
    const double base = gcd_sum_naive(s, a).value;
    for (Nat c : {2, 3, 5}) {
      std::vector<Nat> scaled;
      for (Nat m : s) scaled.push_back(c * m);
      const auto sc = IntegerSet::from_sorted(scaled);
      ASSERT_LE(rel(gcd_sum_naive(sc, a).value, base), 1e-13);
      ASSERT_LE(rel(gcd_sum_fast(sc, a).value, base), 1e-12);
    }
  }
}

TEST(WeightedSum, Examples) {
  const AlphaParam a(0.25);
  EXPECT_DOUBLE_EQ(weighted_gcd_sum_2omega(set_of({1}), a).value, 1.0);
  EXPECT_NEAR(weighted_gcd_sum_2omega(set_of({1, 2}), a).value, 2.0 + 4.0 * std::pow(2.0, -0.25), 1e-14);
}

TEST(WeightedSum, MatchesDirectDefinition) {
  // Weight 2^{omega(m/(m,n)) + omega(n/(m,n))} on each off-diagonal term.
  std::mt19937_64 rng(12);
  const AlphaParam a(0.3);
  for (int t = 0; t < 20; ++t) {
    const auto s = random_set(rng, 60, 50'000);
    double direct = 0.0;
    for (Nat m : s) {
      for (Nat n : s) {
        const Nat g = gcd(m, n);
        const double w = std::ldexp(1.0, static_cast<int>(omega(factorize(m / g)) + omega(factorize(n / g))));
        direct += (m == n ? 1.0 : w) * std::pow(to_double(g) * to_double(g) / (to_double(m) * to_double(n)), 0.3);
      }
    }
    ASSERT_LE(rel(weighted_gcd_sum_2omega(s, a).value, direct), 1e-12);
  }
}

TEST(Gamma, Functional) {
  const AlphaParam a(0.25);
  EXPECT_DOUBLE_EQ(gamma_functional(set_of({1}), a), 1.0);
  EXPECT_NEAR(gamma_functional(set_of({1, 2}), a), 1.0 + std::pow(2.0, -0.25), 1e-14);
}

TEST(Gamma, Exhaustive) {
  const AlphaParam a(0.25);
  const auto one = gamma_exhaustive(1, 5, a);
  EXPECT_EQ(one.best, set_of({1}));
  EXPECT_DOUBLE_EQ(one.value, 1.0);
  const auto two = gamma_exhaustive(2, 3, a);
  EXPECT_EQ(two.best, set_of({1, 2}));
  EXPECT_NEAR(two.value, 1.0 + std::pow(2.0, -0.25), 1e-14);
  EXPECT_EQ(two.evaluated, 3u);
  const auto three = gamma_exhaustive(3, 8, a);
  EXPECT_EQ(three.best, set_of({1, 2, 4}));
  EXPECT_NEAR(three.value, 2.5925997411293177, 1e-13);
  const auto four = gamma_exhaustive(4, 12, a);
  EXPECT_EQ(four.best, set_of({1, 2, 4, 8}));
  EXPECT_NEAR(four.value, 3.2657531828177996, 1e-13);
  EXPECT_THROW(gamma_exhaustive(20, 60, a), BudgetError);
  EXPECT_THROW(gamma_exhaustive(0, 5, a), DomainError);
}

TEST(ExactFormula, Constant) {
  EXPECT_NEAR(exact_formula_constant(AlphaParam(0.25)), 2.8233489327667044, 1e-12);
  const auto e = F_exact_check(1000, AlphaParam(0.25));
  EXPECT_EQ(e.n, 1000u);
  EXPECT_NEAR(e.ratio, 0.95508, 1e-5);
  EXPECT_NEAR(e.F * 1000, gcd_sum_naive(IntegerSet::range(1000), AlphaParam(0.25)).value, 1e-8 * e.F * 1000);
}

TEST(ExactFormula, RatioApproachesOne) {
  for (double av : {0.1, 0.25, 0.4}) {
    const AlphaParam a(av);
    const double lo = F_exact_check(1'000, a).ratio;
    const double hi = F_exact_check(100'000, a).ratio;
    EXPECT_LT(std::abs(hi - 1), std::abs(lo - 1)) << av;
  }
}

TEST(MobiusChain, Pieces) {
  const AlphaParam a(0.25);
  EXPECT_DOUBLE_EQ(T_alpha(1, a), 1.0);
  EXPECT_DOUBLE_EQ(beta_fn(factorize(1), a), 1.0);
  for (Nat p : {2, 3, 101}) {
    const double b = beta_fn(factorize(p), a);
    EXPECT_NEAR(b, 1.0 - std::pow(to_double(p), -0.5), 1e-15);
    EXPECT_GT(b, 0.0);
    EXPECT_LT(b, 1.0);
  }
  EXPECT_NEAR(S_alpha(10, a), 32.24998640877682, 1e-12);
  EXPECT_THROW(S_alpha(5001, a), BudgetError);
  EXPECT_THROW(T_alpha(0.5, a), DomainError);
}

TEST(MobiusChain, IdentitiesHold) {
  for (double av : {0.1, 0.25, 0.4}) {
    for (std::uint64_t x : {1, 2, 7, 64, 500, 2000}) {
      const auto c = mobius_chain_check(x, AlphaParam(av));
      ASSERT_LE(c.rel_err_grouping, 1e-10) << x;
      ASSERT_LE(c.rel_err_inversion, 1e-10) << x;
    }
  }
}

TEST(MobiusChain, BetaRangeAndPartialSums) {
  for (double av : {0.1, 0.25, 0.4}) {
    const auto b = beta_series_check(100'000, AlphaParam(av));
    EXPECT_GT(b.min_beta, 0.0);
    EXPECT_LE(b.max_beta, 1.0);
    EXPECT_TRUE(b.monotone_below);
    EXPECT_LT(b.partial_sum, b.target);
  }
}

TEST(SquarefreeLemma, Examples) {
  const AlphaParam a(0.25);
  const SquarefreeLemmaParams p(1.0, 2.1, a);
  const auto c = squarefree_lemma_check(set_of({1, 2}), p);
  EXPECT_NEAR(c.lhs, 1.0 + 2.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(c.ratio, c.lhs / c.scale, 1e-15);

  const SquarefreeLemmaParams zero(0.0, 0.5, a);
  double partial = 0.0;
  for (int m = 1; m <= 100; ++m) partial += std::pow(m, -0.5);
  EXPECT_NEAR(squarefree_lemma_check(IntegerSet::range(100), zero).lhs, partial, 1e-12);

  EXPECT_THROW(squarefree_lemma_check(set_of({1}), p), DomainError);
  EXPECT_THROW(SquarefreeLemmaParams(1.0, 1.0, a), DomainError);
}

TEST(Compensated, RecoversCancellation) {
  CompensatedSum<double> s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-16;
  s += -1.0;
  EXPECT_NEAR(s.value(), 1e-13, 1e-25);
  EXPECT_EQ(s.count(), 1002u);
}
