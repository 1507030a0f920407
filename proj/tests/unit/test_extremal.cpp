#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gcdsum/extremal.hpp"

using namespace gcdsum;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

FactoredNat first_primes_product(unsigned count) {
  static const Nat ps[] = {2, 3, 5, 7, 11, 13, 17, 19};
  std::vector<PrimePower> f;
  for (unsigned i = 0; i < count; ++i) f.push_back({ps[i], 1});
  return FactoredNat::from_factors(f);
}

}  // namespace

TEST(Mult, Examples) {
  const AlphaParam a(0.25);
  const auto two = mult1_check(factorize(2), factorize(1), a);
  EXPECT_NEAR(two.lhs, 0.5, 1e-12);
  EXPECT_NEAR(two.rhs, 0.5, 1e-12);
  const auto unit = mult1_check(factorize(1), factorize(1), a);
  EXPECT_NEAR(unit.lhs, 1.0, 1e-15);
  EXPECT_NEAR(unit.rhs, 1.0, 1e-15);
  const auto m2 = mult10_check(factorize(2), a);
  EXPECT_NEAR(m2.lhs, 1.1035533905932737, 1e-14);
  EXPECT_NEAR(m2.rhs, 1.1035533905932737, 1e-14);
  EXPECT_NEAR(mult10_check(factorize(1), a).rhs, 1.0, 1e-15);
  EXPECT_LE(mult10_check(factorize(210), AlphaParam(0.4)).rel_err, 1e-9);
  for (double av : {0.1, 0.25, 0.4}) {
    for (Nat c : divisors(factorize(30))) {
      EXPECT_LE(mult1_check(factorize(30), factorize(c), AlphaParam(av)).rel_err, 1e-9);
    }
  }
}

TEST(Mult, Errors) {
  const AlphaParam a(0.25);
  EXPECT_THROW(mult1_check(factorize(12), factorize(1), a), DomainError);
  EXPECT_THROW(mult1_check(factorize(30), factorize(7), a), DomainError);
  EXPECT_THROW(mult10_check(factorize(4), a), DomainError);
}

TEST(Mult, OneSumsToTen) {
  const auto top = first_primes_product(6);
  for (double av : {0.05, 0.2, 0.45}) {
    const AlphaParam a(av);
    for (Nat kv : divisors(top)) {
      const auto k = factorize(kv);
      double sum = 0.0;
      for (Nat c : divisors(k)) sum += mult1_check(k, factorize(c), a).rhs;
      ASSERT_LE(rel(sum, mult10_check(k, a).rhs), 1e-9) << to_string(kv);
    }
  }
}

TEST(ProdScan, SinglePrimeAndAsymptote) {
  const AlphaParam a(0.25);
  const std::vector<double> bounds{2.0};
  const auto row = prod_lower_bound_scan(bounds, a)[0];
  EXPECT_NEAR(row.product, mult10_factor(2, a), 1e-15);
  EXPECT_NEAR(row.ratio, mult10_factor(2, a) / std::pow(std::log(2.0), 0.5), 1e-14);
  // factor - (1 + 2a/p) = O(p^{2a-2}) at p around 10^5.
  for (double av : {0.1, 0.25, 0.4}) {
    const AlphaParam b(av);
    const Nat p = 100'003;
    const double scaled = mult10_factor_excess(p, b) / std::pow(to_double(p), 2 * av - 2);
    EXPECT_GT(std::abs(scaled), 0.1);
    EXPECT_LT(std::abs(scaled), 10.0);
  }
  const std::vector<double> grid{10, 100, 1000, 10000};
  const auto rows = prod_lower_bound_scan(grid, a);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].product, rows[i - 1].product);
  const std::vector<double> bad{1.5};
  EXPECT_THROW(prod_lower_bound_scan(bad, a), DomainError);
}

TEST(Rankin, FiniteIdentity) {
  for (double m : {7.0, 11.0, 13.0}) {
    const auto r = smooth_f_sum_identity(m, AlphaParam(0.25));
    EXPECT_LE(r.rel_err, 1e-9);
    EXPECT_EQ(r.terms, std::uint64_t{1} << primes_up_to(static_cast<std::uint64_t>(m)).size());
  }
}

TEST(Rankin, TailCheck) {
  const AlphaParam a(0.25);
  const auto r = rankin_tail_check({10'000, 0.3, a});
  EXPECT_NEAR(r.tail, r.tail_complement, 1e-9 * r.product);
  EXPECT_LE(r.tail, r.rankin_bound * (1 + 1e-12));
  EXPECT_EQ(r.threshold, 21u);
  // N large relative to M: the head takes every term.
  const auto big = rankin_tail_check({1'000'000'000'000ULL, 0.05, a});
  EXPECT_EQ(big.tail, 0.0);
  EXPECT_TRUE(big.pass);
  EXPECT_THROW(rankin_tail_check({10'000'000'000ULL, 0.5, a}), BudgetError);
}

TEST(Construction, SmallExampleShape) {
  const ConstructionParams p{1000, 0.3, AlphaParam(0.25)};
  const auto out = build_construction(p);
  EXPECT_EQ(out.k.value(), Nat{210});
  EXPECT_EQ(out.a_target, 10u);
  EXPECT_EQ(out.A.size(), 10u);
  EXPECT_EQ(out.D.size(), 10u);
  EXPECT_EQ(out.M_set.size(), out.M_factored.size());
  for (std::size_t i = 0; i < out.M_set.size(); ++i) ASSERT_EQ(out.M_factored[i].value(), out.M_set[i]);
  EXPECT_TRUE(check_construction(out, p).all());
  for (const auto& fam : out.sd_families) {
    EXPECT_EQ(Nat{fam.S.size()}, Nat{1000} * euler_phi(fam.d) / 210);
    if (fam.d.value() == out.k.value()) {
      // Nothing to be coprime to: S_k = {1, ..., |S_k|}.
      EXPECT_EQ(fam.S, IntegerSet::range(fam.S.size()));
      EXPECT_EQ(fam.s_max, Nat{fam.S.size()});
    }
  }
}

TEST(Construction, InvariantsAcrossGrid) {
  for (std::uint64_t n : {1'000ULL, 10'000ULL}) {
    for (double delta : {0.25, 0.3, 0.35}) {
      const ConstructionParams p{n, delta, AlphaParam(0.25)};
      const auto out = build_construction(p);
      ASSERT_TRUE(check_construction(out, p).all()) << n << " " << delta;
      const auto rep = lower_bound_report(out, p);
      EXPECT_GT(rep.ratio, 0.0);
      EXPECT_EQ(rep.m_size, out.M_set.size());
    }
  }
}

TEST(Construction, EqualityCaseAllowsMEqualsN) {
  const ConstructionParams p{64, 0.2, AlphaParam(0.25)};
  const auto out = build_construction(p);
  EXPECT_EQ(out.M_set.size(), 64u);
  EXPECT_TRUE(check_construction(out, p).all());
}

TEST(Construction, DetectsTampering) {
  const ConstructionParams p{1000, 0.3, AlphaParam(0.25)};
  auto out = build_construction(p);
  std::vector<Nat> a(out.A.begin(), out.A.end());
  a.back() = 4;  // not squarefree
  out.A = IntegerSet::from_unsorted(a);
  const auto inv = check_construction(out, p);
  EXPECT_FALSE(inv.a_squarefree_smooth);
  EXPECT_FALSE(inv.all());
}

TEST(Construction, Guards) {
  EXPECT_THROW(build_construction({1, 0.3, AlphaParam(0.25)}), DomainError);
  EXPECT_THROW(build_construction({1000, 0.0, AlphaParam(0.25)}), DomainError);
  EXPECT_THROW(build_construction({1000, 1.0, AlphaParam(0.25)}), DomainError);
  EXPECT_THROW(build_construction({1'000'000'000'000'000ULL, 0.9, AlphaParam(0.25)}), ResourceError);
  const auto tiny = build_construction({8, 0.34, AlphaParam(0.25)});
  EXPECT_TRUE(tiny.shortfall || tiny.A.size() == tiny.a_target);
}

TEST(Construction, SquarefreeOnlyToggle) {
  const ConstructionParams p{10'000, 0.3, AlphaParam(0.25), true};
  const auto out = build_construction(p);
  for (const auto& f : out.M_factored) ASSERT_TRUE(f.is_squarefree());
  EXPECT_TRUE(check_construction(out, p).all());
}

TEST(SdBounds, Table) {
  const ConstructionParams p{10'000, 0.35, AlphaParam(0.25)};
  const auto out = build_construction(p);
  const auto t = sd_bounds_check(out, p.n_target);
  EXPECT_EQ(t.rows.size(), out.D.size());
  EXPECT_EQ(t.asserted_violations, 0u);
  for (const auto& r : t.rows) EXPECT_GT(r.s_bound, 0.0);
}
