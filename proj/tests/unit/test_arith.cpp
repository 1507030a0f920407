#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gcdsum/arith.hpp"

using namespace gcdsum;

namespace {

std::vector<std::pair<Nat, unsigned>> pairs(const FactoredNat& f) {
  std::vector<std::pair<Nat, unsigned>> out;
  for (const auto& p : f.factors()) out.emplace_back(p.prime, p.exponent);
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Straight trial division, independent of the sieve.
FactoredNat trial_factor(std::uint64_t n) {
  std::vector<PrimePower> f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return FactoredNat::from_factors(f);
}

}  // namespace

TEST(Sieve, SmallestPrimeFactor) {
  const auto t10 = spf_sieve(10);
  EXPECT_EQ(t10.spf(9), 3u);
  EXPECT_EQ(t10.spf(7), 7u);
  EXPECT_EQ(spf_sieve(100).spf(91), 7u);
}

TEST(Sieve, AgreesWithTrialDivision) {
  const auto t = spf_sieve(20'000);
  for (std::uint64_t n = 2; n <= 20'000; ++n) {
    ASSERT_EQ(t.spf(n), trial_factor(n).factors()[0].prime) << n;
  }
}

TEST(Sieve, RefusesOverBudget) {
  EXPECT_THROW(SpfTable(1'000, 100), ResourceError);
  EXPECT_THROW(spf_sieve(1), DomainError);
}

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).factors().empty());
  EXPECT_EQ(pairs(factorize(12)), (std::vector<std::pair<Nat, unsigned>>{{2, 2}, {3, 1}}));
  const auto big = factorize(6469693230ULL);
  std::vector<std::pair<Nat, unsigned>> expect;
  Nat prod = 1;
  for (Nat p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
    expect.emplace_back(p, 1);
    prod *= p;
  }
  EXPECT_EQ(prod, Nat{6469693230ULL});
  EXPECT_EQ(pairs(big), expect);
}

TEST(Factorize, BeyondSieveTable) {
  const auto small = spf_sieve(1'000);
  // 1000003 is prime; 999983 is prime.
  EXPECT_EQ(pairs(factorize(Nat{1'000'003} * 999'983, small)),
            (std::vector<std::pair<Nat, unsigned>>{{999'983, 1}, {1'000'003, 1}}));
  EXPECT_EQ(pairs(factorize(Nat{1} << 70)), (std::vector<std::pair<Nat, unsigned>>{{2, 70}}));
  const Nat m = Nat{200560490130ULL} * 15'299;  // primorial(31) * prime
  const auto f = factorize(m);
  EXPECT_EQ(f.value(), m);
  EXPECT_EQ(f.factors().size(), 12u);
  EXPECT_THROW(factorize(0), DomainError);
}

TEST(Factorize, RandomRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick(1, 50'000'000'000ULL);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = pick(rng);
    const auto f = factorize(n);
    Nat prod = 1;
    for (const auto& p : f.factors()) {
      EXPECT_EQ(factorize(p.prime).factors().size(), 1u);
      for (unsigned e = 0; e < p.exponent; ++e) prod *= p.prime;
    }
    EXPECT_EQ(prod, Nat{n});
  }
}

TEST(Multiplicative, Examples) {
  EXPECT_EQ(euler_phi(factorize(1)), Nat{1});
  EXPECT_EQ(euler_phi(factorize(12)), Nat{4});
  EXPECT_EQ(euler_phi(factorize(210)), Nat{48});
  EXPECT_EQ(omega(factorize(1)), 0u);
  EXPECT_EQ(omega(factorize(12)), 2u);
  EXPECT_EQ(omega(factorize(30030)), 6u);
  EXPECT_EQ(divisor_count(factorize(1)), 1u);
  EXPECT_EQ(divisor_count(factorize(12)), 6u);
  EXPECT_EQ(divisor_count(factorize(720)), 30u);
  EXPECT_EQ(mobius(factorize(1)), 1);
  EXPECT_EQ(mobius(factorize(4)), 0);
  EXPECT_EQ(mobius(factorize(30)), -1);
}

TEST(Divisors, Examples) {
  EXPECT_EQ(divisors(factorize(1)), std::vector<Nat>{1});
  EXPECT_EQ(divisors(factorize(12)), (std::vector<Nat>{1, 2, 3, 4, 6, 12}));
  const auto d720 = divisors(factorize(720));
  EXPECT_EQ(d720.size(), 30u);
  std::size_t brute = 0;
  for (Nat d = 1; d <= 720; ++d) brute += (720 % d == 0);
  EXPECT_EQ(brute, 30u);
}

TEST(Multiplicative, TotientSumIdentity) {
  for (std::uint64_t k = 1; k <= 100'000; ++k) {
    const auto f = factorize(k);
    Nat sum = 0;
    for_each_divisor(f, [&](Nat e, std::span<const unsigned>) { sum += euler_phi(factorize_divisor(f, e)); });
    ASSERT_EQ(sum, Nat{k}) << k;
  }
}

TEST(Multiplicative, RandomCoprimePairs) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> pick(1, 1'000'000);
  const AlphaParam alpha(0.3);
  int tested = 0;
  while (tested < 10'000) {
    const std::uint64_t a = pick(rng), b = pick(rng);
    if (gcd_u64(a, b) != 1) continue;
    ++tested;
    const auto fa = factorize(a), fb = factorize(b), fab = factorize(Nat{a} * b);
    ASSERT_LE(rel(g_fn(fab, alpha), g_fn(fa, alpha) * g_fn(fb, alpha)), 1e-11);
    ASSERT_LE(rel(h_fn(fab, alpha), h_fn(fa, alpha) * h_fn(fb, alpha)), 1e-11);
    if (fab.is_squarefree()) {
      ASSERT_LE(rel(f_fn(fab, alpha), f_fn(fa, alpha) * f_fn(fb, alpha)), 1e-11);
    }
    ASSERT_EQ(euler_phi(fab), euler_phi(fa) * euler_phi(fb));
    ASSERT_EQ(divisor_count(fab), divisor_count(fa) * divisor_count(fb));
    ASSERT_EQ(mobius(fab), mobius(fa) * mobius(fb));
    ASSERT_EQ(omega(fab), omega(fa) + omega(fb));
  }
}

TEST(GFunction, Examples) {
  const AlphaParam a(0.25);
  EXPECT_DOUBLE_EQ(g_fn(factorize(1), a), 1.0);
  EXPECT_NEAR(g_fn(factorize(2), a), 1.0 + std::pow(2.0, -0.25), 1e-15);
  EXPECT_NEAR(g_fn(factorize(4), a), 2.548003196440262, 1e-14);
}

TEST(HFunction, Examples) {
  const AlphaParam a(0.25);
  EXPECT_DOUBLE_EQ(h_fn(factorize(1), a), 1.0);
  EXPECT_NEAR(h_fn(factorize(2), a), 1.2503203980494924, 1e-14);
}

TEST(HFunction, MatchesDirectDivisorSum) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> pick(1, 1'000'000);
  for (double av : {0.1, 0.25, 0.4}) {
    const AlphaParam a(av);
    for (int i = 0; i < 1000; ++i) {
      const auto n = factorize(pick(rng));
      double direct = 0.0;
      for (Nat d : divisors(n)) {
        direct += std::pow(to_double(d), 2 * av - 1) / g_fn(factorize(n.value() / d), a);
      }
      ASSERT_LE(rel(h_fn(n, a), direct), 1e-11);
    }
  }
}

TEST(HFunction, LargePrimePowersProbe) {
  // Reported only below the threshold; at and above 10^4 it must hold.
  for (double av : {0.1, 0.25}) {
    const AlphaParam a(av);
    for (std::uint64_t p : primes_up_to(1'000'000)) {
      Nat q = p;
      for (unsigned m = 1; q <= 1'000'000; ++m, q *= p) {
        if (q >= 10'000) {
          ASSERT_LE(h_prime_power(p, m, a), 1.0) << "p=" << p << " m=" << m;
        }
      }
    }
  }
}

TEST(FFunction, Examples) {
  const AlphaParam a(0.25);
  EXPECT_DOUBLE_EQ(f_fn(factorize(1), a), 1.0);
  EXPECT_NEAR(f_fn(factorize(2), a), 1.6568542494923802, 1e-14);
  EXPECT_NEAR(f_fn(factorize(6), a), f_fn(factorize(2), a) * f_fn(factorize(3), a), 1e-14);
}

TEST(FFunction, WarnsOnNonSquarefree) {
  std::vector<std::string> seen;
  auto saved = warning_sink();
  warning_sink() = [&](std::string_view m) { seen.emplace_back(m); };
  const AlphaParam a(0.25);
  EXPECT_NEAR(f_fn(factorize(4), a), f_fn(factorize(2), a), 1e-15);
  warning_sink() = saved;
  EXPECT_EQ(seen.size(), 1u);
}

TEST(Jordan, Examples) {
  EXPECT_DOUBLE_EQ(jordan_j(factorize(1), 0.5), 1.0);
  EXPECT_NEAR(jordan_j(factorize(2), 0.5), std::sqrt(2.0) - 1.0, 1e-15);
  double sum = 0.0;
  for (Nat e : divisors(factorize(12))) sum += jordan_j(factorize(e), 0.5);
  EXPECT_LE(rel(sum, std::sqrt(12.0)), 1e-12);
}

TEST(Jordan, DivisorSumIdentity) {
  for (double s : {0.2, 0.5, 0.8}) {
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
      double sum = 0.0;
      for_each_divisor_jordan(factorize(n), s, [&](Nat, double j) { sum += j; });
      ASSERT_LE(rel(sum, std::pow(static_cast<double>(n), s)), 1e-11) << n << " " << s;
    }
  }
}

TEST(Primorial, Examples) {
  EXPECT_EQ(primorial(2).value(), Nat{2});
  EXPECT_EQ(primorial(10).value(), Nat{210});
  EXPECT_EQ(primorial(29).value(), Nat{6469693230ULL});
  EXPECT_THROW(primorial(1000), ResourceError);
}

TEST(SmoothEnumeration, Examples) {
  const auto two = squarefree_smooth_enumerate(2, 2);
  EXPECT_EQ(std::vector<Nat>(two.set.begin(), two.set.end()), (std::vector<Nat>{1, 2}));
  EXPECT_FALSE(two.shortfall);
  const auto all = squarefree_smooth_enumerate(10, 16);
  EXPECT_EQ(std::vector<Nat>(all.set.begin(), all.set.end()), divisors(factorize(210)));
  EXPECT_FALSE(all.shortfall);
  const auto over = squarefree_smooth_enumerate(10, 20);
  EXPECT_EQ(over.set.size(), 16u);
  EXPECT_TRUE(over.shortfall);
}

TEST(SmoothEnumeration, SmallestFirst) {
  const auto got = squarefree_smooth_enumerate(31.6, 46);
  std::vector<Nat> brute;
  for (std::uint64_t m = 1; brute.size() < 46; ++m) {
    const auto f = factorize(m);
    if (f.is_squarefree() && (f.factors().empty() || f.factors().back().prime <= 31)) brute.push_back(m);
  }
  EXPECT_EQ(std::vector<Nat>(got.set.begin(), got.set.end()), brute);
}

TEST(Zeta, Values) {
  EXPECT_LE(rel(zeta_real(2.0), std::numbers::pi * std::numbers::pi / 6), 1e-13);
  EXPECT_LE(rel(zeta_real(1.5), 2.6123753486854883), 1e-12);
  EXPECT_LE(rel(zeta_real(1.2), 5.591582441177752), 1e-12);
  EXPECT_LE(rel(zeta_real(1.1), 10.584448464950801), 1e-12);
  EXPECT_LE(rel(zeta_real(3.0), 1.2020569031595943), 1e-12);
  EXPECT_LE(rel(zeta_real(1.01), 100.57794333849678), 1e-12);
  EXPECT_THROW(zeta_real(1.0), DomainError);
  EXPECT_THROW(zeta_real(0.5), DomainError);
}

TEST(Alpha, Domain) {
  EXPECT_THROW(AlphaParam(0.0), DomainError);
  EXPECT_THROW(AlphaParam(0.5), DomainError);
  EXPECT_THROW(AlphaParam(-0.1), DomainError);
  EXPECT_NO_THROW(AlphaParam(0.49));
}

TEST(Integer, ParseAndPrint) {
  EXPECT_EQ(to_string(kNatMax), "340282366920938463463374607431768211455");
  EXPECT_EQ(parse_nat("340282366920938463463374607431768211455"), kNatMax);
  EXPECT_FALSE(parse_nat("340282366920938463463374607431768211456").has_value());
  EXPECT_FALSE(parse_nat("12a").has_value());
  EXPECT_FALSE(parse_nat("").has_value());
  EXPECT_EQ(gcd(Nat{1} << 100, Nat{3} << 98), Nat{1} << 98);
}
