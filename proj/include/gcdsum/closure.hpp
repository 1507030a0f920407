#pragma once

// Divisor-closure transformation: for each prime p, elements sharing the
// same p-free part r are replaced by r, rp, ..., rp^{t-1}. Sweeps over the
// primes repeat until nothing changes.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "gcdsum/alpha.hpp"
#include "gcdsum/arith.hpp"
#include "gcdsum/errors.hpp"
#include "gcdsum/integer_set.hpp"
#include "gcdsum/sums.hpp"

namespace gcdsum {

/// True iff every divisor of every element is in the set. It is enough to
/// check m/p for each prime p | m.
inline bool is_divisor_closed(const IntegerSet& set) {
  for (Nat m : set) {
    const auto fm = factorize(m);
    for (const auto& f : fm.factors()) {
      if (!set.contains(m / f.prime)) return false;
    }
  }
  return true;
}

struct ClosureStep {
  std::uint64_t sweep = 0;
  Nat prime = 0;
  std::size_t classes = 0;  ///< number of p-free classes
  std::size_t merged = 0;   ///< elements whose value changed
  std::uint64_t snapshot_hash = 0;
  std::uint64_t exponent_mass = 0;  ///< sum over elements of the total prime exponent
};

struct ClosureTrace {
  std::uint64_t passes = 0;  ///< full sweeps, including the final unchanged one
  std::vector<ClosureStep> per_pass;
  IntegerSet final;
};

inline constexpr std::uint64_t kClosureMaxPasses = 10'000;

namespace detail {

inline std::uint64_t set_hash(const std::vector<Nat>& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Nat x : v) {
    for (int shift = 0; shift < 128; shift += 8) {
      h ^= static_cast<std::uint8_t>(x >> shift);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace detail

inline std::uint64_t exponent_mass(const std::vector<Nat>& v) {
  std::uint64_t mass = 0;
  for (Nat m : v) {
    const auto fm = factorize(m);
    for (const auto& f : fm.factors()) mass += f.exponent;
  }
  return mass;
}

inline ClosureTrace closure_transform(const IntegerSet& set) {
  if (set.empty()) throw DomainError("closure_transform: set must be nonempty");
  ClosureTrace trace;
  std::vector<Nat> cur(set.begin(), set.end());
  for (std::uint64_t sweep = 1;; ++sweep) {
    if (sweep > kClosureMaxPasses) throw InternalError("closure_transform: no fixpoint after pass limit");
    std::vector<Nat> primes;
    for (Nat m : cur) {
      const auto fm = factorize(m);
      for (const auto& f : fm.factors()) primes.push_back(f.prime);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    bool changed = false;
    for (Nat p : primes) {
      std::map<Nat, std::size_t> classes;  // p-free part -> class size
      for (Nat m : cur) {
        while (m % p == 0) m /= p;
        ++classes[m];
      }
      std::vector<Nat> next;
      next.reserve(cur.size());
      for (const auto& [rep, size] : classes) {
        Nat v = rep;
        for (std::size_t i = 0; i < size; ++i) {
          next.push_back(v);
          if (i + 1 < size && !checked_mul(v, p, v)) {
            throw ResourceError("closure_transform: element exceeds 128-bit range");
          }
        }
      }
      std::sort(next.begin(), next.end());
      std::size_t moved = 0;
      {
        std::vector<Nat> diff;
        std::set_difference(cur.begin(), cur.end(), next.begin(), next.end(), std::back_inserter(diff));
        moved = diff.size();
      }
      cur = std::move(next);
      trace.per_pass.push_back({sweep, p, classes.size(), moved, detail::set_hash(cur), exponent_mass(cur)});
      if (moved != 0) changed = true;
    }
    trace.passes = sweep;
    if (!changed) break;
  }
  trace.final = IntegerSet::from_sorted(std::move(cur));
  return trace;
}

struct ClosureInequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// S(M) against the 2^omega-weighted sum over the transformed set.
inline ClosureInequalityCheck closure_inequality_check(const IntegerSet& set, AlphaParam alpha) {
  ClosureInequalityCheck out;
  out.lhs = gcd_sum_naive(set, alpha).value;
  out.rhs = weighted_gcd_sum_2omega(closure_transform(set).final, alpha).value;
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

struct DivideOutCheck {
  std::size_t quotient_size = 0;
  double bound = 0.0;
  bool pass = false;
};

/// |(1/p) M| <= |M| / 2 for divisor-closed squarefree M containing the prime p.
inline DivideOutCheck divideout_check(const IntegerSet& set, Nat p) {
  if (p < 2) throw DomainError("divideout_check: p must be prime");
  const auto pf = factorize(p);
  if (pf.factors().size() != 1 || pf.factors()[0].exponent != 1) {
    throw DomainError("divideout_check: p = " + to_string(p) + " is not prime");
  }
  if (!set.contains(p)) throw DomainError("divideout_check: p = " + to_string(p) + " is not in the set");
  for (Nat m : set) {
    if (!factorize(m).is_squarefree()) {
      throw DomainError("divideout_check: element " + to_string(m) + " is not squarefree");
    }
  }
  if (!is_divisor_closed(set)) throw DomainError("divideout_check: set is not divisor closed");
  DivideOutCheck out;
  for (Nat m : set) {
    if (m % p == 0) ++out.quotient_size;
  }
  out.bound = static_cast<double>(set.size()) / 2.0;
  out.pass = static_cast<double>(out.quotient_size) <= out.bound;
  return out;
}

}  // namespace gcdsum
