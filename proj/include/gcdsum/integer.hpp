#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gcdsum {

/// Exact unsigned integer used for set elements, primorials and divisors.
using Nat = unsigned __int128;

inline constexpr Nat kNatMax = ~Nat{0};

inline std::string to_string(Nat v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

/// Parses a plain decimal string (no sign, no whitespace).
inline std::optional<Nat> parse_nat(std::string_view s) {
  if (s.empty()) return std::nullopt;
  Nat v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return std::nullopt;
    const auto digit = static_cast<unsigned>(ch - '0');
    if (v > (kNatMax - digit) / 10) return std::nullopt;
    v = v * 10 + digit;
  }
  return v;
}

inline bool fits_u64(Nat v) { return (v >> 64) == 0; }

/// Returns false on overflow; `out` is unspecified then.
inline bool checked_mul(Nat a, Nat b, Nat& out) {
  if (a != 0 && b > kNatMax / a) return false;
  out = a * b;
  return true;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  do {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

inline Nat gcd(Nat a, Nat b) {
  while (!(fits_u64(a) && fits_u64(b))) {
    if (b == 0) return a;
    Nat r = a % b;
    a = b;
    b = r;
  }
  return gcd_u64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
}

inline double to_double(Nat v) { return static_cast<double>(v); }

/// Natural log, accurate to a few ulps over the whole 128-bit range.
inline double log_nat(Nat v) {
  if (fits_u64(v)) return std::log(static_cast<double>(static_cast<std::uint64_t>(v)));
  return std::log(static_cast<long double>(v));
}

/// Bits needed to represent v.
inline unsigned bit_width(Nat v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 64 + static_cast<unsigned>(std::bit_width(hi));
  return static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(v)));
}

/// Floor of the cube root.
inline std::uint64_t icbrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(n)));
  while (r > 0 && static_cast<Nat>(r) * r * r > n) --r;
  while (static_cast<Nat>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace gcdsum
