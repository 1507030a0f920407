// GCD sums of {1..N} by both methods, and the matching spectral estimate.
#include <cstdio>
#include <cstdlib>

#include "gcdsum/gcdsum.hpp"

int main(int argc, char** argv) {
  const std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000;
  const gcdsum::AlphaParam alpha(argc > 2 ? std::atof(argv[2]) : 0.25);

  const auto set = gcdsum::IntegerSet::range(n);
  const auto naive = gcdsum::gcd_sum_naive(set, alpha);
  const auto fast = gcdsum::gcd_sum_fast(set, alpha);
  const auto spec = gcdsum::power_iteration(n, alpha);

  std::printf("N = %llu, alpha = %g\n", static_cast<unsigned long long>(n), alpha.value());
  std::printf("naive  %.12g\n", naive.value);
  std::printf("fast   %.12g  (est. error %.2g)\n", fast.value, fast.est_abs_error);
  std::printf("F(N)   %.12g\n", fast.value / static_cast<double>(n));
  std::printf("lambda %.12g  after %llu iterations\n", spec.lambda_est,
              static_cast<unsigned long long>(spec.iterations));
}
