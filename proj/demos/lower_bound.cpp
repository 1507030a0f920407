// Builds the smooth-number construction for a few N and prints how its
// normalized GCD sum compares with N^{2-2a} (log N)^{2a}.
#include <cstdio>

#include "gcdsum/gcdsum.hpp"

int main() {
  const gcdsum::AlphaParam alpha(0.25);
  std::printf("%8s %10s %8s %14s %10s\n", "N", "|M|", "|D|", "sum", "ratio");
  for (std::uint64_t n : {1'000ULL, 10'000ULL, 100'000ULL}) {
    const gcdsum::ConstructionParams p{n, 0.3, alpha};
    const auto out = gcdsum::build_construction(p);
    const auto rep = gcdsum::lower_bound_report(out, p);
    std::printf("%8llu %10zu %8zu %14.6g %10.4f%s\n", static_cast<unsigned long long>(n), out.M_set.size(),
                out.D.size(), rep.sum, rep.ratio, out.shortfall ? "  (shortfall)" : "");
  }
}
