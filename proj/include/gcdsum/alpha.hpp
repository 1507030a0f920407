#pragma once

#include <cmath>
#include <string>

#include "gcdsum/errors.hpp"

namespace gcdsum {

/// The exponent alpha of the GCD sums, restricted to the open interval (0, 1/2).
class AlphaParam {
 public:
  explicit AlphaParam(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 0.5) || !std::isfinite(alpha)) {
      throw DomainError("alpha must lie strictly between 0 and 1/2, got " + std::to_string(alpha));
    }
  }

  double value() const noexcept { return alpha_; }
  operator double() const noexcept { return alpha_; }

 private:
  double alpha_;
};

}  // namespace gcdsum
