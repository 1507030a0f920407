#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>

namespace gcdsum {

/// Neumaier's variant of Kahan summation. Also tracks sum|x| so that a
/// rigorous-style error estimate can be reported alongside the value.
template <std::floating_point T>
class CompensatedSum {
 public:
  CompensatedSum() = default;

  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_sum_ += std::abs(x);
    ++count_;
  }

  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }

  /// Folds another accumulator into this one. Merging partial sums in a
  /// fixed order keeps reductions deterministic.
  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
    count_ += other.count_ - 2;
    abs_sum_ += other.abs_sum_ - std::abs(other.sum_) - std::abs(other.comp_);
  }

  T value() const { return sum_ + comp_; }
  T abs_sum() const { return abs_sum_; }
  std::size_t count() const { return count_; }

  /// |computed - exact| <= (2u + n u^2) * sum|x| for the summation itself.
  T error_bound() const {
    constexpr T u = std::numeric_limits<T>::epsilon() / 2;
    return (2 * u + static_cast<T>(count_) * u * u) * abs_sum_;
  }

 private:
  T sum_{0};
  T comp_{0};
  T abs_sum_{0};
  std::size_t count_{0};
};

}  // namespace gcdsum
