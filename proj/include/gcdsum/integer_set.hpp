#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcdsum/errors.hpp"
#include "gcdsum/integer.hpp"

namespace gcdsum {

/// Finite set of distinct positive integers kept in ascending order.
class IntegerSet {
 public:
  IntegerSet() = default;

  /// Sorts and validates; rejects zero and duplicates.
  static IntegerSet from_unsorted(std::vector<Nat> values) {
    std::sort(values.begin(), values.end());
    return from_sorted(std::move(values));
  }

  /// Values must already be strictly increasing and positive.
  static IntegerSet from_sorted(std::vector<Nat> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == 0) throw DomainError("integer set elements must be positive");
      if (i > 0 && values[i - 1] >= values[i]) {
        throw DomainError("integer set elements must be distinct (duplicate " +
                          to_string(values[i]) + ")");
      }
    }
    IntegerSet s;
    s.elems_ = std::move(values);
    return s;
  }

  /// {1, ..., n}
  static IntegerSet range(std::uint64_t n) {
    std::vector<Nat> v(n);
    for (std::uint64_t i = 0; i < n; ++i) v[i] = i + 1;
    IntegerSet s;
    s.elems_ = std::move(v);
    return s;
  }

  std::span<const Nat> elems() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  Nat operator[](std::size_t i) const { return elems_[i]; }
  Nat max() const { return elems_.back(); }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }

  bool contains(Nat v) const { return std::binary_search(elems_.begin(), elems_.end(), v); }

  friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

 private:
  std::vector<Nat> elems_;
};

}  // namespace gcdsum
