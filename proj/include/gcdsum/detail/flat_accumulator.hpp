#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gcdsum/integer.hpp"

namespace gcdsum::detail {

/// Open-addressing map from divisor key to (running sum, kernel weight).
/// Iteration follows first-insertion order, which keeps reductions
/// deterministic. clear() only touches occupied slots.
class FlatAccumulator {
 public:
  struct Entry {
    Nat key;
    double sum;
    double weight;
  };

  explicit FlatAccumulator(std::size_t initial_capacity = 1024) { rehash(round_up(initial_capacity)); }

  /// Adds `x` to the entry for `key`, creating it with `weight` if absent.
  void add(Nat key, double weight, double x) {
    if ((entries_.size() + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
    std::size_t i = hash(key) & mask_;
    for (;;) {
      const std::uint32_t s = slots_[i];
      if (s == kEmpty) {
        slots_[i] = static_cast<std::uint32_t>(entries_.size());
        used_.push_back(i);
        entries_.push_back({key, x, weight});
        return;
      }
      if (entries_[s].key == key) {
        entries_[s].sum += x;
        return;
      }
      i = (i + 1) & mask_;
    }
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  void clear() {
    for (std::size_t i : used_) slots_[i] = kEmpty;
    used_.clear();
    entries_.clear();
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  static std::size_t round_up(std::size_t n) {
    std::size_t c = 16;
    while (c < n) c *= 2;
    return c;
  }

  static std::uint64_t hash(Nat key) {
    std::uint64_t x = static_cast<std::uint64_t>(key) ^ (static_cast<std::uint64_t>(key >> 64) * 0x9e3779b97f4a7c15ULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, kEmpty);
    mask_ = capacity - 1;
    used_.clear();
    for (std::size_t e = 0; e < entries_.size(); ++e) {
      std::size_t i = hash(entries_[e].key) & mask_;
      while (slots_[i] != kEmpty) i = (i + 1) & mask_;
      slots_[i] = static_cast<std::uint32_t>(e);
      used_.push_back(i);
    }
  }

  std::vector<std::uint32_t> slots_;
  std::vector<std::size_t> used_;
  std::vector<Entry> entries_;
  std::size_t mask_ = 0;
};

}  // namespace gcdsum::detail
