#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vdm {

constexpr int kMaxGroundSet = 16;

/// A subset of [n] = {1, ..., n} stored as a bitmask. Bit i-1 holds
/// membership of element i. n is capped at 16 so tables indexed by all
/// subsets stay small.
struct Subset {
  std::uint32_t bits = 0;
  int n = 0;

  Subset() = default;
  Subset(std::uint32_t bits_, int n_) : bits(bits_), n(n_) {
    if (n_ < 0 || n_ > kMaxGroundSet) throw std::invalid_argument("Subset: n out of range");
    if (bits_ >= (1u << n_)) throw std::invalid_argument("Subset: bits out of range");
  }

  int size() const { return std::popcount(bits); }
  bool contains(int element) const { return (bits >> (element - 1)) & 1u; }

  Subset complement() const { return Subset(~bits & mask_all(n), n); }
  Subset sym_diff(const Subset& o) const { return Subset(bits ^ o.bits, n); }
  Subset with(int element) const { return Subset(bits | bit_of(element), n); }
  Subset toggled(int element) const { return Subset(bits ^ bit_of(element), n); }

  static std::uint32_t mask_all(int n) { return (n == 32) ? ~0u : ((1u << n) - 1u); }
  static std::uint32_t bit_of(int element) { return 1u << (element - 1); }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.bits == b.bits && a.n == b.n;
  }
  friend bool operator<(const Subset& a, const Subset& b) {
    return a.bits != b.bits ? a.bits < b.bits : a.n < b.n;
  }

  /// Sorted element string: "" for the empty set, "13" for {1,3} when
  /// n <= 9, comma-separated ("1,13") for larger ground sets.
  std::string to_string() const;
  static Subset from_string(const std::string& s, int n);
};

/// Elements of the set, ascending.
std::vector<int> subset_elements(std::uint32_t bits);

/// Hamming distance |S delta T|.
inline int hamming(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

}  // namespace vdm
