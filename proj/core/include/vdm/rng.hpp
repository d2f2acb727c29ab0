#pragma once

#include <cstdint>
#include <random>

namespace vdm {

/// Seeded generator with fully specified draws (std::mt19937_64 plus modulo
/// reduction), so identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t raw() { return g_(); }
  std::uint64_t below(std::uint64_t k) { return k == 0 ? 0 : g_() % k; }
  long int_in(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 g_;
};

}  // namespace vdm
