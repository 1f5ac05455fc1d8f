#pragma once

#include <cstdint>
#include <random>

namespace nilreg {

// Reproducible generator: mt19937_64 core (bit-exact by the standard) with
// explicit rejection-based bounded draws, since std distributions are not
// specified across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % bound;
  }

  double unit() { return (eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace nilreg
