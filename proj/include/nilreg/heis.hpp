#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nilreg/rng.hpp"

namespace nilreg {

// Exact ball oracle for the 3x3 unitriangular group over Z with the standard
// two-generator set {a = E12, b = E23} (plus inverses and e).
//
// Elements are coordinates (x, y, w) = (a12, a23, a13). For a fixed
// abelianized part (x, y), the a13 values reachable within n letters form an
// integer interval; the oracle keeps per-layer min/max tables (one quadrant,
// the rest by the a -> a^-1 / b -> b^-1 symmetries), which yields exact ball
// counts, membership, uniform sampling and bounded-length words at radii far
// beyond what an enumerated store can hold.
class HeisBallOracle {
 public:
  enum Move : int { E = 0, APlus, AMinus, BPlus, BMinus };

  explicit HeisBallOracle(int max_radius);

  int max_radius() const { return max_radius_; }
  std::uint64_t count(int n) const;
  bool contains(int n, std::int64_t x, std::int64_t y, std::int64_t w) const;
  // [w_min, w_max] of reachable a13 at (x, y) within n letters
  std::array<std::int64_t, 2> range(int n, std::int64_t x, std::int64_t y) const;

  // Exact uniform draw from B_n.
  std::array<std::int64_t, 3> sample(int n, Rng& rng) const;

  // Exactly n moves whose left-to-right product is (x, y, w); deterministic.
  std::vector<Move> word(int n, std::int64_t x, std::int64_t y,
                         std::int64_t w) const;

 private:
  struct Layer {
    int n = 0;
    std::vector<std::int32_t> wmin, wmax;  // quadrant x,y >= 0, x + y <= n
    std::size_t cell(int x, int y) const;
  };

  const Layer& layer(int n) const;
  std::array<std::int64_t, 2> range_in(const Layer& L, std::int64_t x,
                                       std::int64_t y) const;

  int max_radius_;
  std::vector<Layer> layers_;
  mutable std::vector<std::vector<std::uint64_t>> cdf_;  // per-radius cell prefix
  std::vector<std::uint64_t> counts_;
};

}  // namespace nilreg
