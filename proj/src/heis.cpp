#include "nilreg/heis.hpp"

#include <algorithm>

#include "nilreg/common.hpp"

namespace nilreg {

namespace {

inline int mult_of(int x, int y) {
  if (x > 0 && y > 0) return 4;
  if (x > 0 || y > 0) return 2;
  return 1;
}

}  // namespace

std::size_t HeisBallOracle::Layer::cell(int x, int y) const {
  // quadrant triangle, x-major: row x holds y = 0..n-x
  return static_cast<std::size_t>(x) * (n + 1) -
         static_cast<std::size_t>(x) * (x - 1) / 2 + y;
}

const HeisBallOracle::Layer& HeisBallOracle::layer(int n) const {
  return layers_.at(static_cast<std::size_t>(n));
}

std::array<std::int64_t, 2> HeisBallOracle::range_in(const Layer& L,
                                                     std::int64_t x,
                                                     std::int64_t y) const {
  const std::int64_t ax = x < 0 ? -x : x, ay = y < 0 ? -y : y;
  const std::size_t c = L.cell(static_cast<int>(ax), static_cast<int>(ay));
  std::int64_t lo = L.wmin[c], hi = L.wmax[c];
  // a -> a^-1 and b -> b^-1 are automorphisms sending (x,y,w) to
  // (-x,y,-w) and (x,-y,-w); an odd number of sign flips negates the range
  if ((x < 0) != (y < 0)) return {-hi, -lo};
  return {lo, hi};
}

HeisBallOracle::HeisBallOracle(int max_radius) : max_radius_(max_radius) {
  if (max_radius < 0) fail(ErrorKind::Precondition, "HeisBallOracle: negative radius");
  layers_.reserve(max_radius + 1);
  counts_.reserve(max_radius + 1);
  cdf_.resize(max_radius + 1);

  Layer l0;
  l0.n = 0;
  l0.wmin.assign(1, 0);
  l0.wmax.assign(1, 0);
  layers_.push_back(std::move(l0));
  counts_.push_back(1);

  for (int n = 1; n <= max_radius; ++n) {
    const Layer& prev = layers_.back();
    Layer L;
    L.n = n;
    const std::size_t cells = static_cast<std::size_t>(n + 1) * (n + 2) / 2;
    L.wmin.assign(cells, 0);
    L.wmax.assign(cells, 0);
    std::uint64_t total = 0;
    for (int x = 0; x <= n; ++x)
      for (int y = 0; y + x <= n; ++y) {
        std::int64_t lo = INT64_MAX, hi = INT64_MIN;
        auto feed = [&](std::int64_t px, std::int64_t py, std::int64_t shift) {
          if (std::abs(px) + std::abs(py) > n - 1) return;
          auto r = range_in(prev, px, py);
          lo = std::min(lo, r[0] + shift);
          hi = std::max(hi, r[1] + shift);
        };
        feed(x, y, 0);        // e
        feed(x - 1, y, 0);    // last letter a
        feed(x + 1, y, 0);    // last letter a^-1
        feed(x, y - 1, x);    // last letter b
        feed(x, y + 1, -x);   // last letter b^-1
        const std::size_t c = L.cell(x, y);
        L.wmin[c] = static_cast<std::int32_t>(lo);
        L.wmax[c] = static_cast<std::int32_t>(hi);
        total += static_cast<std::uint64_t>(mult_of(x, y)) *
                 static_cast<std::uint64_t>(hi - lo + 1);
      }
    layers_.push_back(std::move(L));
    counts_.push_back(total);
  }
}

std::uint64_t HeisBallOracle::count(int n) const {
  return counts_.at(static_cast<std::size_t>(n));
}

std::array<std::int64_t, 2> HeisBallOracle::range(int n, std::int64_t x,
                                                  std::int64_t y) const {
  return range_in(layer(n), x, y);
}

bool HeisBallOracle::contains(int n, std::int64_t x, std::int64_t y,
                              std::int64_t w) const {
  if (std::abs(x) + std::abs(y) > n) return false;
  auto r = range_in(layer(n), x, y);
  return w >= r[0] && w <= r[1];
}

std::array<std::int64_t, 3> HeisBallOracle::sample(int n, Rng& rng) const {
  const Layer& L = layer(n);
  auto& cdf = cdf_[n];
  if (cdf.empty()) {
    cdf.reserve(L.wmin.size());
    std::uint64_t acc = 0;
    for (int x = 0; x <= n; ++x)
      for (int y = 0; y + x <= n; ++y) {
        const std::size_t c = L.cell(x, y);
        acc += static_cast<std::uint64_t>(mult_of(x, y)) *
               static_cast<std::uint64_t>(L.wmax[c] - L.wmin[c] + 1);
        cdf.push_back(acc);
      }
  }
  const std::uint64_t r = rng.below(count(n));
  const std::size_t c =
      std::upper_bound(cdf.begin(), cdf.end(), r) - cdf.begin();
  // invert the x-major cell index
  int x = 0;
  std::size_t base = 0;
  while (base + static_cast<std::size_t>(n - x + 1) <= c)
    base += static_cast<std::size_t>(n - (x++) + 1);
  const int y = static_cast<int>(c - base);
  const std::uint64_t local = r - (c == 0 ? 0 : cdf[c - 1]);
  const std::uint64_t cnt = static_cast<std::uint64_t>(L.wmax[c] - L.wmin[c] + 1);
  const int variant = static_cast<int>(local / cnt);
  const std::int64_t off = static_cast<std::int64_t>(local % cnt);

  std::int64_t sx = x, sy = y;
  bool flip = false;  // odd number of coordinate sign flips negates w-range
  if (x > 0 && y > 0) {
    if (variant == 1) sx = -x, flip = true;
    if (variant == 2) sy = -y, flip = true;
    if (variant == 3) sx = -x, sy = -y;
  } else if (variant == 1) {
    if (x > 0) sx = -x; else sy = -y;
    flip = true;
  }
  const std::int64_t w =
      flip ? -static_cast<std::int64_t>(L.wmax[c]) + off : L.wmin[c] + off;
  return {sx, sy, w};
}

std::vector<HeisBallOracle::Move> HeisBallOracle::word(int n, std::int64_t x,
                                                       std::int64_t y,
                                                       std::int64_t w) const {
  if (!contains(n, x, y, w))
    fail(ErrorKind::Lookup, "HeisBallOracle::word: element outside B_n");
  std::vector<Move> out(static_cast<std::size_t>(n), E);
  std::int64_t cx = x, cy = y, cw = w;
  for (int k = n; k >= 1; --k) {
    struct Pred {
      Move m;
      std::int64_t px, py, pw;
    };
    const Pred preds[5] = {
        {E, cx, cy, cw},
        {APlus, cx - 1, cy, cw},
        {AMinus, cx + 1, cy, cw},
        {BPlus, cx, cy - 1, cw - cx},
        {BMinus, cx, cy + 1, cw + cx},
    };
    bool found = false;
    for (const auto& p : preds)
      if (contains(k - 1, p.px, p.py, p.pw)) {
        out[k - 1] = p.m;
        cx = p.px;
        cy = p.py;
        cw = p.pw;
        found = true;
        break;
      }
    if (!found)
      fail(ErrorKind::Structural, "HeisBallOracle::word: descent failed");
  }
  if (cx != 0 || cy != 0 || cw != 0)
    fail(ErrorKind::Structural, "HeisBallOracle::word: descent did not reach e");
  return out;
}

}  // namespace nilreg
