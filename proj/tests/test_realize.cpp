#include <doctest.h>

#include <cmath>

#include "nilreg/growth.hpp"
#include "nilreg/lengths.hpp"
#include "nilreg/realize.hpp"
#include "test_util.hpp"

using namespace nilreg;

namespace {

RealizeResult small_system(int R = 4, double alpha = 0.75, double j_mult = 1.0) {
  const GroupSpec& n3 = cat().group("N3");
  RealizeParams rp;
  rp.alpha = alpha;
  rp.R = R;
  rp.J_mult = j_mult;
  return build_system(n3, n3.subgroup("K_ac"), rp);
}

}  // namespace

TEST_CASE("cocycle values") {
  const GroupSpec& n3 = cat().group("N3");
  const SubgroupSpec& kac = n3.subgroup("K_ac");
  SchreierBall sb = schreier_ball(n3, kac, n3.word_gens, 13);

  // g in K at the base coset: l(g, [e]) = pi(g)
  CHECK(cocycle(n3, kac, sb, n3.element("c"), 0) == 1);
  CHECK(cocycle(n3, kac, sb, n3.element("a"), 0) == 0);
  GroupElement ac3 = mul(n3.element("a"), pow(n3.element("c"), Int(3)));
  CHECK(cocycle(n3, kac, sb, ac3, 0) == 3);

  // cocycle inverse relation l(g^-1, g(v)) = -l(g, v)
  for (std::uint32_t v = 0; v < 9; ++v)
    for (const char* name : {"a", "b"}) {
      const GroupElement g = n3.element(name);
      auto gv = sb.coset_of(mul(g, sb.reps[v]));
      REQUIRE(gv.has_value());
      CHECK(cocycle(n3, kac, sb, inverse(g), *gv) == -cocycle(n3, kac, sb, g, v));
    }

  // |l(f, v)| over ||v|| <= 12 fits degree d' <= 1
  std::int64_t worst = 0;
  for (std::uint32_t v = 0; v < sb.size(); ++v)
    if (sb.dist[v] <= 12)
      for (const char* name : {"a", "b"}) {
        const Int l = cocycle(n3, kac, sb, n3.element(name), v);
        worst = std::max(worst, std::abs(to_i64(l)));
      }
  CHECK(worst <= 12);  // linear in the radius
}

TEST_CASE("cocycle detects a corrupted Schreier table") {
  const GroupSpec& n3 = cat().group("N3");
  const SubgroupSpec& kac = n3.subgroup("K_ac");
  SchreierBall sb = schreier_ball(n3, kac, n3.word_gens, 4);
  // replace a representative by an element of a different coset
  SchreierBall bad = sb;
  bad.reps[2] = mul(bad.reps[1], n3.element("b"));
  bool threw = false;
  try {
    for (std::uint32_t v = 0; v < 5; ++v)
      cocycle(n3, kac, bad, n3.element("b"), v);
  } catch (const Error& e) {
    threw = e.kind() == ErrorKind::Structural;
  }
  CHECK(threw);
}

TEST_CASE("smallest system: one coset, sigma shifts only") {
  const GroupSpec& n3 = cat().group("N3");
  RealizeParams rp;
  rp.alpha = 0.75;
  rp.R = 0;
  rp.J = 4;
  RealizeResult rr = build_system(n3, n3.subgroup("K_ac"), rp);
  const IntervalSystem& sys = rr.system;
  CHECK(sys.cosets() == 1);
  CHECK(sys.pts[0].size() == 10);  // 9 intervals
  CHECK_FALSE(sys.core_complete);

  ActionEvaluator ev_c = make_evaluator(sys, n3.element("c"));
  CHECK(ev_c.shift[0] == 1);
  // interior interval endpoints shift by one index
  const double x = sys.cell(0, 0).left;
  CHECK(ev_c.eval(x) == sys.cell(0, 1).left);
}

TEST_CASE("layout lengths and order") {
  RealizeResult rr = small_system(4);
  const IntervalSystem& sys = rr.system;
  CHECK(sys.cosets() == 9);
  CHECK(sys.core_complete);

  // total length bounded by the profile sum, exactly by construction
  double profile = 0;
  for (std::size_t p = 0; p < sys.cosets(); ++p)
    profile += std::pow(sys.C0 + sys.sball.dist[sys.order[p]], -1.0 / sys.alpha);
  CHECK(sys.total <= profile * (1 + 1e-12));

  // truncated blocks are shorter than the untruncated interval lengths
  for (std::size_t p = 0; p < sys.cosets(); ++p) {
    CHECK(sys.coset_len(p) <
          std::pow(sys.C0 + sys.sball.dist[sys.order[p]], -1.0 / sys.alpha) *
              (1 + 1e-9));
    if (p > 0) CHECK(sys.pts[p].front() == sys.pts[p - 1].back());
  }

  // line order follows the catalog order functional (the b exponent)
  for (std::size_t p = 0; p + 1 < sys.cosets(); ++p) {
    const Int k1 = sys.sball.keys[sys.order[p]].factors[0](1, 2);
    const Int k2 = sys.sball.keys[sys.order[p + 1]].factors[0](1, 2);
    CHECK(k1 < k2);
  }
}

TEST_CASE("evaluators are C1 across interior endpoints and compose") {
  RealizeResult rr = small_system(4);
  const IntervalSystem& sys = rr.system;
  const GroupSpec& n3 = cat().group("N3");

  for (const ActionEvaluator& ev : rr.generators)
    for (std::size_t p = 0; p < sys.cosets(); ++p) {
      if (ev.target[p] < 0) continue;
      const std::int64_t l = ev.shift[p];
      for (std::int64_t j = -sys.J + 2 + std::max<std::int64_t>(0, -l);
           j <= sys.J - std::max<std::int64_t>(0, l); j += 7) {
        const double x = sys.cell(p, j).left;
        const double dl = ev.deriv_side(x, -1), dr = ev.deriv_side(x, +1);
        CHECK(std::abs(dl - dr) <= 1e-8 * dr);
      }
    }

  // evaluator(b) o evaluator(a) agrees with evaluator(b*a) on interior points
  ActionEvaluator ev_a = make_evaluator(sys, n3.element("a"));
  ActionEvaluator ev_b = make_evaluator(sys, n3.element("b"));
  ActionEvaluator ev_ba = make_evaluator(sys, mul(n3.element("b"), n3.element("a")));
  const std::size_t p0 = sys.pos_of[0];
  for (int k = -20; k <= 20; ++k) {
    const Interval I = sys.cell(p0, k);
    const double x = I.left + 0.37 * I.len();
    if (ev_a.frozen_at(x)) continue;
    const double y1 = ev_b.eval(ev_a.eval(x));
    const double y2 = ev_ba.eval(x);
    CHECK(y1 == doctest::Approx(y2).epsilon(1e-8));
  }
}

TEST_CASE("derivative tends to 1 at the ends of each I_v") {
  // with J = 4 max A_v the outermost realized derivatives sit within 5%
  RealizeResult rr = small_system(2, 0.75, 4.0);
  const IntervalSystem& sys = rr.system;
  for (const ActionEvaluator& ev : rr.generators)
    for (std::size_t p = 0; p < sys.cosets(); ++p) {
      if (ev.target[p] < 0) continue;
      const std::int64_t l = ev.shift[p];
      const std::int64_t edge = sys.J - std::max<std::int64_t>(1, l) - 1;
      for (std::int64_t j : {-edge, edge}) {
        const double d = ev.deriv_side(sys.cell(p, j).left, +1);
        CHECK(std::abs(d - 1.0) < 0.05);
      }
    }
}

TEST_CASE("holder estimates") {
  RealizeResult rr = small_system(6);
  const IntervalSystem& sys = rr.system;
  const GroupSpec& n3 = cat().group("N3");

  SUBCASE("affine pieces of the frozen map give zero") {
    ActionEvaluator ev_e = make_evaluator(sys, n3.identity());
    HolderEstimate est = holder_constant(ev_e, sys.pos_of[0], 0.75);
    CHECK(est.kappa_alpha == 0.0);
    CHECK(est.distortion == 0.0);
  }

  SUBCASE("kappa within a factor band of the closed-form bound") {
    ActionEvaluator ev_b = make_evaluator(sys, n3.element("b"));
    double lo = 1e300, hi = 0;
    for (std::size_t p = 0; p < sys.cosets(); ++p) {
      if (ev_b.target[p] < 0) continue;
      if (sys.sball.dist[sys.order[p]] > sys.safe_radius) continue;
      HolderEstimate est = holder_constant(ev_b, p, 0.75);
      const double ratio = est.kappa_alpha / est.formula_bound;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    // constants fitted once: the ratio band stays within a factor 4
    CHECK(hi <= 4 * lo);
  }

  SUBCASE("single tsuboi map lower bound") {
    // |J|/|I| = 2 and |J'|/|I'| = 1 forces kappa >= log 2 / |I|^alpha
    Interval Ip{0, 1}, I{1, 2}, Jp{5, 6}, J{6, 8};
    TsuboiMap m = tsuboi_map(Ip, I, Jp, J);
    double kappa = 0;
    for (int i = 0; i <= 64; ++i)
      for (int k = i + 1; k <= 64; ++k) {
        const double x = I.left + I.len() * i / 64.0;
        const double y = I.left + I.len() * k / 64.0;
        kappa = std::max(kappa, std::abs(std::log(m.deriv(y)) - std::log(m.deriv(x))) /
                                    std::pow(y - x, 0.75));
      }
    CHECK(kappa >= std::log(2.0) / std::pow(I.len(), 0.75) * 0.999);
  }
}

TEST_CASE("derivative growth of the central element") {
  RealizeResult rr = small_system(4, 0.75, 4.0);
  const IntervalSystem& sys = rr.system;
  ActionEvaluator ev_c = make_evaluator(sys, cat().group("N3").element("c"));
  auto sup = derivative_growth(ev_c, 60);
  CHECK(sup[0] == 1.0);
  for (int m = 1; m <= 60; ++m) CHECK(sup[m] >= sup[m - 1] * 0.999);
  CHECK(sup[60] > sup[10]);
}

TEST_CASE("blow-up formula diverges monotonically above critical") {
  double prev = 0;
  for (int r = 1; r <= 2000; ++r) {
    const double v = alpha_lower_formula(2.0, 0.75, 1.25, r);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(prev >= 50 * alpha_lower_formula(2.0, 0.75, 1.25, 1));
}

TEST_CASE("configuration errors") {
  const GroupSpec& n3 = cat().group("N3");
  RealizeParams rp;
  rp.alpha = 0.75;
  rp.R = 4;
  rp.eps = 0.95;  // violates 1/(alpha eps) > d' + 1
  CHECK_THROWS_AS(build_system(n3, n3.subgroup("K_ac"), rp), Error);

  RealizeParams rp2;
  rp2.alpha = 1.5;
  CHECK_THROWS_AS(build_system(n3, n3.subgroup("K_ac"), rp2), Error);

  // a subgroup without pi cannot anchor a system
  CHECK_THROWS_AS(build_system(n3, n3.subgroup("H_a"), RealizeParams{}), Error);
}
