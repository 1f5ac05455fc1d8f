#include <doctest.h>

#include "nilreg/ball.hpp"
#include "nilreg/growth.hpp"
#include "nilreg/schreier.hpp"
#include "test_util.hpp"

using namespace nilreg;

TEST_CASE("formula degrees") {
  CHECK(bass_guivarch(cat().group("Z1")) == 1);
  CHECK(bass_guivarch(cat().group("Z2")) == 2);
  CHECK(bass_guivarch(cat().group("Z3")) == 3);
  CHECK(bass_guivarch(cat().group("Z4")) == 4);
  CHECK(bass_guivarch(cat().group("N3")) == 4);
  CHECK(bass_guivarch(cat().group("N4")) == 10);
  CHECK(bass_guivarch(cat().group("N4G")) == 7);
  CHECK(bass_guivarch(cat().group("H5")) == 6);
  CHECK(bass_guivarch(cat().group("N3xN3")) == 8);
}

TEST_CASE("relative and Schreier degrees") {
  const GroupSpec& n3 = cat().group("N3");
  CHECK(relative_degree(n3, n3.subgroup("Zcenter")) == 2);
  CHECK(relative_degree(n3, n3.subgroup("trivial")) == 0);
  CHECK(relative_degree(n3, n3.subgroup("K_ac")) == 3);
  CHECK(schreier_degree(n3, n3.subgroup("Zcenter")) == 2);
  CHECK(schreier_degree(n3, n3.subgroup("K_ac")) == 1);
  CHECK(schreier_degree(n3, n3.subgroup("full")) == 0);

  auto ranks = relative_ranks(n3, n3.subgroup("Zcenter"));
  CHECK(ranks == std::vector<int>{0, 1});

  const GroupSpec& n4g = cat().group("N4G");
  CHECK(schreier_degree(n4g, n4g.subgroup("K")) == 1);

  const GroupSpec& n4 = cat().group("N4");
  CHECK(schreier_degree(n4, n4.subgroup("K_ex74")) == 2);
  CHECK(schreier_degree(n4, n4.subgroup("K_G2")) == 3);
}

TEST_CASE("degree identity over the catalog") {
  for (const auto& spec : cat().groups)
    for (const auto& sub : spec.subgroups)
      if (sub.hj_gens)
        CHECK(schreier_degree(spec, sub) + relative_degree(spec, sub) ==
              bass_guivarch(spec));
}

TEST_CASE("relative degree is monotone in the generator lists") {
  const GroupSpec& n3 = cat().group("N3");
  SubgroupSpec grown = n3.subgroup("Zcenter");
  const int before = relative_degree(n3, grown);
  (*grown.hj_gens)[0].push_back("a");  // enlarge H_1
  CHECK(relative_degree(n3, grown) >= before);

  SubgroupSpec broken = n3.subgroup("Zcenter");
  (*broken.hj_gens)[1].push_back("a");  // a is not in G_2
  CHECK_THROWS_AS(relative_degree(n3, broken), Error);
}

TEST_CASE("fit_exponent") {
  std::vector<std::uint64_t> quad(33, 0);
  for (int n = 1; n <= 32; ++n) quad[n] = static_cast<std::uint64_t>(n) * n;
  CHECK(fit_exponent(quad, {4, 32}) == doctest::Approx(2.0).epsilon(1e-9));

  std::vector<std::uint64_t> flat(33, 7);
  CHECK(fit_exponent(flat, {4, 32}) == doctest::Approx(0.0));

  CHECK_THROWS_AS(fit_exponent(quad, {4, 5}), Error);
  CHECK_THROWS_AS(fit_exponent(quad, {30, 40}), Error);
}

TEST_CASE("fitted exponents shadow the formulas at small radius") {
  const GroupSpec& n3 = cat().group("N3");
  BallRecord b = ball(n3, n3.word_gens, 14);
  const double fit = fit_exponent(b.counts, default_window(14));
  CHECK(fit == doctest::Approx(4.0).epsilon(0.125));  // 4 ± 0.5 at this radius

  SchreierBall s = schreier_ball(n3, n3.subgroup("K_ac"), n3.word_gens, 14);
  CHECK(fit_exponent(s.counts, default_window(14)) ==
        doctest::Approx(1.0).epsilon(0.2));

  GrowthReport rep = make_report("N3", "", "ball", 4, b.counts,
                                 default_window(14), 0.5);
  CHECK(rep.match);
  CHECK(rep.to_json().find("\"verdict\":\"match\"") != std::string::npos);
}
