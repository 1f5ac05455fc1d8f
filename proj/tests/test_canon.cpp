#include <doctest.h>

#include "nilreg/ball.hpp"
#include "nilreg/canon.hpp"
#include "nilreg/rng.hpp"
#include "test_util.hpp"

using namespace nilreg;

TEST_CASE("peel examples") {
  const GroupSpec& n3 = cat().group("N3");

  CanonicalForm id_form = peel_canonical(n3, n3.identity());
  for (const auto& lvl : id_form.exps)
    for (const auto& a : lvl) CHECK(a == 0);

  // b then a, as written left to right
  GroupElement ba = mul(n3.element("b"), n3.element("a"));
  CanonicalForm f = peel_canonical(n3, ba);
  CHECK(f.exps[0][0] == 1);
  CHECK(f.exps[0][1] == 1);
  CHECK(reconstruct(n3, f) == ba);

  CanonicalForm c5 = peel_canonical(n3, pow(n3.element("c"), Int(5)));
  CHECK(c5.exps[0][0] == 0);
  CHECK(c5.exps[0][1] == 0);
  CHECK(c5.exps[1][0] == 5);
}

TEST_CASE("reconstruction round trip") {
  Rng rng(21);
  for (const char* name : {"N3", "N4", "H5", "N3xN3", "Z3"}) {
    const GroupSpec& spec = cat().group(name);
    GenSet fs = make_genset(spec, spec.word_gens);
    for (int trial = 0; trial < 40; ++trial) {
      GroupElement g = spec.identity();
      for (int i = 0; i < 10; ++i)
        g = mul(g, fs.elems[1 + rng.below(fs.elems.size() - 1)]);
      CanonicalForm f = peel_canonical(spec, g);
      CHECK(reconstruct(spec, f) == g);
      CHECK(peel_canonical(spec, reconstruct(spec, f)) == f);
    }
  }
}

TEST_CASE("weights") {
  const GroupSpec& n3 = cat().group("N3");
  CHECK(word_weight(n3, {}, 4, 4) == Rational(0));
  CHECK(word_weight(n3, {CanonLetter{1, 0, +1}}, 7, 4) == Rational(1, 7));
  // n level-1 letters weigh at most 1 + 1^2 = 2
  for (int n : {3, 8}) {
    CanonWord w;
    Rng rng(n);
    for (int i = 0; i < n; ++i)
      w.push_back(CanonLetter{1, static_cast<int>(rng.below(2)),
                              rng.below(2) ? +1 : -1});
    CHECK(word_weight(n3, w, n, 4) <= Rational(2));
  }
  // a single level-2 letter: wt = 1/(A n^2)
  CHECK(word_weight(n3, {CanonLetter{2, 0, +1}}, 3, 5) == Rational(1, 45));
}

TEST_CASE("sort against peel, exhaustive small balls") {
  for (const char* name : {"N3", "N4"}) {
    const GroupSpec& spec = cat().group(name);
    std::vector<std::string> graded_names;
    for (const auto& row : spec.graded)
      for (const auto& n : row) graded_names.push_back(n);
    BallRecord b = ball(spec, graded_names, 4);
    const Int A = 4 * std::max(1, commutator_expansion_bound(spec));
    for (const auto& g : b.elems) {
      CanonWord w = letters_of_geodesic(spec, b, g);
      SortResult res = sort_normalize(spec, w, A);
      CHECK(res.form == peel_canonical(spec, g));
    }
  }
}

TEST_CASE("sorted word of b,a") {
  const GroupSpec& n3 = cat().group("N3");
  CanonWord w{CanonLetter{1, 1, +1}, CanonLetter{1, 0, +1}};  // b a
  SortOptions opts;
  opts.want_trace = true;
  opts.n = 2;
  SortResult res = sort_normalize(n3, w, 4, opts);
  CHECK(res.form == peel_canonical(n3, word_product(n3, w)));
  CHECK(res.exchanges >= 1);
  for (std::size_t i = 1; i < res.trace.size(); ++i)
    CHECK(res.trace[i] <= res.trace[i - 1]);

  // already sorted: no exchanges, trace of length 1
  CanonWord sorted{CanonLetter{1, 0, +1}, CanonLetter{1, 1, +1}};
  SortResult res2 = sort_normalize(n3, sorted, 4, opts);
  CHECK(res2.exchanges == 0);
  CHECK(res2.trace.size() == 1);
}

TEST_CASE("weight trace is non-increasing on random words") {
  Rng rng(99);
  for (const char* name : {"N3", "N4"}) {
    const GroupSpec& spec = cat().group(name);
    const Int A = 4 * std::max(1, commutator_expansion_bound(spec));
    std::vector<CanonLetter> alphabet;
    for (int j = 1; j <= spec.nil_class; ++j)
      for (std::size_t i = 0; i < spec.graded[j - 1].size(); ++i)
        for (int s : {+1, -1})
          alphabet.push_back(CanonLetter{j, static_cast<int>(i), s});
    for (int trial = 0; trial < 60; ++trial) {
      const int len = 2 + static_cast<int>(rng.below(10));
      CanonWord w;
      for (int i = 0; i < len; ++i)
        w.push_back(alphabet[rng.below(alphabet.size())]);
      SortOptions opts;
      opts.want_trace = true;
      opts.n = len;  // keeps the initial weight at most 2
      REQUIRE(word_weight(spec, w, opts.n, A) <= Rational(2));
      SortResult res = sort_normalize(spec, w, A, opts);
      for (std::size_t i = 1; i < res.trace.size(); ++i)
        CHECK(res.trace[i] <= res.trace[i - 1]);
      CHECK(res.form == peel_canonical(spec, word_product(spec, w)));
    }
  }
}

TEST_CASE("exchange budget guard") {
  const GroupSpec& n4 = cat().group("N4");
  CanonWord w = parse_word(n4, "c b a c b a c b a");
  SortOptions opts;
  opts.step_budget = 2;
  CHECK_THROWS_AS(sort_normalize(n4, w, 100, opts), Error);
}

TEST_CASE("parse_word") {
  const GroupSpec& n4 = cat().group("N4");
  CanonWord w = parse_word(n4, "b a b a^-1");
  REQUIRE(w.size() == 4);
  CHECK(w[0] == CanonLetter{1, 1, +1});
  CHECK(w[1] == CanonLetter{1, 0, +1});
  CHECK(w[3] == CanonLetter{1, 0, -1});
  CHECK_THROWS_AS(parse_word(n4, "nosuch"), Error);
}

TEST_CASE("length bounds") {
  const GroupSpec& n3 = cat().group("N3");
  BallRecord b = ball(n3, n3.word_gens, 12);
  LengthBoundReport rep = length_bound_check(n3, b);
  // level 1 is 1-Lipschitz: sum of |a_{i,1}| never exceeds n
  for (int n = 1; n <= 12; ++n)
    CHECK(rep.max_abs[0][n] <= n);
  // level-2 ratio band over n in [4,12] stays within a factor 2
  double lo = 1e9, hi = 0;
  for (int n = 4; n <= 12; ++n) {
    lo = std::min(lo, rep.ratio[1][n]);
    hi = std::max(hi, rep.ratio[1][n]);
  }
  CHECK(hi <= 2 * lo);

  const GroupSpec& z3 = cat().group("Z3");
  BallRecord bz = ball(z3, z3.word_gens, 5);
  LengthBoundReport rz = length_bound_check(z3, bz);
  CHECK(rz.max_abs.size() == 1);  // no level >= 2: vacuous pass
}
