#include <doctest.h>

#include "nilreg/ball.hpp"
#include "nilreg/group.hpp"
#include "nilreg/lattice.hpp"
#include "nilreg/rng.hpp"
#include "test_util.hpp"

using namespace nilreg;

TEST_CASE("group arithmetic basics") {
  const GroupSpec& n3 = cat().group("N3");
  const GroupElement a = n3.element("a"), b = n3.element("b"), c = n3.element("c");

  CHECK(commutator(a, b) == c);
  CHECK(inverse(n3.identity()) == n3.identity());
  CHECK(mul(a, inverse(a)).is_identity());

  const GroupSpec& n4 = cat().group("N4");
  for (const auto& g1 : n4.word_gens)
    for (const auto& g2 : n4.word_gens)
      CHECK(n4.in_level(2, commutator(n4.element(g1), n4.element(g2))));
}

TEST_CASE("group laws on random words") {
  Rng rng(7);
  for (const char* name : {"N3", "N4", "H5", "N3xN3"}) {
    const GroupSpec& spec = cat().group(name);
    GenSet fs = make_genset(spec, spec.word_gens);
    auto random_elem = [&] {
      GroupElement g = spec.identity();
      const int len = 1 + static_cast<int>(rng.below(8));
      for (int i = 0; i < len; ++i)
        g = mul(g, fs.elems[1 + rng.below(fs.elems.size() - 1)]);
      return g;
    };
    for (int trial = 0; trial < 50; ++trial) {
      GroupElement x = random_elem(), y = random_elem(), z = random_elem();
      CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
      CHECK(mul(inverse(x), x).is_identity());
      CHECK(inverse(mul(x, y)) == mul(inverse(y), inverse(x)));
    }
  }
}

TEST_CASE("membership predicates") {
  const GroupSpec& n3 = cat().group("N3");
  CHECK(is_member(n3.subgroup("Zcenter"), n3.element("c")));
  CHECK_FALSE(is_member(n3.subgroup("Zcenter"), n3.element("a")));

  const GroupSpec& n4 = cat().group("N4");
  CHECK(is_member(n4.subgroup("K_ex74"), n4.element("b")));
  CHECK_FALSE(is_member(n4.subgroup("K_ex74"), n4.element("a")));
}

TEST_CASE("projections") {
  const GroupSpec& n3 = cat().group("N3");
  auto v = project(n3, 2, n3.element("c"));
  REQUIRE(v.size() == 1);
  CHECK(v[0] == 1);

  auto ab = mul(n3.element("a"), n3.element("b"));
  auto w = project(n3, 1, ab);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == 1);
  CHECK(w[1] == 1);

  const GroupSpec& n4 = cat().group("N4");
  auto z = project(n4, 3, n4.element("z"));
  REQUIRE(z.size() == 1);
  CHECK(z[0] == 1);

  CHECK_THROWS_AS(project(n3, 2, n3.element("a")), Error);
}

TEST_CASE("project is a homomorphism on each level") {
  for (const char* name : {"N3", "N4"}) {
    const GroupSpec& spec = cat().group(name);
    BallRecord b = ball(spec, spec.word_gens, 4);
    for (int j = 1; j <= spec.nil_class; ++j) {
      std::vector<const GroupElement*> in_gj;
      for (const auto& g : b.elems)
        if (spec.in_level(j, g)) in_gj.push_back(&g);
      for (std::size_t p = 0; p < in_gj.size(); p += 3)
        for (std::size_t q = 0; q < in_gj.size(); q += 5) {
          auto lhs = project(spec, j, mul(*in_gj[p], *in_gj[q]));
          auto r1 = project(spec, j, *in_gj[p]);
          auto r2 = project(spec, j, *in_gj[q]);
          for (std::size_t i = 0; i < lhs.size(); ++i)
            CHECK(lhs[i] == r1[i] + r2[i]);
        }
    }
  }
}

namespace {

// independent oracle: rank = largest k with a nonzero k x k minor
Int det_of(const IntMat& m, const std::vector<int>& rows,
           const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  if (k == 1) return m(rows[0], cols[0]);
  Int s = 0;
  for (int i = 0; i < k; ++i) {
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols;
    for (int j = 0; j < k; ++j)
      if (j != i) sub_cols.push_back(cols[j]);
    Int minor = det_of(m, sub_rows, sub_cols);
    if ((i % 2) == 0)
      s += m(rows[0], cols[i]) * minor;
    else
      s -= m(rows[0], cols[i]) * minor;
  }
  return s;
}

int rank_by_minors(const IntMat& m) {
  const int nr = static_cast<int>(m.rows()), nc = static_cast<int>(m.cols());
  for (int k = std::min(nr, nc); k >= 1; --k) {
    std::vector<int> rows(k), cols(k);
    std::function<bool(int, int)> pick_rows = [&](int idx, int start) -> bool {
      if (idx == k) {
        std::function<bool(int, int)> pick_cols = [&](int jdx, int jstart) -> bool {
          if (jdx == k) return det_of(m, rows, cols) != 0;
          for (int c = jstart; c < nc; ++c) {
            cols[jdx] = c;
            if (pick_cols(jdx + 1, c + 1)) return true;
          }
          return false;
        };
        return pick_cols(0, 0);
      }
      for (int r = start; r < nr; ++r) {
        rows[idx] = r;
        if (pick_rows(idx + 1, r + 1)) return true;
      }
      return false;
    };
    if (pick_rows(0, 0)) return k;
  }
  return 0;
}

}  // namespace

TEST_CASE("lattice rank") {
  using Rows = std::vector<std::vector<Int>>;
  CHECK(lattice_rank(Rows{{Int(0)}}) == 0);
  CHECK(lattice_rank(Rows{{Int(1), Int(0)}, {Int(0), Int(2)}, {Int(1), Int(2)}}) == 2);
  CHECK(lattice_rank(Rows{{Int(2), Int(4)}, {Int(3), Int(6)}}) == 1);
  CHECK(lattice_rank(Rows{}) == 0);

  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int nr = 1 + rng.below(4), nc = 1 + rng.below(4);
    IntMat m(nr, nc);
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c)
        m(r, c) = static_cast<long long>(rng.below(9)) - 4;
    const int rank = lattice_rank(m);
    CHECK(rank == rank_by_minors(m));

    // invariances: row swap, negation, adding one row to another
    if (nr >= 2) {
      IntMat sw = m;
      sw.row(0).swap(sw.row(1));
      CHECK(lattice_rank(sw) == rank);
      IntMat add = m;
      for (int c = 0; c < nc; ++c) add(0, c) += add(1, c);
      CHECK(lattice_rank(add) == rank);
    }
    IntMat neg = m;
    for (int c = 0; c < nc; ++c) neg(0, c) = -neg(0, c);
    CHECK(lattice_rank(neg) == rank);
  }
}

TEST_CASE("verify_spec") {
  CHECK(verify_spec(cat().group("N3")).all_pass());
  CHECK(verify_spec(cat().group("N3xN3")).all_pass());
  CHECK(verify_spec(cat().group("N4")).all_pass());
  CHECK(verify_spec(cat().group("N4G")).all_pass());
  CHECK(verify_spec(cat().group("H5")).all_pass());
  CHECK(verify_spec(cat().group("Z3")).all_pass());

  GroupSpec corrupted = cat().group("N3");
  corrupted.levels[1].zero_entries.clear();  // drop the G_2 predicate
  VerifyReport rep = verify_spec(corrupted);
  CHECK_FALSE(rep.all_pass());
  bool nested_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "predicates-nested" && !c.pass) nested_failed = true;
  CHECK(nested_failed);
}

TEST_CASE("canonical coset representatives") {
  const GroupSpec& n3 = cat().group("N3");
  const SubgroupSpec& kac = n3.subgroup("K_ac");
  GroupElement g = mul(mul(n3.element("b"), n3.element("a")), n3.element("c"));
  GroupElement rep = canonical_rep(n3, kac, g);
  // representative differs from g by an element of K on the right
  CHECK(is_member(kac, mul(inverse(g), rep)));
  CHECK(rep.factors[0](0, 1) == 0);
  CHECK(rep.factors[0](0, 2) == 0);
}
