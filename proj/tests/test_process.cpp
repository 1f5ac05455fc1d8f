#include <doctest.h>

#include <cmath>
#include <map>
#include <unordered_map>

#include "nilreg/process.hpp"
#include "nilreg/realize.hpp"
#include "test_util.hpp"

using namespace nilreg;

namespace {

struct Fixture {
  const GroupSpec& n3 = cat().group("N3");
  GenSet fs = make_genset(n3, n3.word_gens);
  BallRecord b8 = ball(n3, n3.word_gens, 8);
  std::unique_ptr<BallSampler> store = store_sampler(b8);
  std::unique_ptr<BallSampler> oracle = heis_sampler(n3, fs, 64);
};

double chi2_quantile_999(int df) {
  // Wilson-Hilferty, upper 1e-3 quantile
  const double z = 3.0902;
  const double k = df;
  const double t = 1 - 2 / (9 * k) + z * std::sqrt(2 / (9 * k));
  return k * t * t * t;
}

}  // namespace

TEST_CASE("plain path basics") {
  Fixture f;

  ProcessTrace t0 = sample_path(f.n3, f.fs, *f.store, 0, 1);
  CHECK(t0.letters.empty());
  CHECK(t0.partial.size() == 1);
  CHECK(t0.partial[0].is_identity());

  ProcessTrace t7a = sample_path(f.n3, f.fs, *f.store, 7, 42);
  ProcessTrace t7b = sample_path(f.n3, f.fs, *f.store, 7, 42);
  CHECK(t7a.letters == t7b.letters);  // determinism contract
  CHECK(t7a.letters.size() == 7);

  // g_3 is the product of the first three letters
  GroupElement g = f.n3.identity();
  for (int i = 0; i < 3; ++i) g = mul(f.fs.elems[t7a.letters[i]], g);
  CHECK(g == t7a.partial[3]);

  // blocks have exactly n_j letters and remultiply to the block element
  ProcessTrace t15 = sample_path(f.n3, f.fs, *f.store, 15, 7);
  REQUIRE(t15.block_start.size() == 4);
  for (std::size_t j = 0; j + 1 < t15.block_start.size(); ++j) {
    const int lo = t15.block_start[j], hi = t15.block_start[j + 1];
    CHECK(hi - lo == (1 << j));
    CHECK(mul(t15.partial[hi], inverse(t15.partial[lo])) ==
          mul(t15.partial[hi], inverse(t15.partial[lo])));
    GroupElement blk = f.n3.identity();
    for (int i = lo; i < hi; ++i) blk = mul(f.fs.elems[t15.letters[i]], blk);
    CHECK(blk == mul(t15.partial[hi], inverse(t15.partial[lo])));
  }

  // missing ball radius raises a dependency error naming the radius
  CHECK_THROWS_WITH_AS(sample_path(f.n3, f.fs, *f.store, 31, 1),
                       doctest::Contains("radius 16"), Error);
}

TEST_CASE("block uniformity, both samplers") {
  Fixture f;
  const int seeds = 30000;
  for (const BallSampler* sampler : {f.store.get(), f.oracle.get()}) {
    std::unordered_map<std::string, int> freq;
    for (int s = 1; s <= seeds; ++s) {
      ProcessTrace tr = sample_path(f.n3, f.fs, *sampler, 7, 900000 + s);
      // block j = 2 runs over steps (3, 7]
      GroupElement blk = mul(tr.partial[7], inverse(tr.partial[3]));
      ++freq[blk.key()];
    }
    const auto expected = static_cast<double>(seeds) / f.b8.counts[4];
    REQUIRE(freq.size() == f.b8.counts[4]);
    double chi2 = 0;
    for (const auto& [k, v] : freq) chi2 += (v - expected) * (v - expected) / expected;
    CHECK(chi2 < chi2_quantile_999(static_cast<int>(f.b8.counts[4]) - 1));
  }
}

TEST_CASE("product point-mass never exceeds the best factor") {
  Fixture f;
  Rng rng(31337);
  const int S = 200000;
  std::unordered_map<std::string, int> freq;
  for (int s = 0; s < S; ++s) {
    GroupElement x1 = f.store->draw(2, rng, nullptr);
    GroupElement x2 = f.store->draw(4, rng, nullptr);
    ++freq[mul(x1, x2).key()];
  }
  int max_count = 0;
  for (const auto& [k, v] : freq) max_count = std::max(max_count, v);
  const double p0 = 1.0 / static_cast<double>(f.b8.counts[4]);
  const double sigma = std::sqrt((1 - p0) / (p0 * S));  // relative sampling std
  CHECK(max_count / static_cast<double>(S) <= (1 + 3 * sigma) * p0);
}

TEST_CASE("right-variant paths") {
  Fixture f;

  SUBCASE("identity action reduces to the plain path with doubled schedule") {
    PointAction id_action = [](int, double x) { return x; };
    ProcessTrace r = sample_path_right(f.n3, f.fs, *f.store, id_action, 0.5, 14, 5);
    ProcessTrace p = sample_path(f.n3, f.fs, *f.store, 7, 5);
    for (double x : r.points) CHECK(x == 0.5);
    // g-blocks (the odd block slots) reproduce the plain blocks
    std::vector<int> g_letters;
    for (std::size_t j = 0; j + 1 < r.block_start.size(); j += 2)
      for (int i = r.block_start[j + 1];
           i < (j + 2 < r.block_start.size() ? r.block_start[j + 2]
                                             : static_cast<int>(r.letters.size()));
           ++i)
        g_letters.push_back(r.letters[i]);
    for (std::size_t i = 0; i < std::min(g_letters.size(), p.letters.size()); ++i)
      CHECK(g_letters[i] == p.letters[i]);
    // F-blocks of the identity action are identity letters
    for (int i = r.block_start[0]; i < r.block_start[1]; ++i)
      CHECK(r.letters[i] == 0);
  }

  SUBCASE("monotone on the truncated realization") {
    RealizeParams rp;
    rp.alpha = 0.75;
    rp.R = 16;
    rp.J_mult = 1.0;
    RealizeResult rr = build_system(f.n3, f.n3.subgroup("K_ac"), rp);
    const IntervalSystem& sys = rr.system;
    std::vector<ActionEvaluator> by_letter;
    for (int li = 0; li < f.fs.size(); ++li)
      by_letter.push_back(make_evaluator(sys, f.fs.elems[li]));
    PointAction action = [&](int li, double x) { return by_letter[li].eval(x); };
    const double x0 = sys.cell(sys.pos_of[0], 0).left;
    for (int s = 1; s <= 50; ++s) {
      ProcessTrace tr = sample_path_right(f.n3, f.fs, *f.store, action, x0, 15, s);
      for (double x : tr.points) CHECK(x >= x0);
    }
  }
}

TEST_CASE("right-variant point masses stay below the ball bound") {
  Fixture f;
  RealizeParams rp;
  rp.alpha = 0.75;
  rp.R = 33;
  rp.J_mult = 1.0;
  RealizeResult rr = build_system(f.n3, f.n3.subgroup("K_ac"), rp);
  const IntervalSystem& sys = rr.system;
  std::vector<ActionEvaluator> by_letter;
  for (int li = 0; li < f.fs.size(); ++li)
    by_letter.push_back(make_evaluator(sys, f.fs.elems[li]));
  PointAction action = [&](int li, double x) { return by_letter[li].eval(x); };
  const double x0 = sys.cell(sys.pos_of[0], 0).left;
  const int seeds = 30000;
  std::unordered_map<std::string, int> freq;
  for (int s = 1; s <= seeds; ++s) {
    ProcessTrace tr = sample_path_right(f.n3, f.fs, *f.oracle, action, x0, 32, s);
    ++freq[tr.partial[32].key()];
  }
  int max_count = 0;
  for (const auto& [k, v] : freq) max_count = std::max(max_count, v);
  // Monte-Carlo shadow of the n/8 bound, with the 1.5 slack
  CHECK(max_count / double(seeds) <= 1.5 / double(f.b8.counts[4]));
}

TEST_CASE("critical trace at a small scale") {
  Fixture f;
  const SubgroupSpec& zc = f.n3.subgroup("Zcenter");
  SchreierConfig slim;
  slim.store_reps = false;
  SchreierBall sb = schreier_ball(f.n3, zc, f.n3.word_gens, 65, slim);

  CriticalResult cr = critical_trace(f.n3, zc, sb, *f.oracle, 2, 0.45, 8.0, 64);
  CHECK(cr.attempts <= 20);
  CHECK(cr.sum_powers <= cr.bound_sum);
  CHECK(cr.final_length <= cr.bound_final);
  CHECK(cr.trace.coset.size() == 65);

  CHECK_THROWS_AS(critical_trace(f.n3, zc, sb, *f.oracle, 2, 0.45, 8.0, 63), Error);

  // N = 1: the sums are trivially bounded
  CriticalResult c1 = critical_trace(f.n3, zc, sb, *f.oracle, 2, 0.45, 8.0, 1);
  CHECK(c1.attempts == 1);

  // miscalibrated constants exhaust the retries
  CriticalConfig tiny;
  tiny.C1 = 1e-6;
  tiny.C2 = 1e-9;
  tiny.retries = 3;
  CHECK_THROWS_AS(critical_trace(f.n3, zc, sb, *f.oracle, 2, 0.45, 8.0, 64, tiny),
                  Error);
}

TEST_CASE("summability report") {
  Fixture f;
  const SubgroupSpec& zc = f.n3.subgroup("Zcenter");
  SchreierConfig slim;
  slim.store_reps = false;
  SchreierBall sb = schreier_ball(f.n3, zc, f.n3.word_gens, 65, slim);

  std::vector<ProcessTrace> traces;
  for (int s = 1; s <= 400; ++s) {
    ProcessTrace tr = sample_path(f.n3, f.fs, *f.oracle, 64, 3000 + s);
    for (const auto& g : tr.partial) tr.coset.push_back(*sb.coset_of(g));
    traces.push_back(std::move(tr));
  }

  SUBCASE("alpha = 1 partial sums stay below the total length when cosets are distinct") {
    double total = 0;
    std::map<std::uint32_t, double> lens;
    for (std::uint32_t v = 0; v < sb.size(); ++v) {
      lens[v] = critical_length(8.0, 0.45, sb.dist[v]);
      total += lens[v];
    }
    // a path visiting pairwise distinct cosets sums disjoint lengths
    for (const auto& tr : traces) {
      std::map<std::uint32_t, int> seen;
      double s = 0;
      bool distinct = true;
      for (auto v : tr.coset) {
        if (seen[v]++) distinct = false;
        s += lens[v];
      }
      if (distinct) CHECK(s <= total);
    }
  }

  SUBCASE("ensemble mean decays like the point-mass bound") {
    // the alpha d = 1.5 law needs a longer window; run the fit at N = 512
    SchreierBall sb512 = schreier_ball(f.n3, zc, f.n3.word_gens, 513, slim);
    auto oracle512 = heis_sampler(f.n3, f.fs, 512);
    std::vector<ProcessTrace> far;
    for (int s = 1; s <= 300; ++s) {
      ProcessTrace tr = sample_path(f.n3, f.fs, *oracle512, 512, 3000 + s);
      for (const auto& g : tr.partial) tr.coset.push_back(*sb512.coset_of(g));
      far.push_back(std::move(tr));
    }
    auto lens = [&](std::uint32_t v) {
      return critical_length(8.0, 0.45, sb512.dist[v]);
    };
    SummabilityReport rep = summability_report(far, lens, 0.75);
    CHECK(rep.partial_sums.size() == far.size());
    CHECK(rep.fitted_decay <= -1.2);
  }

  SUBCASE("constant lengths on a finite coset set grow linearly") {
    SummabilityReport rep =
        summability_report(traces, [](std::uint32_t) { return 0.125; }, 1.0);
    // S_N = 0.125 (N+1): linear, and the per-n mean is flat
    CHECK(rep.partial_sums[0] == doctest::Approx(0.125 * 65));
    CHECK(std::abs(rep.fitted_decay) < 0.01);
  }

  CHECK_THROWS_AS(summability_report(
                      traces, [](std::uint32_t) { return 1.0; }, 1.5),
                  Error);
}
