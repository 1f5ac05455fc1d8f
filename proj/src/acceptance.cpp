#include "nilreg/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "nilreg/ball.hpp"
#include "nilreg/canon.hpp"
#include "nilreg/growth.hpp"
#include "nilreg/process.hpp"
#include "nilreg/realize.hpp"
#include "nilreg/witness.hpp"

namespace nilreg {

namespace {

struct Gate {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "FAIL " << what << "; ";
    }
  }
  void note(const std::string& what) { detail << what << "; "; }
};

// AC-1: exact Bass-Guivarc'h and relative-rank values. Runtime < 1 s.
void ac1(const Catalog& cat, Gate& g, int) {
  for (int d = 1; d <= 4; ++d)
    g.check(bass_guivarch(cat.group("Z" + std::to_string(d))) == d,
            "gr(Z^" + std::to_string(d) + ") = " + std::to_string(d));
  g.check(bass_guivarch(cat.group("N3")) == 4, "gr(N3) = 4");
  g.check(bass_guivarch(cat.group("N4")) == 10, "gr(N4) = 10");
  const GroupSpec& n3 = cat.group("N3");
  g.check(relative_degree(n3, n3.subgroup("Zcenter")) == 2,
          "relative degree of the N3 center = 2");
  g.check(relative_ranks(n3, n3.subgroup("Zcenter")) == std::vector<int>{0, 1},
          "N3 center ranks (0, 1)");
}

// AC-2: radius-24 ball of N3 with fitted exponents and the exact sandwich
// inequalities at n <= 12. Runtime < 5 min, < 8 GB.
void ac2(const Catalog& cat, Gate& g, int workers) {
  const GroupSpec& n3 = cat.group("N3");
  BallConfig bc;
  bc.workers = workers;
  BallRecord b = ball(n3, n3.word_gens, 24, bc);
  const FitWindow w = default_window(24);

  const double fit_ball = fit_exponent(b.counts, w);
  g.check(std::abs(fit_ball - 4) <= 0.4, "ball exponent 4 +- 0.4");

  auto rel_c = relative_count(b, n3.subgroup("Zcenter"));
  const double fit_rel = fit_exponent(rel_c, w);
  g.check(std::abs(fit_rel - 2) <= 0.4, "relative <c> exponent 2 +- 0.4");

  SchreierConfig sc;
  sc.workers = workers;
  SchreierBall s_ac = schreier_ball(n3, n3.subgroup("K_ac"), n3.word_gens, 24, sc);
  const double fit_ac = fit_exponent(s_ac.counts, w);
  g.check(std::abs(fit_ac - 1) <= 0.2, "Schreier <a,c> exponent 1 +- 0.2");

  SchreierBall s_c = schreier_ball(n3, n3.subgroup("Zcenter"), n3.word_gens, 24, sc);
  const double fit_c = fit_exponent(s_c.counts, w);
  g.check(std::abs(fit_c - 2) <= 0.4, "Schreier <c> exponent 2 +- 0.4");

  auto rel_ac = relative_count(b, n3.subgroup("K_ac"));
  for (int n = 0; n <= 12; ++n) {
    g.check(b.counts[2 * n] >= s_c.counts[n] * rel_c[n] &&
                b.counts[n] <= s_c.counts[n] * rel_c[2 * n],
            "sandwich for <c> at n = " + std::to_string(n));
    g.check(b.counts[2 * n] >= s_ac.counts[n] * rel_ac[n] &&
                b.counts[n] <= s_ac.counts[n] * rel_ac[2 * n],
            "sandwich for <a,c> at n = " + std::to_string(n));
  }
  std::ostringstream os;
  os.precision(4);
  os << "fits: ball " << fit_ball << ", rel " << fit_rel << ", schreier "
     << fit_ac << "/" << fit_c;
  g.note(os.str());
}

// AC-3: critical-regularity values and the topologically-free bound.
// Runtime < 10 s.
void ac3(const Catalog& cat, Gate& g, int) {
  g.check(crit_interval(cat.group("N4")).value == CritValue{false, 3, 2},
          "crit(N4) = 3/2");
  g.check(crit_interval(cat.group("N3")).value == CritValue{false, 2, 1},
          "crit(N3) = 2");
  g.check(crit_interval(cat.group("N3xN3")).value == CritValue{false, 2, 1},
          "crit(N3xN3) = 2");

  const GroupSpec& n4g = cat.group("N4G");
  g.check(verify_witness(n4g, n4g.witness("K")).all_pass(),
          "the half-line example witness verifies");
  g.check(schreier_degree(n4g, n4g.subgroup("K")) == 1,
          "half-line example witness has gr(G/K) = 1");

  const GroupSpec& prod = cat.group("N3xN3");
  int min_deg = 1 << 20;
  for (const char* name : {"Zc", "A2", "B2", "M"}) {
    AbelianBound ab = abelian_stab_bound(prod, prod.subgroup(name));
    g.check(ab.is_abelian, std::string(name) + " is abelian");
    g.check(ab.degree >= 2, std::string(name) + " has Schreier degree >= 2");
    min_deg = std::min(min_deg, ab.degree);
  }
  // the topologically-free value 1 + 1/min over abelian stabilizers
  g.check(min_deg == 2, "topologically-free bound 1 + 1/2 reproduced");
}

// AC-4: canonical-form equivalence on B_6 (graded letters), exact weight
// monotonicity, level-2 length-bound band. Runtime < 2 min.
void ac4(const Catalog& cat, Gate& g, int workers) {
  std::uint64_t total = 0;
  for (const char* name : {"N3", "N4"}) {
    const GroupSpec& spec = cat.group(name);
    std::vector<std::string> graded_names;
    for (const auto& row : spec.graded)
      for (const auto& n : row) graded_names.push_back(n);
    BallConfig bc;
    bc.workers = workers;
    BallRecord b = ball(spec, graded_names, 6, bc);
    total += b.size();
    const Int A = 4 * std::max(1, commutator_expansion_bound(spec));
    bool all_equal = true;
    for (const auto& el : b.elems)
      if (!(sort_normalize(spec, letters_of_geodesic(spec, b, el), A).form ==
            peel_canonical(spec, el))) {
        all_equal = false;
        break;
      }
    g.check(all_equal, std::string("sort == peel on B_6 of ") + name);
  }
  g.check(total >= 10000, "at least 10^4 elements covered (got " +
                              std::to_string(total) + ")");

  Rng rng(424242);
  for (const char* name : {"N3", "N4"}) {
    const GroupSpec& spec = cat.group(name);
    const Int A = 4 * std::max(1, commutator_expansion_bound(spec));
    std::vector<CanonLetter> alphabet;
    for (int j = 1; j <= spec.nil_class; ++j)
      for (std::size_t i = 0; i < spec.graded[j - 1].size(); ++i)
        for (int s : {+1, -1})
          alphabet.push_back(CanonLetter{j, static_cast<int>(i), s});
    bool monotone = true, consistent = true;
    for (int trial = 0; trial < 500; ++trial) {
      const int len = 2 + static_cast<int>(rng.below(14));
      CanonWord word;
      for (int i = 0; i < len; ++i)
        word.push_back(alphabet[rng.below(alphabet.size())]);
      SortOptions opts;
      opts.want_trace = true;
      opts.n = len;
      SortResult res = sort_normalize(spec, word, A, opts);
      for (std::size_t i = 1; i < res.trace.size(); ++i)
        if (res.trace[i] > res.trace[i - 1]) monotone = false;
      if (!(res.form == peel_canonical(spec, word_product(spec, word))))
        consistent = false;
    }
    g.check(monotone, std::string("exact weight monotonicity on ") + name);
    g.check(consistent, std::string("sorted forms match peel on ") + name);
  }

  const GroupSpec& n3 = cat.group("N3");
  BallConfig bc;
  bc.workers = workers;
  BallRecord b24 = ball(n3, n3.word_gens, 24, bc);
  LengthBoundReport rep = length_bound_check(n3, b24);
  double lo = 1e300, hi = 0;
  for (int n = 4; n <= 24; ++n) {
    lo = std::min(lo, rep.ratio[1][n]);
    hi = std::max(hi, rep.ratio[1][n]);
  }
  g.check(hi <= 2 * lo, "level-2 ratio band within a factor 2 on [4,24]");
  std::ostringstream os;
  os.precision(4);
  os << "band [" << lo << ", " << hi << "]";
  g.note(os.str());
}

// AC-5: point-mass bounds for the block process, monotone right-variant
// paths, and the critical trace at N = 256 and 1024 with frozen constants.
// Runtime < 10 min.
void ac5(const Catalog& cat, Gate& g, int workers) {
  const GroupSpec& n3 = cat.group("N3");
  GenSet fs = make_genset(n3, n3.word_gens);
  BallConfig bc;
  bc.workers = workers;
  BallRecord b8 = ball(n3, n3.word_gens, 8, bc);

  auto sampler = heis_sampler(n3, fs, 32);
  g.check(sampler != nullptr, "exact sampler available for N3");

  const int seeds = 100000;
  std::unordered_map<std::string, int> freq16, freq32;
  for (int s = 1; s <= seeds; ++s) {
    ProcessTrace tr = sample_path(n3, fs, *sampler, 32, s);
    ++freq16[tr.partial[16].key()];
    ++freq32[tr.partial[32].key()];
  }
  int max16 = 0, max32 = 0;
  for (const auto& [k, v] : freq16) max16 = std::max(max16, v);
  for (const auto& [k, v] : freq32) max32 = std::max(max32, v);
  const double bound16 = 1.5 / static_cast<double>(b8.counts[4]);
  const double bound32 = 1.5 / static_cast<double>(b8.counts[8]);
  g.check(max16 <= bound16 * seeds, "max frequency at n=16 <= 1.5/#B_4");
  g.check(max32 <= bound32 * seeds, "max frequency at n=32 <= 1.5/#B_8");
  {
    std::ostringstream os;
    os.precision(3);
    os << "freq16 " << max16 / double(seeds) << " vs " << bound16 << ", freq32 "
       << max32 / double(seeds) << " vs " << bound32;
    g.note(os.str());
  }

  // right variant on the truncated realization, N = 63 steps
  {
    RealizeParams rp;
    rp.alpha = 0.75;
    rp.R = 64;
    rp.J_mult = 1.0;
    rp.workers = workers;
    RealizeResult rr = build_system(n3, n3.subgroup("K_ac"), rp);
    const IntervalSystem& sys = rr.system;
    std::vector<ActionEvaluator> by_letter;
    for (int li = 0; li < fs.size(); ++li)
      by_letter.push_back(make_evaluator(sys, fs.elems[li]));
    PointAction action = [&](int li, double x) { return by_letter[li].eval(x); };
    const std::size_t p0 = sys.pos_of[0];
    const double x0 = sys.cell(p0, 0).left;
    bool all_right = true;
    std::string first_fail;
    for (int s = 1; s <= seeds; ++s) {
      try {
        sample_path_right(n3, fs, *sampler, action, x0, 63, s);
      } catch (const Error& e) {
        all_right = false;
        first_fail = e.what();
        break;
      }
    }
    g.check(all_right, "right-variant paths keep g_n(x0) >= x0 (" + first_fail + ")");
  }

  // critical trace: d = 2 witness (center), frozen constants
  {
    const SubgroupSpec& zc = n3.subgroup("Zcenter");
    SchreierConfig slim;
    slim.workers = workers;
    slim.store_reps = false;
    for (int N : {256, 1024}) {
      SchreierBall sb = schreier_ball(n3, zc, n3.word_gens, N + 1, slim);
      auto big = heis_sampler(n3, fs, N);
      try {
        CriticalResult cr = critical_trace(n3, zc, sb, *big, 2, 0.45, 8.0, N);
        std::ostringstream os;
        os.precision(4);
        os << "N=" << N << ": attempt " << cr.attempts << ", sum " << cr.sum_powers
           << " <= " << cr.bound_sum << ", final " << cr.final_length << " <= "
           << cr.bound_final;
        g.note(os.str());
      } catch (const Error& e) {
        g.check(false, "critical trace at N = " + std::to_string(N) + ": " + e.what());
      }
    }
  }
}

// AC-6: Tsuboi flow numerics. Runtime < 30 s.
void ac6(const Catalog&, Gate& g, int) {
  Rng rng(606);
  bool round_trip = true, law = true;
  for (int i = 0; i < 2000; ++i) {
    const double t = 6 * rng.unit() - 3;
    const double x = 0.01 + 0.98 * rng.unit();
    if (std::abs(flow(-t, flow(t, x)) - x) > 1e-9) round_trip = false;
    const double s = 6 * rng.unit() - 3;
    if (std::abs(flow(s, flow(t, x)) - flow(s + t, x)) > 1e-9) law = false;
  }
  g.check(round_trip, "flow round trip within 1e-9");
  g.check(law, "flow group law within 1e-9");

  bool endpoints = true, comp = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = 0.1 + rng.unit(), bl = 0.1 + rng.unit();
    const double c = 0.1 + rng.unit(), d = 0.1 + rng.unit();
    const double e = 0.1 + rng.unit(), f = 0.1 + rng.unit();
    Interval Ip{-a, 0}, I{0, bl};
    Interval Jp{5 - c, 5}, J{5, 5 + d};
    Interval Kp{9 - e, 9}, K{9, 9 + f};
    TsuboiMap ij = tsuboi_map(Ip, I, Jp, J);
    if (std::abs(ij.deriv(0) - c / a) > 1e-8 * (c / a)) endpoints = false;
    if (std::abs(ij.deriv(bl) - d / bl) > 1e-8 * (d / bl)) endpoints = false;
    TsuboiMap jk = tsuboi_map(Jp, J, Kp, K);
    TsuboiMap ik = tsuboi_map(Ip, I, Kp, K);
    for (int p = 1; p < 10; ++p) {
      const double x = I.left + I.len() * p / 10.0;
      if (std::abs(jk.eval(ij.eval(x)) - ik.eval(x)) > 1e-9) comp = false;
    }
  }
  g.check(endpoints, "endpoint derivatives within 1e-8 on 10^3 quadruples");
  g.check(comp, "composition law within 1e-9");
}

// AC-7: Holder-constant behaviour of the truncated N3 realization.
// Runtime < 5 min.
void ac7(const Catalog& cat, Gate& g, int workers) {
  const GroupSpec& n3 = cat.group("N3");
  RealizeParams rp;
  rp.alpha = 0.75;
  rp.R = 12;
  rp.J_mult = 1.0;
  rp.workers = workers;
  RealizeResult rr = build_system(n3, n3.subgroup("K_ac"), rp);
  const IntervalSystem& sys = rr.system;
  g.note("eps " + std::to_string(sys.eps) + ", C0 " + std::to_string(sys.C0) +
         ", J " + std::to_string(sys.J) + ", d' " +
         std::to_string(sys.cocycle_degree));

  // shell maxima of kappa_alpha over the generators
  double shell_lo = 0, shell_hi = 0;  // (3,6] and (6,12]
  double mismatch = 0;
  for (const ActionEvaluator& ev : rr.generators) {
    for (std::size_t p = 0; p < sys.cosets(); ++p) {
      if (ev.target[p] < 0) continue;
      const int r = sys.sball.dist[sys.order[p]];
      if (r > sys.safe_radius) continue;
      HolderEstimate est = holder_constant(ev, p, rp.alpha);
      if (r > 3 && r <= 6) shell_lo = std::max(shell_lo, est.kappa_alpha);
      if (r > 6 && r <= 12) shell_hi = std::max(shell_hi, est.kappa_alpha);

      // one-sided derivative agreement at the interior endpoints
      const std::int64_t l = ev.shift[p];
      const std::int64_t jlo = -sys.J + 2 + std::max<std::int64_t>(0, -l);
      const std::int64_t jhi = sys.J - std::max<std::int64_t>(0, l);
      for (std::int64_t j = jlo; j <= jhi; j += std::max<std::int64_t>(1, (jhi - jlo) / 512)) {
        const double x = sys.cell(p, j).left;
        const double dl = ev.deriv_side(x, -1), dr = ev.deriv_side(x, +1);
        mismatch = std::max(mismatch, std::abs(dl - dr) / dr);
      }
    }
  }
  g.check(mismatch < 1e-8, "one-sided derivative mismatches < 1e-8");
  g.check(shell_hi < 1.2 * shell_lo,
          "shell maximum grows by < 1.2x per shell doubling");
  {
    std::ostringstream os;
    os.precision(4);
    os << "shells (3,6] " << shell_lo << " vs (6,12] " << shell_hi
       << ", mismatch " << mismatch;
    g.note(os.str());
  }

  // blow-up shadow above critical: alpha' = 1.25 > 1/d = 1
  bool monotone = true;
  const double v0 = alpha_lower_formula(sys.C0, rp.alpha, 1.25, 1);
  double prev = v0;
  for (int r = 2; r <= 10000; ++r) {
    const double v = alpha_lower_formula(sys.C0, rp.alpha, 1.25, r);
    if (v < prev) monotone = false;
    prev = v;
  }
  g.check(monotone, "alpha-lower formula increases monotonically along the ray");
  g.check(prev >= 50 * v0, "alpha-lower formula diverges (factor >= 50)");
}

// AC-8: derivative growth of the central element on the AC-7 system.
// Runtime < 2 min.
void ac8(const Catalog& cat, Gate& g, int workers) {
  const GroupSpec& n3 = cat.group("N3");
  RealizeParams rp;
  rp.alpha = 0.75;
  rp.R = 12;
  rp.workers = workers;
  RealizeResult rr = build_system(n3, n3.subgroup("K_ac"), rp);
  const IntervalSystem& sys = rr.system;

  ActionEvaluator ev_c = make_evaluator(sys, n3.element("c"));
  const int M = 200;
  std::vector<double> sup = derivative_growth(ev_c, M);
  g.check(sup[0] == 1.0, "m = 0 gives all ones");

  const std::size_t p0 = sys.pos_of[0];
  const double J0 = sys.length(p0, 0);
  const double Ic = sys.coset_len(p0);
  const double fd_const = J0 / (2 * Ic);
  for (int n : {10, 25, 50, 100}) {
    bool found = false;
    for (int m = n; m <= 2 * n && m <= M; ++m)
      if (sup[m] >= fd_const * m) found = true;
    g.check(found, "subsequence lower bound holds for n = " + std::to_string(n));
  }

  double max50 = 0, max200 = 0;
  for (int m = 0; m <= 50; ++m) max50 = std::max(max50, sup[m]);
  for (int m = 0; m <= 200; ++m) max200 = std::max(max200, sup[m]);
  g.check(max200 >= 1.5 * max50, "max sup|Dc^m| grows by >= 1.5x from M=50 to 200");
  std::ostringstream os;
  os.precision(4);
  os << "max50 " << max50 << ", max200 " << max200 << ", fd const " << fd_const;
  g.note(os.str());
}

}  // namespace

std::vector<std::string> criterion_ids() {
  return {"AC-1", "AC-2", "AC-3", "AC-4", "AC-5", "AC-6", "AC-7", "AC-8"};
}

CriterionResult run_criterion(const Catalog& cat, const std::string& id,
                              int workers) {
  using Runner = void (*)(const Catalog&, Gate&, int);
  static const std::pair<const char*, std::pair<Runner, double>> table[] = {
      {"AC-1", {ac1, 1}},    {"AC-2", {ac2, 300}}, {"AC-3", {ac3, 10}},
      {"AC-4", {ac4, 120}},  {"AC-5", {ac5, 600}}, {"AC-6", {ac6, 30}},
      {"AC-7", {ac7, 300}},  {"AC-8", {ac8, 120}},
  };
  CriterionResult res;
  res.id = id;
  for (const auto& [name, entry] : table) {
    if (id != name) continue;
    res.budget_s = entry.second;
    Gate gate;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      entry.first(cat, gate, workers);
    } catch (const std::exception& e) {
      gate.pass = false;
      gate.detail << "exception: " << e.what();
    }
    res.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    res.pass = gate.pass;
    res.detail = gate.detail.str();
    if (res.seconds > res.budget_s) {
      res.pass = false;
      res.detail += "runtime budget exceeded; ";
    }
    return res;
  }
  fail(ErrorKind::Lookup, "unknown acceptance criterion '" + id + "'");
}

}  // namespace nilreg
