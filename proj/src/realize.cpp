#include "nilreg/realize.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "nilreg/growth.hpp"
#include "nilreg/lengths.hpp"

namespace nilreg {

Int cocycle(const GroupSpec& spec, const SubgroupSpec& sub,
            const SchreierBall& sball, const GroupElement& g, std::uint32_t v) {
  if (!sub.pi)
    fail(ErrorKind::Precondition,
         "cocycle: subgroup " + sub.name + " carries no pi functional");
  const GroupElement moved = mul(g, sball.reps[v]);
  auto tgt = sball.coset_of(moved);
  if (!tgt)
    fail(ErrorKind::Precondition, "cocycle: image coset outside the ball");
  const GroupElement k = mul(inverse(sball.reps[*tgt]), moved);
  if (!is_member(sub, k))
    fail(ErrorKind::Structural,
         "cocycle: Schreier table corruption, h_{g(v)}^-1 g h_v is outside K");
  return sub.pi->eval(k);
}

Interval IntervalSystem::cell(std::size_t p, std::int64_t j) const {
  const auto& P = pts[p];
  const std::size_t idx = static_cast<std::size_t>(j + J);
  return Interval{P[idx], P[idx + 1]};
}

double IntervalSystem::length(std::size_t p, std::int64_t j) const {
  return length_term(A[p], eps, j);
}

std::pair<std::size_t, std::int64_t> IntervalSystem::locate(double x) const {
  // coset slot by block start
  std::size_t lo = 0, hi = cosets() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (pts[mid].front() <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  const auto& P = pts[lo];
  auto it = std::upper_bound(P.begin(), P.end(), x);
  std::int64_t idx = std::max<std::int64_t>(
      0, std::min<std::int64_t>(static_cast<std::int64_t>(P.size()) - 2,
                                (it - P.begin()) - 1));
  return {lo, idx - J};
}

namespace {

int fit_cocycle_degree(const std::vector<std::int64_t>& max_abs_l, int R) {
  // least-squares slope of log m(r) over the upper radius range
  std::vector<std::pair<double, double>> xy;
  for (int r = std::max(2, R / 2); r <= R; ++r)
    if (max_abs_l[r] > 0)
      xy.push_back({std::log(static_cast<double>(r)),
                    std::log(static_cast<double>(max_abs_l[r]))});
  if (xy.size() < 2) {
    for (int r = 1; r <= R; ++r)
      if (max_abs_l[r] > 1)
        return std::max(
            1, static_cast<int>(std::llround(
                   std::log(static_cast<double>(max_abs_l[r])) / std::log(2.0 * r))));
    return 0;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : xy) sx += x, sy += y, sxx += x * x, sxy += x * y;
  const double n = static_cast<double>(xy.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return std::max(0, static_cast<int>(std::llround(slope)));
}

}  // namespace

RealizeResult build_system(const GroupSpec& spec, const SubgroupSpec& sub,
                           const RealizeParams& params) {
  if (!(params.alpha > 0 && params.alpha < 1))
    fail(ErrorKind::Domain, "build_system: alpha must lie in (0,1)");
  if (!sub.pi)
    fail(ErrorKind::Precondition,
         "build_system: subgroup " + sub.name + " carries no pi functional");

  RealizeResult out;
  IntervalSystem& sys = out.system;
  sys.spec = &spec;
  sys.sub = &sub;
  sys.R = params.R;
  sys.safe_radius = params.R - 1;
  sys.alpha = params.alpha;
  SchreierConfig scfg;
  scfg.workers = params.workers;
  sys.sball = schreier_ball(spec, sub, spec.word_gens, params.R + 1, scfg);
  sys.p_c = sub.pi->eval(spec.element(sub.pi_center));
  if (sys.p_c == 0)
    fail(ErrorKind::Structural, "build_system: pi vanishes on the central element");

  // cocycle table for the generator letters, cosets within radius R
  GenSet fs = make_genset(spec, spec.word_gens);
  std::vector<std::uint32_t> inside;
  for (std::uint32_t v = 0; v < sys.sball.size(); ++v)
    if (sys.sball.dist[v] <= params.R) inside.push_back(v);

  std::vector<std::vector<std::int64_t>> ltab(fs.size());
  std::vector<std::vector<std::int64_t>> ttab(fs.size());
  std::vector<std::int64_t> max_l(params.R + 1, 0);
  for (int li = 1; li < fs.size(); ++li) {
    ltab[li].assign(sys.sball.size(), 0);
    ttab[li].assign(sys.sball.size(), -1);
    for (std::uint32_t v : inside) {
      const GroupElement moved = mul(fs.elems[li], sys.sball.reps[v]);
      auto tgt = sys.sball.coset_of(moved);
      if (!tgt || sys.sball.dist[*tgt] > params.R) continue;  // frozen edge
      const Int l = cocycle(spec, sub, sys.sball, fs.elems[li], v);
      ltab[li][v] = to_i64(l);
      ttab[li][v] = *tgt;
      auto& cell = max_l[sys.sball.dist[v]];
      cell = std::max(cell, std::abs(ltab[li][v]));
    }
  }
  for (int r = 1; r <= params.R; ++r) max_l[r] = std::max(max_l[r], max_l[r - 1]);
  sys.cocycle_degree = fit_cocycle_degree(max_l, params.R);

  // eps per the smallness condition 1/(alpha eps) > d' + 1
  sys.eps = params.eps;
  if (sys.eps == 0)
    sys.eps = std::min(0.9, 1.0 / (params.alpha * (sys.cocycle_degree + 1.25)));
  if (!(sys.eps > 0 && sys.eps < 1) ||
      1.0 / (params.alpha * sys.eps) <= sys.cocycle_degree + 1)
    fail(ErrorKind::Config,
         "build_system: eps violates 1/(alpha*eps) > d'+1 for fitted d' = " +
             std::to_string(sys.cocycle_degree));

  // C0: the smallest of 2, 4, 8, ... satisfying |l(g,v)| < A_v throughout
  auto assign_A = [&](double C0, std::vector<double>& A) -> bool {
    A.assign(sys.sball.size(), 1.0);
    const double top = total_length(1, sys.eps);
    for (std::uint32_t v : inside) {
      const double target =
          std::pow(C0 + static_cast<double>(sys.sball.dist[v]), -1.0 / sys.alpha);
      if (target > top) return false;  // C0 too small for invert_length
      A[v] = invert_length(target, sys.eps);
    }
    return true;
  };
  auto violation = [&](const std::vector<double>& A) -> std::string {
    for (int li = 1; li < fs.size(); ++li)
      for (std::uint32_t v : inside) {
        if (ttab[li][v] < 0) continue;
        if (std::abs(static_cast<double>(ltab[li][v])) >= A[v])
          return "|l(" + fs.letter_name(li) + ", v" + std::to_string(v) +
                 ")| = " + std::to_string(std::abs(ltab[li][v])) +
                 " >= A_v = " + std::to_string(A[v]);
      }
    return "";
  };

  std::vector<double> A_by_id;
  if (params.C0 > 0) {
    sys.C0 = params.C0;
    if (!assign_A(sys.C0, A_by_id))
      fail(ErrorKind::Config, "build_system: C0 too small for the length profile");
    const std::string bad = violation(A_by_id);
    if (!bad.empty())
      fail(ErrorKind::Config,
           "build_system: " + bad + "; a larger C0 is required");
  } else {
    sys.C0 = 2;
    for (int attempt = 0;; ++attempt) {
      if (assign_A(sys.C0, A_by_id) && violation(A_by_id).empty()) break;
      sys.C0 *= 2;
      if (attempt > 20)
        fail(ErrorKind::Config, "build_system: no C0 satisfies |l(g,v)| < A_v");
    }
  }

  double maxA = 1;
  for (std::uint32_t v : inside) maxA = std::max(maxA, A_by_id[v]);
  sys.J = params.J > 0 ? params.J
                       : static_cast<std::int64_t>(std::ceil(params.J_mult * maxA));
  // an explicit J below max A_v truncates core parts; recorded, not fatal
  sys.core_complete = sys.J >= static_cast<std::int64_t>(std::ceil(maxA));

  // line order: catalog order functional when present, else BFS order
  sys.order = inside;
  if (sub.order_fn) {
    std::stable_sort(sys.order.begin(), sys.order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return sub.order_fn->eval(sys.sball.keys[a]) <
                              sub.order_fn->eval(sys.sball.keys[b]);
                     });
  }
  sys.pos_of.assign(sys.sball.size(), UINT32_MAX);
  for (std::size_t p = 0; p < sys.order.size(); ++p) sys.pos_of[sys.order[p]] = p;

  sys.A.resize(sys.order.size());
  sys.pts.resize(sys.order.size());
  double x = 0;
  for (std::size_t p = 0; p < sys.order.size(); ++p) {
    sys.A[p] = A_by_id[sys.order[p]];
    auto& P = sys.pts[p];
    P.resize(2 * sys.J + 2);
    P[0] = x;
    for (std::int64_t j = -sys.J; j <= sys.J; ++j) {
      x += length_term(sys.A[p], sys.eps, j);
      P[j + sys.J + 1] = x;
    }
  }
  sys.total = x;

  for (int gi = 0; gi < static_cast<int>(spec.word_gens.size()); ++gi) {
    const int li = 1 + 2 * gi;  // the positive letter of generator gi
    ActionEvaluator ev;
    ev.sys = &sys;
    ev.g = spec.element(spec.word_gens[gi]);
    ev.target.assign(sys.order.size(), -1);
    ev.shift.assign(sys.order.size(), 0);
    for (std::size_t p = 0; p < sys.order.size(); ++p) {
      const std::uint32_t v = sys.order[p];
      if (ttab[li][v] < 0) continue;
      const std::uint32_t q = sys.pos_of[static_cast<std::uint32_t>(ttab[li][v])];
      if (q == UINT32_MAX) continue;
      ev.target[p] = static_cast<std::int64_t>(q);
      ev.shift[p] = ltab[li][v];
    }
    out.generators.push_back(std::move(ev));
  }
  return out;
}

ActionEvaluator make_evaluator(const IntervalSystem& sys, const GroupElement& g) {
  ActionEvaluator ev;
  ev.sys = &sys;
  ev.g = g;
  ev.target.assign(sys.order.size(), -1);
  ev.shift.assign(sys.order.size(), 0);
  for (std::size_t p = 0; p < sys.order.size(); ++p) {
    const std::uint32_t v = sys.order[p];
    const GroupElement moved = mul(g, sys.sball.reps[v]);
    auto tgt = sys.sball.coset_of(moved);
    if (!tgt || sys.sball.dist[*tgt] > sys.R) continue;
    const std::uint32_t q = sys.pos_of[*tgt];
    if (q == UINT32_MAX) continue;
    const Int l = cocycle(*sys.spec, *sys.sub, sys.sball, g, v);
    if (std::abs(static_cast<double>(to_i64(l))) >= sys.A[p])
      fail(ErrorKind::Config,
           "make_evaluator: |l(g,v)| >= A_v at coset " + std::to_string(v) +
               "; a larger C0 is required");
    ev.target[p] = q;
    ev.shift[p] = to_i64(l);
  }
  return ev;
}

namespace {

// the Tsuboi rule applies to I_{v,j} when j-1, j, j+l-1, j+l all lie in
// the realized range [-J, J]
bool rule_applies(const IntervalSystem& sys, std::int64_t j, std::int64_t l) {
  return j - 1 >= -sys.J && j + l - 1 >= -sys.J && j + l <= sys.J;
}

}  // namespace

bool ActionEvaluator::frozen_at(double x) const {
  auto [p, j] = sys->locate(x);
  return target[p] < 0 || !rule_applies(*sys, j, shift[p]);
}

double ActionEvaluator::eval(double x) const {
  if (x <= 0 || x >= sys->total) return x;
  auto [p, j] = sys->locate(x);
  if (target[p] < 0 || !rule_applies(*sys, j, shift[p])) return x;  // frozen
  const std::size_t q = static_cast<std::size_t>(target[p]);
  const std::int64_t l = shift[p];
  const TsuboiMap m = tsuboi_map(sys->cell(p, j - 1), sys->cell(p, j),
                                 sys->cell(q, j + l - 1), sys->cell(q, j + l));
  return m.eval(x);
}

double ActionEvaluator::deriv(double x) const {
  auto [p, j] = sys->locate(x);
  if (target[p] < 0 || !rule_applies(*sys, j, shift[p])) return 1.0;
  const std::size_t q = static_cast<std::size_t>(target[p]);
  const std::int64_t l = shift[p];
  const TsuboiMap m = tsuboi_map(sys->cell(p, j - 1), sys->cell(p, j),
                                 sys->cell(q, j + l - 1), sys->cell(q, j + l));
  return m.deriv(x);
}

double ActionEvaluator::deriv_side(double x, int side) const {
  auto [p, j] = sys->locate(x);
  if (side < 0 && std::abs(x - sys->cell(p, j).left) == 0 && j - 1 >= -sys->J) --j;
  if (target[p] < 0 || !rule_applies(*sys, j, shift[p])) return 1.0;
  const std::size_t q = static_cast<std::size_t>(target[p]);
  const std::int64_t l = shift[p];
  const TsuboiMap m = tsuboi_map(sys->cell(p, j - 1), sys->cell(p, j),
                                 sys->cell(q, j + l - 1), sys->cell(q, j + l));
  return m.deriv(x);
}

HolderEstimate holder_constant(const ActionEvaluator& ev, std::size_t pos,
                               double alpha, int grid_per_interval) {
  const IntervalSystem& sys = *ev.sys;
  HolderEstimate est;
  if (ev.target[pos] < 0) return est;  // frozen coset: identity, all zeros
  const std::int64_t l = ev.shift[pos];
  const std::size_t q = static_cast<std::size_t>(ev.target[pos]);

  const std::int64_t jlo = -sys.J + 1 + std::max<std::int64_t>(0, -l);
  const std::int64_t jhi = sys.J - std::max<std::int64_t>(0, l);
  if (jhi < jlo) return est;

  std::vector<double> xs, qs;  // grid points and log Dg values
  xs.reserve(static_cast<std::size_t>(jhi - jlo + 1) * (grid_per_interval + 1) + 1);
  qs.reserve(xs.capacity());
  for (std::int64_t j = jlo; j <= jhi; ++j) {
    const Interval I = sys.cell(pos, j);
    // left endpoint: both one-sided derivatives equal |I_{u,k-1}| / |I_{v,j-1}|
    xs.push_back(I.left);
    qs.push_back(std::log(sys.length(q, j + l - 1) / sys.length(pos, j - 1)));
    const TsuboiMap m = tsuboi_map(sys.cell(pos, j - 1), I,
                                   sys.cell(q, j + l - 1), sys.cell(q, j + l));
    for (int k = 1; k <= grid_per_interval; ++k) {
      // Chebyshev-spaced interior points
      const double u = 0.5 - 0.5 * std::cos(M_PI * k / (grid_per_interval + 1));
      const double x = I.left + u * I.len();
      const double d = m.deriv(x);
      if (d <= 0)
        fail(ErrorKind::Validation, "holder_constant: nonpositive derivative");
      xs.push_back(x);
      qs.push_back(std::log(d));
    }
  }
  {
    const Interval I = sys.cell(pos, jhi);
    xs.push_back(I.right);
    qs.push_back(std::log(sys.length(q, jhi + l) / sys.length(pos, jhi)));
  }

  double qmin = qs[0], qmax = qs[0];
  for (double v : qs) qmin = std::min(qmin, v), qmax = std::max(qmax, v);
  est.distortion = qmax - qmin;

  // pair scan restricted per dyadic distance shell to the q-extrema ahead
  // of each point (sparse range-argmax/argmin tables); the estimate is a
  // max over grid pairs within 2^alpha of the all-pairs maximum
  const std::size_t n = xs.size();
  int levels = 1;
  while ((std::size_t(1) << levels) <= n) ++levels;
  std::vector<std::vector<std::uint32_t>> amax(levels), amin(levels);
  amax[0].resize(n);
  amin[0].resize(n);
  for (std::size_t i = 0; i < n; ++i) amax[0][i] = amin[0][i] = static_cast<std::uint32_t>(i);
  for (int k = 1; k < levels; ++k) {
    const std::size_t len = std::size_t(1) << k;
    if (len > n) break;
    amax[k].resize(n - len + 1);
    amin[k].resize(n - len + 1);
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::uint32_t a = amax[k - 1][i], b = amax[k - 1][i + len / 2];
      amax[k][i] = qs[a] >= qs[b] ? a : b;
      const std::uint32_t c = amin[k - 1][i], d = amin[k - 1][i + len / 2];
      amin[k][i] = qs[c] <= qs[d] ? c : d;
    }
  }
  auto range_arg = [&](std::size_t lo, std::size_t hi, bool want_max) {
    // arg of the extreme of qs on [lo, hi)
    int k = 0;
    while ((std::size_t(2) << k) <= hi - lo) ++k;
    const auto& tab = want_max ? amax[k] : amin[k];
    const std::uint32_t a = tab[lo], b = tab[hi - (std::size_t(1) << k)];
    if (want_max) return qs[a] >= qs[b] ? a : b;
    return qs[a] <= qs[b] ? a : b;
  };

  double best = 0;
  std::uint64_t scanned = 0;
  auto consider = [&](std::size_t i, std::size_t j) {
    const double dx = xs[j] - xs[i];
    if (dx <= 0) return;
    best = std::max(best, std::abs(qs[j] - qs[i]) / std::pow(dx, alpha));
    ++scanned;
  };
  const double dmin = xs[1] - xs[0];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    consider(i, i + 1);
    double D = std::max(dmin, (xs[i + 1] - xs[i]) / 2);
    std::size_t lo = i + 1;
    while (lo < n) {
      const std::size_t hi =
          std::upper_bound(xs.begin() + lo, xs.end(), xs[i] + 2 * D) - xs.begin();
      if (hi > lo) {
        consider(i, range_arg(lo, hi, true));
        consider(i, range_arg(lo, hi, false));
        consider(i, hi - 1);
      }
      lo = hi;
      D *= 2;
    }
  }
  est.kappa_alpha = best;
  est.pairs_scanned = scanned;

  const double Lv = total_length(sys.A[pos], sys.eps);
  const double Lu = total_length(sys.A[q], sys.eps);
  est.formula_bound =
      (std::abs(std::log(Lv / Lu)) + std::abs(static_cast<double>(l)) / sys.A[pos]) /
          std::pow(Lv, alpha) +
      1e-300;
  return est;
}

std::vector<double> derivative_growth(const ActionEvaluator& ev_c, int M) {
  const IntervalSystem& sys = *ev_c.sys;
  const std::size_t p0 = sys.pos_of[0];  // base coset [e]
  if (ev_c.target[p0] != static_cast<std::int64_t>(p0) || ev_c.shift[p0] == 0)
    fail(ErrorKind::Precondition,
         "derivative_growth: the element must shift the base coset fiber");
  const std::int64_t step = ev_c.shift[p0];
  std::vector<double> sup(M + 1, 1.0);
  bool any = false;
  for (std::int64_t j = -sys.J; j <= sys.J; ++j) {
    if (j + static_cast<std::int64_t>(M) * step > sys.J ||
        j + static_cast<std::int64_t>(M) * step < -sys.J)
      continue;
    any = true;
    const double base = sys.length(p0, j);
    for (int m = 1; m <= M; ++m)
      sup[m] = std::max(sup[m], sys.length(p0, j + m * step) / base);
  }
  if (!any)
    fail(ErrorKind::Budget,
         "derivative_growth: every orbit escapes the truncation; the escaping "
         "index exceeds J = " + std::to_string(sys.J));
  return sup;
}

double alpha_lower_formula(double C0, double alpha, double alpha_prime,
                           double r) {
  // |log L(A_v) - log L(A_u)| / L(A_v)^alpha' along the ray, with the
  // summable profile L = (C0 + r)^(-1/alpha)
  return std::log((C0 + r + 1) / (C0 + r)) / alpha *
         std::pow(C0 + r, alpha_prime / alpha);
}

}  // namespace nilreg
