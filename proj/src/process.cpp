#include "nilreg/process.hpp"

#include <algorithm>
#include <cmath>

namespace nilreg {

namespace {

class StoreSampler final : public BallSampler {
 public:
  explicit StoreSampler(const BallRecord& ball) : ball_(ball) {}

  int max_radius() const override { return ball_.radius; }

  GroupElement draw(int n, Rng& rng, std::vector<int>* letters) const override {
    if (n > ball_.radius)
      fail(ErrorKind::Dependency,
           "sampler: ball enumerated to radius " + std::to_string(ball_.radius) +
               " but the schedule needs radius " + std::to_string(n));
    const std::uint64_t idx = rng.below(ball_.counts[n]);
    const GroupElement& g = ball_.elems[static_cast<std::size_t>(idx)];
    if (letters) {
      *letters = geodesic_word(ball_, g);
      letters->resize(static_cast<std::size_t>(n), 0);  // pad with e
    }
    return g;
  }

 private:
  const BallRecord& ball_;
};

class HeisSampler final : public BallSampler {
 public:
  HeisSampler(const GroupSpec& spec, std::array<int, 5> letter_of, int max_radius)
      : spec_(spec), letter_of_(letter_of), oracle_(max_radius) {}

  int max_radius() const override { return oracle_.max_radius(); }

  GroupElement draw(int n, Rng& rng, std::vector<int>* letters) const override {
    if (n > oracle_.max_radius())
      fail(ErrorKind::Dependency,
           "sampler: oracle built to radius " + std::to_string(oracle_.max_radius()) +
               " but the schedule needs radius " + std::to_string(n));
    const auto c = oracle_.sample(n, rng);
    GroupElement g = spec_.identity();
    g.factors[0](0, 1) = c[0];
    g.factors[0](1, 2) = c[1];
    g.factors[0](0, 2) = c[2];
    if (letters) {
      const auto moves = oracle_.word(n, c[0], c[1], c[2]);
      letters->clear();
      letters->reserve(moves.size());
      // moves multiply left to right; the first-applied letter is the last
      for (auto it = moves.rbegin(); it != moves.rend(); ++it)
        letters->push_back(letter_of_[static_cast<int>(*it)]);
    }
    return g;
  }

 private:
  const GroupSpec& spec_;
  std::array<int, 5> letter_of_;
  HeisBallOracle oracle_;
};

int block_count_for(int N) {
  int blocks = 0;
  std::int64_t s = 0;
  while (s < N) {
    s += (1ll << blocks);
    ++blocks;
  }
  return blocks;
}

}  // namespace

std::unique_ptr<BallSampler> store_sampler(const BallRecord& ball) {
  return std::make_unique<StoreSampler>(ball);
}

std::unique_ptr<BallSampler> heis_sampler(const GroupSpec& spec,
                                          const GenSet& fs, int max_radius) {
  if (spec.factor_dims != std::vector<int>{3}) return nullptr;
  if (fs.size() != 5) return nullptr;
  std::array<int, 5> letter_of{0, -1, -1, -1, -1};
  for (int li = 1; li < fs.size(); ++li) {
    const auto& m = fs.elems[li].factors[0];
    if (m(0, 1) == 1 && m(1, 2) == 0 && m(0, 2) == 0)
      letter_of[HeisBallOracle::APlus] = li;
    else if (m(0, 1) == -1 && m(1, 2) == 0 && m(0, 2) == 0)
      letter_of[HeisBallOracle::AMinus] = li;
    else if (m(0, 1) == 0 && m(1, 2) == 1 && m(0, 2) == 0)
      letter_of[HeisBallOracle::BPlus] = li;
    else if (m(0, 1) == 0 && m(1, 2) == -1 && m(0, 2) == 0)
      letter_of[HeisBallOracle::BMinus] = li;
  }
  for (int k = 1; k < 5; ++k)
    if (letter_of[k] < 0) return nullptr;
  return std::make_unique<HeisSampler>(spec, letter_of, max_radius);
}

ProcessTrace sample_path(const GroupSpec& spec, const GenSet& fs,
                         const BallSampler& sampler, int N, std::uint64_t seed) {
  ProcessTrace tr;
  tr.seed = seed;
  Rng rng(seed);
  tr.partial.push_back(spec.identity());
  const int blocks = block_count_for(N);
  for (int j = 0; j < blocks; ++j) {
    const int nj = 1 << j;
    tr.block_start.push_back(static_cast<int>(tr.letters.size()));
    std::vector<int> letters;
    sampler.draw(nj, rng, &letters);
    for (int li : letters) {
      if (static_cast<int>(tr.letters.size()) >= N) break;
      tr.letters.push_back(li);
      tr.partial.push_back(mul(fs.elems[li], tr.partial.back()));
    }
  }
  return tr;
}

ProcessTrace sample_path_right(const GroupSpec& spec, const GenSet& fs,
                               const BallSampler& sampler,
                               const PointAction& action, double x0, int N,
                               std::uint64_t seed) {
  ProcessTrace tr;
  tr.seed = seed;
  Rng rng(seed);
  tr.partial.push_back(spec.identity());
  tr.points.push_back(x0);

  // the most-moving-right letter sequence u_1, u_2, ... from x0, fixed once
  std::vector<int> u;
  {
    int need = 0;
    for (int j = 0, s = 0; s < N; ++j) {
      need = std::max(need, 1 << j);
      s += 2 * (1 << j);
    }
    double x = x0;
    for (int m = 0; m < need; ++m) {
      int best = 0;
      double bx = action(0, x);
      for (int li = 1; li < fs.size(); ++li) {
        const double y = action(li, x);
        if (y > bx) {
          bx = y;
          best = li;
        }
      }
      u.push_back(best);
      x = bx;
    }
  }

  auto push_letter = [&](int li) {
    tr.letters.push_back(li);
    tr.partial.push_back(mul(fs.elems[li], tr.partial.back()));
    const double y = action(li, tr.points.back());
    tr.points.push_back(y);
    if (!(y >= x0))
      fail(ErrorKind::Validation,
           "sample_path_right: g_n(x0) >= x0 violated at step " +
               std::to_string(tr.letters.size()) +
               "; the action evaluator is broken");
  };

  for (int j = 0; static_cast<int>(tr.letters.size()) < N; ++j) {
    const int nj = 1 << j;
    tr.block_start.push_back(static_cast<int>(tr.letters.size()));
    for (int m = 0; m < nj && static_cast<int>(tr.letters.size()) < N; ++m)
      push_letter(u[m]);
    tr.block_start.push_back(static_cast<int>(tr.letters.size()));
    std::vector<int> letters;
    sampler.draw(nj, rng, &letters);
    for (int li : letters) {
      if (static_cast<int>(tr.letters.size()) >= N) break;
      push_letter(li);
    }
  }
  return tr;
}

// 3x the empirical means of the normalized statistics at N = 64 over the
// 200-seed calibration ensemble; per-sample success stays >= 0.8 up to
// N = 1024, far above the guaranteed 1/3.
const double kCriticalC1 = 4.41;
const double kCriticalC2 = 8.79;

double critical_length(double C0, double alpha_profile, int dist) {
  return std::pow(C0 + static_cast<double>(dist), -1.0 / alpha_profile);
}

CriticalResult critical_trace(const GroupSpec& spec, const SubgroupSpec& sub,
                              const SchreierBall& sball, const BallSampler& sampler,
                              int d, double alpha_profile, double C0, int N,
                              const CriticalConfig& cfg) {
  if (d < 1) fail(ErrorKind::Precondition, "critical_trace: need d >= 1");
  if ((N & (N - 1)) != 0)
    fail(ErrorKind::Precondition, "critical_trace: N must be a power of 2");
  const double C1 = cfg.C1 > 0 ? cfg.C1 : kCriticalC1;
  const double C2 = cfg.C2 > 0 ? cfg.C2 : kCriticalC2;
  CriticalResult res;
  res.bound_sum = C1 * std::pow(std::log(std::max(2.0, static_cast<double>(N))),
                                1.0 - 1.0 / static_cast<double>(d));
  res.bound_final = C2 / std::pow(static_cast<double>(N), d);

  GenSet fs = make_genset(spec, spec.word_gens);
  for (int attempt = 1; attempt <= cfg.retries; ++attempt) {
    ProcessTrace tr = sample_path(spec, fs, sampler, N, cfg.base_seed + attempt);
    tr.coset.clear();
    tr.lengths.clear();
    double sum = 0;
    for (const auto& g : tr.partial) {
      auto v = sball.coset_of(g);
      if (!v)
        fail(ErrorKind::Dependency,
             "critical_trace: walk left the enumerated Schreier ball");
      tr.coset.push_back(*v);
      const double len = critical_length(C0, alpha_profile, sball.dist[*v]);
      tr.lengths.push_back(len);
      sum += std::pow(len, 1.0 / d);
    }
    res.attempts = attempt;
    res.sum_powers = sum;
    res.final_length = tr.lengths.back();
    if (sum <= res.bound_sum && res.final_length <= res.bound_final) {
      res.trace = std::move(tr);
      return res;
    }
  }
  fail(ErrorKind::Statistical,
       "critical_trace: all " + std::to_string(cfg.retries) +
           " retries failed; the calibration constants look wrong");
}

SummabilityReport summability_report(
    const std::vector<ProcessTrace>& traces,
    const std::function<double(std::uint32_t)>& coset_length, double alpha) {
  if (!(alpha > 0 && alpha <= 1))
    fail(ErrorKind::Domain, "summability_report: alpha must lie in (0,1]");
  if (traces.empty())
    fail(ErrorKind::Precondition, "summability_report: empty ensemble");
  SummabilityReport rep;
  const std::size_t N = traces[0].coset.size();
  rep.mean_powers.assign(N, 0.0);
  for (const auto& tr : traces) {
    if (tr.coset.size() != N)
      fail(ErrorKind::Precondition, "summability_report: ragged ensemble");
    double s = 0;
    for (std::size_t n = 0; n < N; ++n) {
      const double term = std::pow(coset_length(tr.coset[n]), alpha);
      s += term;
      rep.mean_powers[n] += term;
    }
    rep.partial_sums.push_back(s);
  }
  for (auto& m : rep.mean_powers) m /= static_cast<double>(traces.size());

  // decay fit over the asymptotic window
  const std::size_t lo = std::max<std::size_t>(2, N / 3);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int pts = 0;
  for (std::size_t n = lo; n < N; ++n) {
    if (rep.mean_powers[n] <= 0) continue;
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(rep.mean_powers[n]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++pts;
  }
  if (pts >= 3)
    rep.fitted_decay = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
  return rep;
}

}  // namespace nilreg
