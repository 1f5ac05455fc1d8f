#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nilreg/ball.hpp"
#include "nilreg/heis.hpp"
#include "nilreg/rng.hpp"
#include "nilreg/schreier.hpp"

namespace nilreg {

// Uniform draws from B_n together with a deterministic decomposition into
// exactly n letters (identity-padded), letters listed first-applied first.
class BallSampler {
 public:
  virtual ~BallSampler() = default;
  virtual int max_radius() const = 0;
  virtual GroupElement draw(int n, Rng& rng, std::vector<int>* letters) const = 0;
};

// Backed by an enumerated BallRecord (any group); geodesic word + e-padding.
std::unique_ptr<BallSampler> store_sampler(const BallRecord& ball);

// Exact sampler for the standard 3x3 group via the layered-interval oracle;
// reaches radii far beyond what a store can hold. Returns nullptr when the
// generating set is not the standard one.
std::unique_ptr<BallSampler> heis_sampler(const GroupSpec& spec,
                                          const GenSet& fs, int max_radius);

// Block schedule n_j = 2^j: block j occupies steps (s_{j-1}, s_j],
// s_j = 2^{j+1} - 1.
struct ProcessTrace {
  std::uint64_t seed = 0;
  std::vector<int> letters;              // w_1..w_N
  std::vector<GroupElement> partial;     // g_0..g_N, g_n = f_{w_n} g_{n-1}
  std::vector<int> block_start;          // step index where each block begins
  // filled by the dynamical variants
  std::vector<std::uint32_t> coset;      // v_n
  std::vector<double> lengths;           // |g_n(I_c)|
  std::vector<double> points;            // g_n(x_0) for the right variant
};

ProcessTrace sample_path(const GroupSpec& spec, const GenSet& fs,
                         const BallSampler& sampler, int N, std::uint64_t seed);

// Interleaves deterministic most-moving-right blocks F_{n_j} with the
// uniform blocks; asserts g_n(x_0) >= x_0 at every step.
using PointAction = std::function<double(int letter, double x)>;

ProcessTrace sample_path_right(const GroupSpec& spec, const GenSet& fs,
                               const BallSampler& sampler,
                               const PointAction& action, double x0, int N,
                               std::uint64_t seed);

struct CriticalConfig {
  int retries = 20;
  double C1 = 0;  // 0: use the frozen calibration constants
  double C2 = 0;
  std::uint64_t base_seed = 20240601;
};

struct CriticalResult {
  ProcessTrace trace;
  int attempts = 0;
  double sum_powers = 0;     // sum of |g_n(I_c)|^{1/d}
  double final_length = 0;   // |g_N(I_c)|
  double bound_sum = 0;      // C1 log^{1-1/d} N
  double bound_final = 0;    // C2 / N^d
};

// Frozen at the N = 64 calibration (3x the empirical means over 200 seeds).
extern const double kCriticalC1;
extern const double kCriticalC2;
// Coset length profile used by the critical trace.
double critical_length(double C0, double alpha_profile, int dist);

// Samples paths until one satisfies both critical bounds; the coset walk and
// lengths come from the Schreier ball and the witness length profile.
CriticalResult critical_trace(const GroupSpec& spec, const SubgroupSpec& sub,
                              const SchreierBall& sball, const BallSampler& sampler,
                              int d, double alpha_profile, double C0, int N,
                              const CriticalConfig& cfg = {});

struct SummabilityReport {
  std::vector<double> partial_sums;   // S_N per trace
  std::vector<double> mean_powers;    // ensemble mean of l(v_n)^alpha per n
  double fitted_decay = 0;            // log-log slope of the mean over [N/3,N]
};

SummabilityReport summability_report(
    const std::vector<ProcessTrace>& traces,
    const std::function<double(std::uint32_t)>& coset_length, double alpha);

}  // namespace nilreg
