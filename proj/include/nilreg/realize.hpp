#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilreg/flow.hpp"
#include "nilreg/schreier.hpp"

namespace nilreg {

// Interval lengths over the coset space: A_v solves
// total_length(A_v) = (C0 + ||v||)^(-1/alpha).
struct RealizeParams {
  double alpha = 0.75;
  double eps = 0;   // 0: auto from the fitted cocycle degree, 1/(a e) > d'+1
  double C0 = 0;    // 0: auto, start at 2 and double until |l(g,v)| < A_v
  int R = 8;        // Schreier truncation radius
  std::int64_t J = 0;  // 0: auto, J_mult * max A_v (core parts complete)
  double J_mult = 4.0;
  int workers = 1;
};

// Integer shift in the pi-fiber when g maps coset v to g(v); fails with a
// table-corruption error if the conjugated element leaves K.
Int cocycle(const GroupSpec& spec, const SubgroupSpec& sub,
            const SchreierBall& sball, const GroupElement& g, std::uint32_t v);

// Truncated interval realization over a Schreier ball: per coset the lengths
// L_{A_v,eps}(j) for |j| <= J laid out adjacently, cosets in line order.
class IntervalSystem {
 public:
  const GroupSpec* spec = nullptr;
  const SubgroupSpec* sub = nullptr;
  SchreierBall sball;
  double alpha = 0, eps = 0, C0 = 0;
  std::int64_t J = 0;
  int R = 0;
  int safe_radius = 0;     // R - 1, the freeze-free interior
  bool core_complete = true;  // J >= max A_v (automatic J always is)
  int cocycle_degree = 0;  // fitted d'
  Int p_c = 1;

  std::vector<std::uint32_t> order;    // coset ids in line order
  std::vector<std::uint32_t> pos_of;   // coset id -> position in `order`
  std::vector<double> A;               // by position
  std::vector<std::vector<double>> pts;  // per position: 2J+2 endpoints
  double total = 0;

  std::size_t cosets() const { return order.size(); }
  double coset_len(std::size_t p) const { return pts[p].back() - pts[p].front(); }
  Interval cell(std::size_t p, std::int64_t j) const;  // I_{v,j}, |j| <= J
  double length(std::size_t p, std::int64_t j) const;
  // position of x: coset slot and j index
  std::pair<std::size_t, std::int64_t> locate(double x) const;
};

// Piecewise Tsuboi dispatch for one group element. Cosets outside the
// truncation (and j indices whose images fall off the realized range) are
// frozen to the identity; metadata records the safe interior.
class ActionEvaluator {
 public:
  const IntervalSystem* sys = nullptr;
  GroupElement g;
  std::vector<std::int64_t> target;  // by position; -1 = frozen coset
  std::vector<std::int64_t> shift;   // l(g, v)

  double eval(double x) const;
  double deriv(double x) const;
  // one-sided derivative at x; side < 0 approaches from the left
  double deriv_side(double x, int side) const;
  bool frozen_at(double x) const;
};

struct RealizeResult {
  IntervalSystem system;
  std::vector<ActionEvaluator> generators;  // aligned with spec.word_gens
};

RealizeResult build_system(const GroupSpec& spec, const SubgroupSpec& sub,
                           const RealizeParams& params);

// Evaluator for an arbitrary group element over an existing system.
ActionEvaluator make_evaluator(const IntervalSystem& sys, const GroupElement& g);

struct HolderEstimate {
  double kappa_alpha = 0;  // max grid-pair quotient of log Dg
  double distortion = 0;   // osc of log Dg on the scanned range
  double formula_bound = 0;
  std::uint64_t pairs_scanned = 0;
};

// Grid estimator over I_v: all realized endpoints plus Chebyshev-interior
// points per subinterval; pair scan with pruning.
HolderEstimate holder_constant(const ActionEvaluator& ev, std::size_t pos,
                               double alpha, int grid_per_interval = 8);

// sup |D c^m| for m = 0..M over the base coset, from telescoped endpoint
// products and interval-image ratios.
std::vector<double> derivative_growth(const ActionEvaluator& ev_c, int M);

// Closed-form Eq-alpha-lower value along a geodesic ray at radius r, for the
// (summable) alpha-profile evaluated at Holder exponent alpha_prime.
double alpha_lower_formula(double C0, double alpha, double alpha_prime,
                           double r);

}  // namespace nilreg
