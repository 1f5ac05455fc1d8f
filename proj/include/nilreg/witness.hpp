#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilreg/group.hpp"

namespace nilreg {

// Verifies a catalog stabilizer-subgroup witness clause by clause:
// mu(c) != 0, gcd of mu over K's generators is 1, kernel(mu) covers H's
// generators, H ∩ <c> = {e} on the checked data, and for every chain step
// the functional is a homomorphism on generator pairs, vanishes on the next
// group, has gcd 1, and the next group is normal (generator conjugates).
VerifyReport verify_witness(const GroupSpec& spec, const WitnessSpec& w);

// 1 + 1/min_K gr(G/K) over the supplied (verified) witnesses. A degree-0
// witness yields the distinguished unbounded value.
struct CritValue {
  bool unbounded = false;
  long long num = 0, den = 1;  // exact rational when bounded

  std::string str() const;
  friend bool operator==(const CritValue& a, const CritValue& b) {
    if (a.unbounded || b.unbounded) return a.unbounded == b.unbounded;
    return a.num * b.den == b.num * a.den;
  }
};

CritValue crit_for_element(const GroupSpec& spec, const std::string& central,
                           const std::vector<std::string>& witness_names,
                           std::string* attained_by = nullptr);

struct CritResult {
  std::string group;
  CritValue value;
  // per declared central element: min Schreier degree and which witness wins
  struct PerElement {
    std::string element;
    int min_degree = 0;
    std::string witness;
    CritValue value;
  };
  std::vector<PerElement> per_element;
  std::string provenance;  // "over declared candidates" note

  std::string to_json() const;
};

// Max over the declared central candidates; the same value applies to the
// half-open interval and the circle.
CritResult crit_interval(const GroupSpec& spec);

struct AbelianBound {
  bool is_abelian = false;
  int degree = 0;  // Schreier degree of <H, Z(G)> (catalog-supplied join)
};

AbelianBound abelian_stab_bound(const GroupSpec& spec, const SubgroupSpec& sub);

}  // namespace nilreg
