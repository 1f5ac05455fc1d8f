#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "nilreg/ball.hpp"

namespace nilreg {

struct SchreierConfig {
  int workers = 1;
  // layer budget for the quadratic no-canonicalizer fallback
  std::uint64_t fallback_layer_budget = 100'000;
  std::uint64_t max_cosets = 50'000'000;
  // force the pairwise-equality path even when a canonicalizer exists
  bool force_fallback = false;
  // keep h_v representatives and class leaders; switch off for very large
  // balls where only coset ids and distances are needed
  bool store_reps = true;
};

// Ball of the Schreier graph G/K. Cosets are keyed by canonical
// representative when the subgroup supplies a canonicalizer, otherwise by a
// class leader found through pairwise g1^-1 g2 ∈ K tests.
struct SchreierBall {
  const GroupSpec* spec = nullptr;
  const SubgroupSpec* sub = nullptr;
  GenSet fset;
  int radius = 0;
  std::vector<std::uint64_t> counts;
  std::vector<GroupElement> reps;   // h_v, built from BFS letters (minimal length)
  std::vector<GroupElement> keys;   // canonical representative / class leader
  std::vector<std::uint16_t> dist;
  std::vector<std::int32_t> parent_letter;
  std::unordered_map<std::string, std::uint32_t> index;

  std::uint64_t size() const { return dist.size(); }
  // Coset id of g's class, if within the enumerated ball.
  std::optional<std::uint32_t> coset_of(const GroupElement& g) const;
};

SchreierBall schreier_ball(const GroupSpec& spec, const SubgroupSpec& sub,
                           const std::vector<std::string>& gen_names, int radius,
                           const SchreierConfig& cfg = {});

}  // namespace nilreg
