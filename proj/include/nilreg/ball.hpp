#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "nilreg/group.hpp"

namespace nilreg {

// One symbol of the symmetric generating set F: a generator or its inverse,
// or the identity (gen == -1). Index 0 is always the identity letter.
struct Letter {
  int gen = -1;
  int sign = +1;
};

struct GenSet {
  const GroupSpec* spec = nullptr;
  std::vector<std::string> names;       // generator names, in catalog order
  std::vector<Letter> letters;          // e, g0, g0^-1, g1, g1^-1, ...
  std::vector<GroupElement> elems;      // parallel to letters
  std::vector<int> inverse_index;

  int size() const { return static_cast<int>(letters.size()); }
  std::string letter_name(int i) const;
};

GenSet make_genset(const GroupSpec& spec, const std::vector<std::string>& names);

struct BallConfig {
  int workers = 1;
  std::uint64_t max_elements = 200'000'000;
};

class BallBudgetError : public Error {
 public:
  BallBudgetError(int completed, std::string msg)
      : Error(ErrorKind::Budget, std::move(msg)), completed_radius(completed) {}
  int completed_radius;
};

// Enumerated word-metric ball. Store order is canonical: layer by layer,
// each layer sorted by element key, so it is bit-identical across worker
// counts.
struct BallRecord {
  const GroupSpec* spec = nullptr;
  GenSet fset;
  int radius = 0;
  std::vector<std::uint64_t> counts;        // counts[n] = #B_n
  std::vector<GroupElement> elems;
  std::vector<std::uint16_t> dist;
  std::vector<std::int32_t> parent_letter;  // -1 at the identity
  std::unordered_map<std::string, std::uint32_t> index;

  std::optional<std::uint32_t> find(const GroupElement& g) const;
  std::uint64_t size() const { return elems.size(); }
};

BallRecord ball(const GroupSpec& spec, const std::vector<std::string>& gen_names,
                int radius, const BallConfig& cfg = {});

// counts_H[n] = #(B_n ∩ H).
std::vector<std::uint64_t> relative_count(const BallRecord& ball,
                                          const SubgroupSpec& sub);

// Letters multiplying to g, first-applied first: g = f_{w_k} ... f_{w_1}.
// Length equals dist(g); deterministic via the parent links.
std::vector<int> geodesic_word(const BallRecord& ball, const GroupElement& g);

// Product f_{w_k} ... f_{w_1} of a letter sequence (first-applied first).
GroupElement left_product(const GenSet& fs, const std::vector<int>& word);

// Binary store cache, keyed by (group, F, radius); save writes a compact
// dump, load restores a record bit-identical to a fresh enumeration.
void save_ball(const BallRecord& ball, const std::string& path);
BallRecord load_ball(const GroupSpec& spec, const std::string& path);
std::string ball_cache_name(const GroupSpec& spec,
                            const std::vector<std::string>& gen_names, int radius,
                            std::uint64_t salt = 0);

}  // namespace nilreg
