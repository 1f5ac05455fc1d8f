#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilreg/common.hpp"

namespace nilreg {

// Element of a catalog group: one unitriangular integer matrix per direct
// factor. Diagonal 1, below-diagonal 0; equality is entrywise.
struct GroupElement {
  std::vector<IntMat> factors;

  bool operator==(const GroupElement& o) const;
  bool is_identity() const;

  // Canonical byte key of the strictly-upper entries; doubles as the hash
  // identity for the enumeration stores.
  std::string key() const;
  static GroupElement from_key(const std::vector<int>& factor_dims,
                               const std::string& key);
};

struct EntryPos {
  int factor = 0;
  int row = 0;
  int col = 0;
};

// Integer-valued functional: sum of coefficient * entry over listed
// positions. Evaluates to 0 on the identity by construction.
struct LinearFunctional {
  struct Term {
    EntryPos pos;
    Int coeff;
  };
  std::vector<Term> terms;

  Int eval(const GroupElement& g) const;
  bool empty() const { return terms.empty(); }
};

// Deterministic coset canonicalizer: right-multiply by powers of a subgroup
// generator to zero one entry, in the listed order.
struct CanonStep {
  std::string gen;
  EntryPos entry;
};

struct SubgroupSpec {
  std::string name;
  // Membership predicate: conjunction of entry == 0 and functional == 0.
  std::vector<EntryPos> zero_entries;
  std::vector<LinearFunctional> zero_functionals;
  std::vector<std::string> gens;
  // Generator lists for H_j = H ∩ G_j, j = 1..m (may be absent).
  std::optional<std::vector<std::vector<std::string>>> hj_gens;
  // Z-quotient functional pi: H -> Z (kernel = the witness H), with the
  // designated central element it pairs with.
  std::optional<LinearFunctional> pi;
  std::string pi_center;
  std::vector<CanonStep> canonicalizer;
  // Orders cosets on the line for interval layouts (optional).
  std::optional<LinearFunctional> order_fn;
  // Name of the catalog subgroup <H, Z(G)> (for the abelian bound).
  std::string join_center;
};

struct ChainStep {
  std::string sub;           // subgroup name; the chain runs G ▷ ... ▷ K
  LinearFunctional lambda;   // Z-quotient on the previous chain group
};

struct WitnessSpec {
  std::string name;
  std::string central;   // named central element c
  std::string K;
  std::string H;
  LinearFunctional mu;   // K -> Z with kernel H
  std::vector<ChainStep> chain;  // top-down; last entry is K itself
};

struct CentralCandidate {
  std::string element;
  std::vector<std::string> witnesses;
  std::string rationale;
};

// One level of the lower central series: the G_j predicate (entries that
// vanish), the free rank d_j, and the projection phi_j^T as d_j functionals.
struct LevelSpec {
  std::vector<EntryPos> zero_entries;
  int rank = 0;
  std::vector<LinearFunctional> proj;
};

struct GroupSpec {
  std::string name;
  std::vector<int> factor_dims;
  int nil_class = 1;
  bool abelian = false;

  std::vector<std::string> gen_names;
  std::map<std::string, GroupElement> elements;  // generators + named words
  std::vector<std::string> word_gens;            // default F (level-1 set)
  std::vector<std::vector<std::string>> graded;  // f_{i,j} table, j = 1..m
  std::vector<LevelSpec> levels;                 // j = 1..m

  std::vector<SubgroupSpec> subgroups;
  std::vector<WitnessSpec> witnesses;
  std::vector<CentralCandidate> central_candidates;

  GroupElement identity() const;
  const GroupElement& element(const std::string& name) const;
  const SubgroupSpec& subgroup(const std::string& name) const;
  const WitnessSpec& witness(const std::string& name) const;

  // G_j membership, j = 1..m+1 (level m+1 accepts only the identity).
  bool in_level(int j, const GroupElement& g) const;
  int total_entries() const;
};

GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
GroupElement commutator(const GroupElement& a, const GroupElement& b);
GroupElement pow(const GroupElement& a, const Int& k);

bool is_member(const SubgroupSpec& sub, const GroupElement& g);

// phi_j^T(g) as d_j integers; g must satisfy the G_j predicate.
std::vector<Int> project(const GroupSpec& spec, int j, const GroupElement& g);

GroupElement canonical_rep(const GroupSpec& spec, const SubgroupSpec& sub,
                           const GroupElement& g);

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  std::string summary() const;
};

// Falsifies the catalog-supplied lower-central data: [G_i,G_j] ⊆ G_{i+j} on
// words up to length 4, predicate nesting, phi_j^T vanishing where required,
// and that graded generators project to the standard basis.
VerifyReport verify_spec(const GroupSpec& spec);

}  // namespace nilreg
