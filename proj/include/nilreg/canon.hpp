#pragma once

#include <string>
#include <vector>

#include "nilreg/ball.hpp"
#include "nilreg/group.hpp"

namespace nilreg {

// Letter f_{i,j}^{±1} of the level-graded alphabet: level j (1-based), index
// i into the graded generator row, sign.
struct CanonLetter {
  int level = 1;
  int index = 0;
  int sign = +1;

  // sort key: level first, then index, then sign (+ before -)
  friend bool operator<(const CanonLetter& a, const CanonLetter& b) {
    if (a.level != b.level) return a.level < b.level;
    if (a.index != b.index) return a.index < b.index;
    return a.sign > b.sign;
  }
  friend bool operator==(const CanonLetter& a, const CanonLetter& b) {
    return a.level == b.level && a.index == b.index && a.sign == b.sign;
  }
};

using CanonWord = std::vector<CanonLetter>;

struct CanonicalForm {
  std::vector<std::vector<Int>> exps;  // exps[j-1][i] = a_{i,j}

  bool operator==(const CanonicalForm& o) const { return exps == o.exps; }
};

GroupElement letter_element(const GroupSpec& spec, const CanonLetter& l);
GroupElement word_product(const GroupSpec& spec, const CanonWord& w);
GroupElement reconstruct(const GroupSpec& spec, const CanonicalForm& form);

// Unique exponents by peeling levels: read phi_j^T of the residual, divide
// the level block off on the left, recurse into G_{j+1}.
CanonicalForm peel_canonical(const GroupSpec& spec, const GroupElement& g);

// Max canonical-word length over the cached pairwise commutator expansions.
int commutator_expansion_bound(const GroupSpec& spec);

// wt_n(w) in exact rational arithmetic: letter weights A^{-(j-1)} n^{-j}
// plus the products over disordered pairs.
Rational word_weight(const GroupSpec& spec, const CanonWord& w, const Int& n,
                     const Int& A);

struct SortOptions {
  bool want_trace = false;
  std::uint64_t step_budget = 0;  // 0: 10 * len^(class+1)
  Int n = 1;                      // weight scale (used when tracing)
};

struct SortResult {
  CanonicalForm form;
  std::vector<Rational> trace;  // weight after the initial word and each step
  std::uint64_t exchanges = 0;
};

// Bubble sort by adjacent exchanges ba -> ab [b^-1,a^-1], the commutator
// expanded into its cached canonical word. Scans left to right repeatedly.
SortResult sort_normalize(const GroupSpec& spec, CanonWord word, const Int& A,
                          const SortOptions& opts = {});

// CanonLetters for a generator-name word such as "b a b a^-1".
CanonWord parse_word(const GroupSpec& spec, const std::string& text);
// CanonLetters of a ball geodesic (ball letters must be graded generators).
CanonWord letters_of_geodesic(const GroupSpec& spec, const BallRecord& ball,
                              const GroupElement& g);

struct LengthBoundReport {
  // max_abs[j-1][n] = max over g in B_n of sum_i |a_{i,j}|; ratio divides by n^j
  std::vector<std::vector<Int>> max_abs;
  std::vector<std::vector<double>> ratio;
  // empirical C_{A,j}: the largest ratio per level
  std::vector<double> c_empirical;
};

LengthBoundReport length_bound_check(const GroupSpec& spec, const BallRecord& ball);

}  // namespace nilreg
