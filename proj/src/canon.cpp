#include "nilreg/canon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace nilreg {

GroupElement letter_element(const GroupSpec& spec, const CanonLetter& l) {
  const auto& name = spec.graded.at(l.level - 1).at(l.index);
  const GroupElement& g = spec.element(name);
  return l.sign > 0 ? g : inverse(g);
}

GroupElement word_product(const GroupSpec& spec, const CanonWord& w) {
  GroupElement g = spec.identity();
  for (const auto& l : w) g = mul(g, letter_element(spec, l));
  return g;
}

GroupElement reconstruct(const GroupSpec& spec, const CanonicalForm& form) {
  GroupElement g = spec.identity();
  for (int j = 1; j <= static_cast<int>(form.exps.size()); ++j)
    for (std::size_t i = 0; i < form.exps[j - 1].size(); ++i)
      g = mul(g, pow(spec.element(spec.graded[j - 1][i]), form.exps[j - 1][i]));
  return g;
}

CanonicalForm peel_canonical(const GroupSpec& spec, const GroupElement& g) {
  CanonicalForm form;
  GroupElement residual = g;
  for (int j = 1; j <= spec.nil_class; ++j) {
    if (!spec.in_level(j, residual))
      fail(ErrorKind::Structural,
           "peel_canonical: residual left G_" + std::to_string(j) +
               ", the catalog level data is inconsistent");
    auto exps = project(spec, j, residual);
    GroupElement block = spec.identity();
    for (std::size_t i = 0; i < exps.size(); ++i)
      block = mul(block, pow(spec.element(spec.graded[j - 1][i]), exps[i]));
    residual = mul(inverse(block), residual);
    form.exps.push_back(std::move(exps));
  }
  if (!residual.is_identity())
    fail(ErrorKind::Structural,
         "peel_canonical: nonzero residual after the last level");
  return form;
}

namespace {

int letter_count(const GroupSpec& spec) {
  int n = 0;
  for (const auto& row : spec.graded) n += static_cast<int>(row.size());
  return 2 * n;
}

int letter_id(const GroupSpec& spec, const CanonLetter& l) {
  int flat = 0;
  for (int j = 1; j < l.level; ++j) flat += static_cast<int>(spec.graded[j - 1].size());
  flat += l.index;
  return 2 * flat + (l.sign < 0 ? 1 : 0);
}

CanonWord form_to_word(const CanonicalForm& form) {
  CanonWord w;
  for (int j = 1; j <= static_cast<int>(form.exps.size()); ++j)
    for (std::size_t i = 0; i < form.exps[j - 1].size(); ++i) {
      const Int& a = form.exps[j - 1][i];
      const int sign = a < 0 ? -1 : +1;
      for (Int k = 0; k < (a < 0 ? Int(-a) : a); ++k)
        w.push_back(CanonLetter{j, static_cast<int>(i), sign});
    }
  return w;
}

// Per-spec cache of pairwise commutator expansions [b^-1, a^-1] for every
// disordered ordered pair (b, a); read-only after construction.
struct Alphabet {
  std::vector<CanonLetter> letters;
  std::vector<CanonWord> expansion;  // indexed by id(b) * count + id(a)
  int c_comm = 0;
};

const Alphabet& alphabet_for(const GroupSpec& spec) {
  static std::mutex mu;
  static std::map<const GroupSpec*, Alphabet> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(&spec);
  if (it != cache.end()) return it->second;

  Alphabet al;
  for (int j = 1; j <= spec.nil_class; ++j)
    for (std::size_t i = 0; i < spec.graded[j - 1].size(); ++i)
      for (int sign : {+1, -1})
        al.letters.push_back(CanonLetter{j, static_cast<int>(i), sign});
  const int n = letter_count(spec);
  al.expansion.assign(static_cast<std::size_t>(n) * n, CanonWord{});
  for (const auto& b : al.letters)
    for (const auto& a : al.letters) {
      if (!(a < b)) continue;  // only disordered order (b before a)
      GroupElement gb = letter_element(spec, b), ga = letter_element(spec, a);
      GroupElement comm = commutator(inverse(gb), inverse(ga));
      CanonWord w = form_to_word(peel_canonical(spec, comm));
      // exchanges must preserve the product exactly
      if (!(word_product(spec, w) == comm))
        fail(ErrorKind::Structural, "commutator expansion reconstruction failed");
      al.c_comm = std::max(al.c_comm, static_cast<int>(w.size()));
      al.expansion[static_cast<std::size_t>(letter_id(spec, b)) * n +
                   letter_id(spec, a)] = std::move(w);
    }
  return cache.emplace(&spec, std::move(al)).first->second;
}

Rational letter_weight(const CanonLetter& l, const Int& n, const Int& A) {
  Int denom = 1;
  for (int k = 1; k < l.level; ++k) denom *= A;
  for (int k = 0; k < l.level; ++k) denom *= n;
  return Rational(1, denom);
}

}  // namespace

int commutator_expansion_bound(const GroupSpec& spec) {
  return alphabet_for(spec).c_comm;
}

Rational word_weight(const GroupSpec& spec, const CanonWord& w, const Int& n,
                     const Int& A) {
  if (n < 1 || A < 1) fail(ErrorKind::Precondition, "word_weight: need n, A >= 1");
  (void)spec;
  std::vector<Rational> wt;
  wt.reserve(w.size());
  for (const auto& l : w) wt.push_back(letter_weight(l, n, A));
  Rational total = 0;
  for (const auto& v : wt) total += v;
  for (std::size_t i = 0; i + 1 <= w.size(); ++i)
    for (std::size_t k = i + 1; k < w.size(); ++k)
      if (w[k] < w[i]) total += wt[i] * wt[k];
  return total;
}

SortResult sort_normalize(const GroupSpec& spec, CanonWord word, const Int& A,
                          const SortOptions& opts) {
  const Alphabet& al = alphabet_for(spec);
  if (A <= 3 * al.c_comm)
    fail(ErrorKind::Precondition,
         "sort_normalize: weight base must exceed 3*C_comm = " +
             std::to_string(3 * al.c_comm));
  const int nL = letter_count(spec);

  SortResult res;
  std::uint64_t budget = opts.step_budget;
  if (budget == 0) {
    budget = 10;
    for (int k = 0; k < spec.nil_class + 1; ++k) {
      budget *= std::max<std::uint64_t>(2, word.size());
      if (budget > (1ull << 40)) break;
    }
  }
  if (opts.want_trace)
    res.trace.push_back(word_weight(spec, word, opts.n, A));

  for (;;) {
    bool swapped = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i + 1] < word[i]) {
        // ba -> ab g_{a,b} with g = [b^-1, a^-1], already in canonical form
        const CanonWord& exp =
            al.expansion[static_cast<std::size_t>(letter_id(spec, word[i])) * nL +
                         letter_id(spec, word[i + 1])];
        CanonLetter b = word[i];
        word[i] = word[i + 1];
        word[i + 1] = b;
        word.insert(word.begin() + i + 2, exp.begin(), exp.end());
        swapped = true;
        ++res.exchanges;
        if (opts.want_trace)
          res.trace.push_back(word_weight(spec, word, opts.n, A));
        if (res.exchanges > budget)
          fail(ErrorKind::Budget, "sort_normalize: exchange budget exceeded");
        break;
      }
    }
    if (!swapped) break;
  }

  // read exponents off the sorted word
  CanonicalForm form;
  for (int j = 1; j <= spec.nil_class; ++j)
    form.exps.emplace_back(spec.graded[j - 1].size(), Int(0));
  for (const auto& l : word) form.exps[l.level - 1][l.index] += l.sign;
  res.form = std::move(form);
  return res;
}

CanonWord parse_word(const GroupSpec& spec, const std::string& text) {
  std::map<std::string, CanonLetter> by_name;
  for (int j = 1; j <= spec.nil_class; ++j)
    for (std::size_t i = 0; i < spec.graded[j - 1].size(); ++i)
      by_name[spec.graded[j - 1][i]] = CanonLetter{j, static_cast<int>(i), +1};

  CanonWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int sign = +1;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      sign = -1;
      tok = tok.substr(0, tok.size() - 3);
    }
    auto it = by_name.find(tok);
    if (it == by_name.end())
      fail(ErrorKind::Lookup, "parse_word: unknown generator '" + tok + "'");
    CanonLetter l = it->second;
    l.sign = sign;
    w.push_back(l);
  }
  return w;
}

CanonWord letters_of_geodesic(const GroupSpec& spec, const BallRecord& ball,
                              const GroupElement& g) {
  std::map<std::string, CanonLetter> by_name;
  for (int j = 1; j <= spec.nil_class; ++j)
    for (std::size_t i = 0; i < spec.graded[j - 1].size(); ++i)
      by_name[spec.graded[j - 1][i]] = CanonLetter{j, static_cast<int>(i), +1};

  auto word = geodesic_word(ball, g);
  CanonWord out;
  // geodesic letters are listed first-applied first; as a left-to-right
  // product the last-applied letter comes first
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const Letter& l = ball.fset.letters[*it];
    auto f = by_name.find(ball.fset.names[l.gen]);
    if (f == by_name.end())
      fail(ErrorKind::Precondition,
           "letters_of_geodesic: ball generator is not a graded generator");
    CanonLetter cl = f->second;
    cl.sign = l.sign;
    out.push_back(cl);
  }
  return out;
}

LengthBoundReport length_bound_check(const GroupSpec& spec,
                                     const BallRecord& ball) {
  LengthBoundReport rep;
  rep.max_abs.assign(spec.nil_class,
                     std::vector<Int>(ball.radius + 1, Int(0)));
  for (std::size_t i = 0; i < ball.elems.size(); ++i) {
    const CanonicalForm form = peel_canonical(spec, ball.elems[i]);
    for (int j = 1; j <= spec.nil_class; ++j) {
      Int s = 0;
      for (const auto& a : form.exps[j - 1]) s += a < 0 ? Int(-a) : a;
      auto& cell = rep.max_abs[j - 1][ball.dist[i]];
      if (s > cell) cell = s;
    }
  }
  // per-radius max over the closed ball, then the n^j normalization
  for (int j = 1; j <= spec.nil_class; ++j)
    for (int n = 1; n <= ball.radius; ++n)
      if (rep.max_abs[j - 1][n] < rep.max_abs[j - 1][n - 1])
        rep.max_abs[j - 1][n] = rep.max_abs[j - 1][n - 1];
  rep.ratio.assign(spec.nil_class, std::vector<double>(ball.radius + 1, 0.0));
  rep.c_empirical.assign(spec.nil_class, 0.0);
  for (int j = 1; j <= spec.nil_class; ++j)
    for (int n = 1; n <= ball.radius; ++n) {
      double r = static_cast<double>(rep.max_abs[j - 1][n]) /
                 std::pow(static_cast<double>(n), j);
      rep.ratio[j - 1][n] = r;
      rep.c_empirical[j - 1] = std::max(rep.c_empirical[j - 1], r);
    }
  return rep;
}

}  // namespace nilreg
