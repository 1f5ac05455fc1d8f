#include "nilreg/witness.hpp"

#include <numeric>
#include <sstream>

#include "nilreg/growth.hpp"

namespace nilreg {

namespace {

Int gcd_over(const GroupSpec& spec, const LinearFunctional& f,
             const std::vector<std::string>& gens) {
  Int g = 0;
  for (const auto& n : gens) g = boost::multiprecision::gcd(g, f.eval(spec.element(n)));
  return g < 0 ? Int(-g) : g;
}

// On the subgroup where it is used, each lambda must be a homomorphism; we
// check it on all products of generator pairs.
bool homomorphism_on_pairs(const GroupSpec& spec, const LinearFunctional& f,
                           const std::vector<std::string>& gens,
                           std::string* bad) {
  for (const auto& n1 : gens)
    for (const auto& n2 : gens) {
      const GroupElement &a = spec.element(n1), &b = spec.element(n2);
      if (f.eval(mul(a, b)) != f.eval(a) + f.eval(b)) {
        if (bad) *bad = n1 + "*" + n2;
        return false;
      }
    }
  return true;
}

}  // namespace

VerifyReport verify_witness(const GroupSpec& spec, const WitnessSpec& w) {
  VerifyReport rep;
  auto add = [&](const std::string& n, bool ok, const std::string& d = "") {
    rep.checks.push_back({n, ok, ok ? "" : d});
  };

  const GroupElement& c = spec.element(w.central);
  const SubgroupSpec& K = spec.subgroup(w.K);
  const SubgroupSpec& H = spec.subgroup(w.H);

  add("c-in-K", is_member(K, c), "central element outside K");
  add("mu-nonzero-on-c", w.mu.eval(c) != 0, "mu(c) = 0");
  {
    std::string bad;
    add("mu-homomorphism", homomorphism_on_pairs(spec, w.mu, K.gens, &bad),
        "mu not additive on " + bad);
  }
  add("mu-surjective", gcd_over(spec, w.mu, K.gens) == 1,
      "gcd of mu over K generators is not 1");
  {
    bool ok = true;
    std::string bad;
    for (const auto& n : H.gens) {
      if (!is_member(K, spec.element(n))) { ok = false; bad = n + " outside K"; }
      if (w.mu.eval(spec.element(n)) != 0) { ok = false; bad = "mu(" + n + ") != 0"; }
    }
    add("H-in-kernel-mu", ok, bad);
  }
  // H ∩ <c> = {e}: c^k ∈ H would force mu(c^k) = k mu(c) = 0
  add("H-meets-c-trivially", w.mu.eval(c) != 0, "follows from mu(c) != 0");

  // ascending chain G = K_0 ▷ K_1 ▷ ... ▷ K_n = K with Z quotients
  std::vector<const SubgroupSpec*> chain_groups;
  std::vector<std::vector<std::string>> chain_gens;
  chain_gens.push_back(spec.word_gens);  // K_0 = G
  for (const auto& st : w.chain) {
    chain_groups.push_back(&spec.subgroup(st.sub));
    chain_gens.push_back(chain_groups.back()->gens);
  }
  add("chain-ends-at-K",
      w.chain.empty() ? (K.zero_entries.empty() && K.zero_functionals.empty())
                      : w.chain.back().sub == w.K,
      w.chain.empty() ? "empty chain requires K = G" : "last chain group is not K");

  for (std::size_t i = 0; i < w.chain.size(); ++i) {
    const std::string tag = "chain-step-" + std::to_string(i);
    const LinearFunctional& lam = w.chain[i].lambda;
    const SubgroupSpec& next = *chain_groups[i];
    const auto& cur_gens = chain_gens[i];
    {
      std::string bad;
      add(tag + "-homomorphism", homomorphism_on_pairs(spec, lam, cur_gens, &bad),
          "lambda not additive on " + bad);
    }
    add(tag + "-surjective", gcd_over(spec, lam, cur_gens) == 1,
        "gcd of lambda over K_" + std::to_string(i) + " generators is not 1");
    {
      bool ok = true;
      std::string bad;
      for (const auto& n : next.gens)
        if (lam.eval(spec.element(n)) != 0) { ok = false; bad = n; }
      add(tag + "-kernel-covers-next", ok, "lambda(" + bad + ") != 0");
    }
    {
      // normality of K_{i+1} in K_i: conjugates of generators stay inside
      bool ok = true;
      std::string bad;
      for (const auto& gn : cur_gens)
        for (const auto& hn : next.gens) {
          const GroupElement g = spec.element(gn);
          const GroupElement conj =
              mul(mul(g, spec.element(hn)), inverse(g));
          if (!is_member(next, conj)) { ok = false; bad = gn + " . " + hn; }
        }
      add(tag + "-normal", ok, "conjugate leaves the subgroup: " + bad);
    }
  }
  return rep;
}

std::string CritValue::str() const {
  if (unbounded) return "unbounded";
  std::ostringstream os;
  os << num << "/" << den;
  return os.str();
}

CritValue crit_for_element(const GroupSpec& spec, const std::string& central,
                           const std::vector<std::string>& witness_names,
                           std::string* attained_by) {
  if (witness_names.empty())
    fail(ErrorKind::Precondition,
         "crit_for_element: at least one witness candidate is required");
  std::optional<int> min_deg;
  std::string best;
  for (const auto& wn : witness_names) {
    const WitnessSpec& w = spec.witness(wn);
    if (w.central != central)
      fail(ErrorKind::Precondition,
           "crit_for_element: witness " + wn + " certifies a different element");
    VerifyReport rep = verify_witness(spec, w);
    if (!rep.all_pass())
      fail(ErrorKind::Validation,
           "crit_for_element: witness " + wn + " failed verification:\n" + rep.summary());
    const int deg = schreier_degree(spec, spec.subgroup(w.K));
    if (!min_deg || deg < *min_deg) {
      min_deg = deg;
      best = wn;
    }
  }
  if (attained_by) *attained_by = best;
  CritValue v;
  if (*min_deg == 0) {
    v.unbounded = true;
    return v;
  }
  v.num = 1 + *min_deg;  // 1 + 1/d
  v.den = *min_deg;
  return v;
}

CritResult crit_interval(const GroupSpec& spec) {
  if (spec.central_candidates.empty())
    fail(ErrorKind::Precondition,
         "crit_interval: group " + spec.name + " declares no central candidates");
  CritResult res;
  res.group = spec.name;
  res.provenance =
      "max over declared central candidates; per element, min over verified "
      "catalog witnesses; value applies to [0,1], (0,1] and the circle";
  std::optional<int> max_min_deg;
  bool any_unbounded = false;
  for (const auto& cand : spec.central_candidates) {
    std::string best;
    CritValue v = crit_for_element(spec, cand.element, cand.witnesses, &best);
    CritResult::PerElement pe;
    pe.element = cand.element;
    pe.witness = best;
    pe.value = v;
    if (v.unbounded) {
      if (!spec.abelian)
        fail(ErrorKind::Validation,
             "crit_interval: candidate " + cand.element +
                 " is unbounded in a group declared non-abelian");
      any_unbounded = true;
      pe.min_degree = 0;
    } else {
      pe.min_degree = static_cast<int>(v.den);
      if (!max_min_deg || pe.min_degree > *max_min_deg) max_min_deg = pe.min_degree;
    }
    res.per_element.push_back(std::move(pe));
  }
  if (any_unbounded) {
    res.value.unbounded = true;
  } else {
    res.value.num = 1 + *max_min_deg;
    res.value.den = *max_min_deg;
  }
  return res;
}

std::string CritResult::to_json() const {
  std::ostringstream os;
  os << "{\"group\":\"" << group << "\",\"value\":\"" << value.str() << "\","
     << "\"per_element\":[";
  for (std::size_t i = 0; i < per_element.size(); ++i) {
    const auto& pe = per_element[i];
    os << (i ? "," : "") << "{\"element\":\"" << pe.element << "\","
       << "\"min_schreier_degree\":" << pe.min_degree << ","
       << "\"witness\":\"" << pe.witness << "\","
       << "\"value\":\"" << pe.value.str() << "\"}";
  }
  os << "],\"provenance\":\"" << provenance << "\"}";
  return os.str();
}

AbelianBound abelian_stab_bound(const GroupSpec& spec, const SubgroupSpec& sub) {
  AbelianBound out;
  out.is_abelian = true;
  for (const auto& n1 : sub.gens)
    for (const auto& n2 : sub.gens)
      if (!commutator(spec.element(n1), spec.element(n2)).is_identity())
        out.is_abelian = false;
  const std::string join = sub.join_center.empty() ? sub.name : sub.join_center;
  out.degree = schreier_degree(spec, spec.subgroup(join));
  return out;
}

}  // namespace nilreg
