#include "nilreg/schreier.hpp"

#include <algorithm>
#include <thread>

namespace nilreg {

namespace {

struct Candidate {
  std::string key;
  GroupElement canon;
  GroupElement rep;
  std::int32_t letter;
};

}  // namespace

SchreierBall schreier_ball(const GroupSpec& spec, const SubgroupSpec& sub,
                           const std::vector<std::string>& gen_names, int radius,
                           const SchreierConfig& cfg) {
  const bool canonical = !sub.canonicalizer.empty() && !cfg.force_fallback;
  if (!cfg.store_reps && !canonical)
    fail(ErrorKind::Precondition,
         "schreier_ball: store_reps=false needs a canonicalizer");
  for (const auto& st : sub.canonicalizer)
    if (canonical && !is_member(sub, spec.element(st.gen)))
      fail(ErrorKind::Structural,
           "schreier_ball: canonicalizer generator " + st.gen + " is not in " + sub.name);

  SchreierBall s;
  s.spec = &spec;
  s.sub = &sub;
  s.fset = make_genset(spec, gen_names);
  s.radius = radius;

  GroupElement id = spec.identity();
  std::vector<GroupElement> frontier;  // current layer reps when slim
  if (cfg.store_reps) {
    s.reps.push_back(id);
    s.keys.push_back(canonical ? canonical_rep(spec, sub, id) : id);
  } else {
    frontier.push_back(id);
  }
  s.dist.push_back(0);
  s.parent_letter.push_back(-1);
  s.index.emplace((canonical ? canonical_rep(spec, sub, id) : id).key(), 0u);
  s.counts.assign(1, 1);

  std::uint32_t layer_begin = 0, layer_end = 1;
  const int workers = std::max(1, cfg.workers);

  for (int n = 1; n <= radius; ++n) {
    std::vector<std::vector<Candidate>> parts(std::max(1, canonical ? workers : 1));

    auto expand = [&](int w, int stride) {
      auto& out = parts[w];
      for (std::uint32_t i = layer_begin + w; i < layer_end;
           i += static_cast<std::uint32_t>(stride)) {
        const GroupElement& base =
            cfg.store_reps ? s.reps[i] : frontier[i - layer_begin];
        for (int li = 1; li < s.fset.size(); ++li) {
          GroupElement rep = mul(s.fset.elems[li], base);
          Candidate c;
          c.rep = rep;
          c.canon = canonical ? canonical_rep(spec, sub, rep) : rep;
          c.key = c.canon.key();
          c.letter = li;
          if (canonical && s.index.count(c.key)) continue;
          out.push_back(std::move(c));
        }
      }
    };

    if (canonical && workers > 1 && layer_end - layer_begin >= 64) {
      std::vector<std::thread> ts;
      for (int w = 0; w < workers; ++w) ts.emplace_back(expand, w, workers);
      for (auto& t : ts) t.join();
    } else {
      expand(0, 1);
    }

    std::vector<Candidate> cands;
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(cands));
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.key != b.key) return a.key < b.key;
      return a.letter < b.letter;
    });

    layer_begin = layer_end;
    if (canonical) {
      std::vector<GroupElement> next_frontier;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        if (i > 0 && cands[i].key == cands[i - 1].key) continue;
        if (s.index.count(cands[i].key)) continue;
        if (s.dist.size() >= cfg.max_cosets)
          fail(ErrorKind::Budget, "schreier_ball: coset budget exceeded at layer " +
                                      std::to_string(n));
        s.index.emplace(cands[i].key, static_cast<std::uint32_t>(s.dist.size()));
        if (cfg.store_reps) {
          s.reps.push_back(std::move(cands[i].rep));
          s.keys.push_back(std::move(cands[i].canon));
        } else {
          next_frontier.push_back(std::move(cands[i].rep));
        }
        s.dist.push_back(static_cast<std::uint16_t>(n));
        s.parent_letter.push_back(cands[i].letter);
      }
      if (!cfg.store_reps) frontier = std::move(next_frontier);
    } else {
      // pairwise-equality fallback: a candidate joins an existing class when
      // leader^-1 * candidate ∈ K; only classes at distance >= n-2 can match
      if (cands.size() > cfg.fallback_layer_budget)
        fail(ErrorKind::Budget,
             "schreier_ball: quadratic fallback budget exceeded; bottleneck layer " +
                 std::to_string(n) + " has " + std::to_string(cands.size()) +
                 " candidates");
      std::uint32_t cmp_begin = 0;
      while (cmp_begin < s.reps.size() && s.dist[cmp_begin] + 2 < n) ++cmp_begin;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        bool known = false;
        for (std::uint32_t j = cmp_begin; j < s.reps.size() && !known; ++j)
          if (is_member(sub, mul(inverse(s.keys[j]), cands[i].rep))) known = true;
        if (known) continue;
        s.index.emplace(cands[i].key, static_cast<std::uint32_t>(s.dist.size()));
        s.reps.push_back(cands[i].rep);
        s.keys.push_back(cands[i].rep);
        s.dist.push_back(static_cast<std::uint16_t>(n));
        s.parent_letter.push_back(cands[i].letter);
      }
    }
    layer_end = static_cast<std::uint32_t>(s.dist.size());
    s.counts.push_back(s.dist.size());
  }
  return s;
}

std::optional<std::uint32_t> SchreierBall::coset_of(const GroupElement& g) const {
  if (!sub->canonicalizer.empty()) {
    auto it = index.find(canonical_rep(*spec, *sub, g).key());
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  for (std::uint32_t j = 0; j < keys.size(); ++j)
    if (is_member(*sub, mul(inverse(keys[j]), g))) return j;
  return std::nullopt;
}

}  // namespace nilreg
