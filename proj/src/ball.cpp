#include "nilreg/ball.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

namespace nilreg {

std::string GenSet::letter_name(int i) const {
  const Letter& l = letters.at(i);
  if (l.gen < 0) return "e";
  return names[l.gen] + (l.sign < 0 ? "^-1" : "");
}

GenSet make_genset(const GroupSpec& spec, const std::vector<std::string>& names) {
  GenSet fs;
  fs.spec = &spec;
  fs.names = names;
  fs.letters.push_back(Letter{-1, +1});
  fs.elems.push_back(spec.identity());
  fs.inverse_index.push_back(0);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const GroupElement& g = spec.element(names[i]);
    fs.letters.push_back(Letter{static_cast<int>(i), +1});
    fs.elems.push_back(g);
    fs.letters.push_back(Letter{static_cast<int>(i), -1});
    fs.elems.push_back(inverse(g));
    fs.inverse_index.push_back(static_cast<int>(fs.letters.size()) - 1);
    fs.inverse_index.push_back(static_cast<int>(fs.letters.size()) - 2);
  }
  return fs;
}

namespace {

struct Candidate {
  std::string key;
  GroupElement elem;
  std::int32_t letter;
};

}  // namespace

BallRecord ball(const GroupSpec& spec, const std::vector<std::string>& gen_names,
                int radius, const BallConfig& cfg) {
  if (radius < 0) fail(ErrorKind::Precondition, "ball: negative radius");
  BallRecord b;
  b.spec = &spec;
  b.fset = make_genset(spec, gen_names);
  b.radius = radius;

  GroupElement id = spec.identity();
  b.elems.push_back(id);
  b.dist.push_back(0);
  b.parent_letter.push_back(-1);
  b.index.emplace(id.key(), 0u);
  b.counts.assign(1, 1);

  const int workers = std::max(1, cfg.workers);
  std::uint32_t layer_begin = 0, layer_end = 1;

  for (int n = 1; n <= radius; ++n) {
    const std::uint32_t frontier = layer_end - layer_begin;
    std::vector<std::vector<Candidate>> parts(workers);

    auto expand = [&](int w) {
      auto& out = parts[w];
      for (std::uint32_t i = layer_begin + w; i < layer_end;
           i += static_cast<std::uint32_t>(workers)) {
        for (int li = 1; li < b.fset.size(); ++li) {
          GroupElement h = mul(b.fset.elems[li], b.elems[i]);
          std::string k = h.key();
          if (b.index.count(k)) continue;
          out.push_back(Candidate{std::move(k), std::move(h), li});
        }
      }
    };
    if (workers == 1 || frontier < 64) {
      for (int w = 0; w < workers; ++w) expand(w);
    } else {
      std::vector<std::thread> ts;
      for (int w = 0; w < workers; ++w) ts.emplace_back(expand, w);
      for (auto& t : ts) t.join();
    }

    std::vector<Candidate> cands;
    for (auto& p : parts) {
      std::move(p.begin(), p.end(), std::back_inserter(cands));
      p.clear();
    }
    // canonical discovery order: sort by key; the lowest letter index wins
    // parent ties so stores are byte-stable across worker counts
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& c) {
      if (a.key != c.key) return a.key < c.key;
      return a.letter < c.letter;
    });

    layer_begin = layer_end;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (i > 0 && cands[i].key == cands[i - 1].key) continue;
      if (b.elems.size() >= cfg.max_elements)
        throw BallBudgetError(
            n - 1, "ball: element budget exceeded at radius " + std::to_string(n) +
                       "; largest completed radius is " + std::to_string(n - 1));
      b.index.emplace(cands[i].key, static_cast<std::uint32_t>(b.elems.size()));
      b.elems.push_back(std::move(cands[i].elem));
      b.dist.push_back(static_cast<std::uint16_t>(n));
      b.parent_letter.push_back(cands[i].letter);
    }
    layer_end = static_cast<std::uint32_t>(b.elems.size());
    b.counts.push_back(b.elems.size());
  }
  return b;
}

std::optional<std::uint32_t> BallRecord::find(const GroupElement& g) const {
  auto it = index.find(g.key());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint64_t> relative_count(const BallRecord& ball,
                                          const SubgroupSpec& sub) {
  std::vector<std::uint64_t> out(ball.radius + 1, 0);
  for (std::size_t i = 0; i < ball.elems.size(); ++i)
    if (is_member(sub, ball.elems[i])) ++out[ball.dist[i]];
  for (std::size_t n = 1; n < out.size(); ++n) out[n] += out[n - 1];
  return out;
}

std::vector<int> geodesic_word(const BallRecord& ball, const GroupElement& g) {
  auto idx = ball.find(g);
  if (!idx)
    fail(ErrorKind::Lookup, "geodesic_word: element not in the enumerated ball");
  std::vector<int> word;
  GroupElement cur = g;
  std::uint32_t i = *idx;
  while (ball.dist[i] > 0) {
    const int li = ball.parent_letter[i];
    word.push_back(li);
    cur = mul(ball.fset.elems[ball.fset.inverse_index[li]], cur);
    auto p = ball.find(cur);
    if (!p) fail(ErrorKind::Structural, "geodesic_word: broken parent link");
    i = *p;
  }
  // parent links walk g -> e; letters were applied first at the root
  std::reverse(word.begin(), word.end());
  return word;
}

GroupElement left_product(const GenSet& fs, const std::vector<int>& word) {
  GroupElement g = fs.spec->identity();
  for (int li : word) g = mul(fs.elems.at(li), g);
  return g;
}

namespace {

constexpr std::uint32_t kBallMagic = 0x4e424c31;  // "NBL1"

void put_u(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), 8);
}

std::uint64_t get_u(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

}  // namespace

std::string ball_cache_name(const GroupSpec& spec,
                            const std::vector<std::string>& gen_names,
                            int radius, std::uint64_t salt) {
  std::string key = spec.name;
  for (const auto& n : gen_names) key += "," + n;
  key += ";" + std::to_string(radius);
  std::ostringstream os;
  os << "ball-" << std::hex << fnv1a(key.data(), key.size(), salt ? salt : 1469598103934665603ull)
     << ".bin";
  return os.str();
}

void save_ball(const BallRecord& ball, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Structural, "save_ball: cannot write " + path);
  put_u(out, kBallMagic);
  put_u(out, static_cast<std::uint64_t>(ball.radius));
  put_u(out, ball.fset.names.size());
  for (const auto& n : ball.fset.names) {
    put_u(out, n.size());
    out.write(n.data(), static_cast<std::streamsize>(n.size()));
  }
  put_u(out, ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const std::string key = ball.elems[i].key();
    put_u(out, key.size());
    out.write(key.data(), static_cast<std::streamsize>(key.size()));
    put_u(out, ball.dist[i]);
    put_u(out, static_cast<std::uint64_t>(ball.parent_letter[i] + 1));
  }
}

BallRecord load_ball(const GroupSpec& spec, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Lookup, "load_ball: cannot open " + path);
  if (get_u(in) != kBallMagic)
    fail(ErrorKind::Structural, "load_ball: not a ball cache file");
  BallRecord b;
  b.spec = &spec;
  b.radius = static_cast<int>(get_u(in));
  std::vector<std::string> names(get_u(in));
  for (auto& n : names) {
    n.resize(get_u(in));
    in.read(n.data(), static_cast<std::streamsize>(n.size()));
  }
  b.fset = make_genset(spec, names);
  const std::uint64_t count = get_u(in);
  b.counts.assign(b.radius + 1, 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string key(get_u(in), 0);
    in.read(key.data(), static_cast<std::streamsize>(key.size()));
    const auto d = static_cast<std::uint16_t>(get_u(in));
    const auto parent = static_cast<std::int32_t>(get_u(in)) - 1;
    if (d > b.radius) fail(ErrorKind::Structural, "load_ball: bad distance");
    b.elems.push_back(GroupElement::from_key(spec.factor_dims, key));
    b.dist.push_back(d);
    b.parent_letter.push_back(parent);
    b.index.emplace(std::move(key), static_cast<std::uint32_t>(i));
    ++b.counts[d];
  }
  if (!in) fail(ErrorKind::Structural, "load_ball: truncated file");
  for (std::size_t n = 1; n < b.counts.size(); ++n) b.counts[n] += b.counts[n - 1];
  return b;
}

}  // namespace nilreg