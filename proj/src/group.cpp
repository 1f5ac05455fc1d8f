#include "nilreg/group.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <sstream>

namespace nilreg {

bool GroupElement::operator==(const GroupElement& o) const {
  if (factors.size() != o.factors.size()) return false;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (factors[f].rows() != o.factors[f].rows()) return false;
    for (int r = 0; r < factors[f].rows(); ++r)
      for (int c = r + 1; c < factors[f].cols(); ++c)
        if (factors[f](r, c) != o.factors[f](r, c)) return false;
  }
  return true;
}

bool GroupElement::is_identity() const {
  for (const auto& m : factors)
    for (int r = 0; r < m.rows(); ++r)
      for (int c = r + 1; c < m.cols(); ++c)
        if (m(r, c) != 0) return false;
  return true;
}

std::string GroupElement::key() const {
  std::string out;
  out.reserve(16 * factors.size());
  for (const auto& m : factors) {
    for (int r = 0; r < m.rows(); ++r)
      for (int c = r + 1; c < m.cols(); ++c) {
        const Int& v = m(r, c);
        if (v >= -2147483647 && v <= 2147483647) {
          auto x = static_cast<std::int32_t>(v);
          out.push_back('i');
          out.append(reinterpret_cast<const char*>(&x), 4);
        } else {
          // rare large-entry path: decimal string, length-prefixed
          std::string s = v.str();
          out.push_back('s');
          auto n = static_cast<std::uint32_t>(s.size());
          out.append(reinterpret_cast<const char*>(&n), 4);
          out += s;
        }
      }
  }
  return out;
}

GroupElement GroupElement::from_key(const std::vector<int>& factor_dims,
                                    const std::string& key) {
  GroupElement g;
  std::size_t pos = 0;
  auto take = [&](std::size_t n) {
    if (pos + n > key.size())
      fail(ErrorKind::Structural, "from_key: truncated key");
    const char* p = key.data() + pos;
    pos += n;
    return p;
  };
  for (int d : factor_dims) {
    IntMat m = IntMat::Identity(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = r + 1; c < d; ++c) {
        const char tag = *take(1);
        if (tag == 'i') {
          std::int32_t v;
          std::memcpy(&v, take(4), 4);
          m(r, c) = v;
        } else if (tag == 's') {
          std::uint32_t n;
          std::memcpy(&n, take(4), 4);
          m(r, c) = Int(std::string(take(n), n));
        } else {
          fail(ErrorKind::Structural, "from_key: bad tag");
        }
      }
    g.factors.push_back(std::move(m));
  }
  if (pos != key.size()) fail(ErrorKind::Structural, "from_key: trailing bytes");
  return g;
}

static void check_same_shape(const GroupElement& a, const GroupElement& b) {
  if (a.factors.size() != b.factors.size())
    fail(ErrorKind::Structural, "factor count mismatch");
  for (std::size_t f = 0; f < a.factors.size(); ++f)
    if (a.factors[f].rows() != b.factors[f].rows())
      fail(ErrorKind::Structural, "factor dimension mismatch");
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  check_same_shape(a, b);
  GroupElement out;
  out.factors.reserve(a.factors.size());
  for (std::size_t f = 0; f < a.factors.size(); ++f) {
    const IntMat& A = a.factors[f];
    const IntMat& B = b.factors[f];
    const int n = static_cast<int>(A.rows());
    IntMat C = IntMat::Identity(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) {
        Int s = A(r, c) + B(r, c);
        for (int k = r + 1; k < c; ++k) s += A(r, k) * B(k, c);
        C(r, c) = std::move(s);
      }
    out.factors.push_back(std::move(C));
  }
  return out;
}

GroupElement inverse(const GroupElement& a) {
  GroupElement out = a;
  for (std::size_t f = 0; f < a.factors.size(); ++f) {
    const IntMat& m = a.factors[f];
    const int n = static_cast<int>(m.rows());
    IntMat inv = IntMat::Identity(n, n);
    // back-substitution; exact since the matrix is unitriangular
    for (int c = n - 1; c >= 0; --c)
      for (int r = c - 1; r >= 0; --r) {
        Int s = 0;
        for (int k = r + 1; k <= c; ++k) s += m(r, k) * inv(k, c);
        inv(r, c) = -s;
      }
    out.factors[f] = std::move(inv);
  }
  return out;
}

GroupElement commutator(const GroupElement& a, const GroupElement& b) {
  return mul(mul(a, b), mul(inverse(a), inverse(b)));
}

GroupElement pow(const GroupElement& a, const Int& k) {
  GroupElement base = k < 0 ? inverse(a) : a;
  Int e = k < 0 ? Int(-k) : k;
  GroupElement acc;
  acc.factors.reserve(a.factors.size());
  for (const auto& m : a.factors)
    acc.factors.push_back(IntMat::Identity(m.rows(), m.cols()));
  while (e > 0) {
    if ((e & 1) != 0) acc = mul(acc, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return acc;
}

Int LinearFunctional::eval(const GroupElement& g) const {
  Int s = 0;
  for (const auto& t : terms)
    s += t.coeff * g.factors.at(t.pos.factor)(t.pos.row, t.pos.col);
  return s;
}

bool is_member(const SubgroupSpec& sub, const GroupElement& g) {
  for (const auto& p : sub.zero_entries)
    if (g.factors.at(p.factor)(p.row, p.col) != 0) return false;
  for (const auto& f : sub.zero_functionals)
    if (f.eval(g) != 0) return false;
  return true;
}

GroupElement GroupSpec::identity() const {
  GroupElement e;
  e.factors.reserve(factor_dims.size());
  for (int d : factor_dims) e.factors.push_back(IntMat::Identity(d, d));
  return e;
}

const GroupElement& GroupSpec::element(const std::string& n) const {
  auto it = elements.find(n);
  if (it == elements.end())
    fail(ErrorKind::Lookup, "group " + name + ": unknown element '" + n + "'");
  return it->second;
}

const SubgroupSpec& GroupSpec::subgroup(const std::string& n) const {
  for (const auto& s : subgroups)
    if (s.name == n) return s;
  std::string avail;
  for (const auto& s : subgroups) avail += (avail.empty() ? "" : ", ") + s.name;
  fail(ErrorKind::Lookup,
       "group " + name + ": unknown subgroup '" + n + "' (available: " + avail + ")");
}

const WitnessSpec& GroupSpec::witness(const std::string& n) const {
  for (const auto& w : witnesses)
    if (w.name == n) return w;
  std::string avail;
  for (const auto& w : witnesses) avail += (avail.empty() ? "" : ", ") + w.name;
  fail(ErrorKind::Lookup,
       "group " + name + ": unknown witness '" + n + "' (available: " + avail + ")");
}

bool GroupSpec::in_level(int j, const GroupElement& g) const {
  if (j < 1) return true;
  if (j > nil_class) return g.is_identity();
  for (const auto& p : levels[j - 1].zero_entries)
    if (g.factors.at(p.factor)(p.row, p.col) != 0) return false;
  return true;
}

int GroupSpec::total_entries() const {
  int n = 0;
  for (int d : factor_dims) n += d * (d - 1) / 2;
  return n;
}

std::vector<Int> project(const GroupSpec& spec, int j, const GroupElement& g) {
  if (j < 1 || j > spec.nil_class)
    fail(ErrorKind::Precondition, "project: level out of range");
  if (!spec.in_level(j, g))
    fail(ErrorKind::Precondition,
         "project: element outside G_" + std::to_string(j));
  const auto& lv = spec.levels[j - 1];
  std::vector<Int> out;
  out.reserve(lv.proj.size());
  for (const auto& f : lv.proj) out.push_back(f.eval(g));
  return out;
}

GroupElement canonical_rep(const GroupSpec& spec, const SubgroupSpec& sub,
                           const GroupElement& g) {
  if (sub.canonicalizer.empty())
    fail(ErrorKind::Precondition,
         "subgroup " + sub.name + " has no canonicalizer");
  GroupElement rep = g;
  for (const auto& step : sub.canonicalizer) {
    const Int v = rep.factors.at(step.entry.factor)(step.entry.row, step.entry.col);
    if (v != 0) rep = mul(rep, pow(spec.element(step.gen), -v));
  }
  return rep;
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

std::string VerifyReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks)
    os << (c.pass ? "PASS " : "FAIL ") << c.name
       << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return os.str();
}

namespace {

// All distinct products of generator words up to the given length.
std::vector<GroupElement> words_up_to(const GroupSpec& spec, int len) {
  std::vector<GroupElement> letters;
  for (const auto& n : spec.gen_names) {
    letters.push_back(spec.element(n));
    letters.push_back(inverse(spec.element(n)));
  }
  std::vector<GroupElement> out{spec.identity()};
  std::set<std::string> seen{out[0].key()};
  std::vector<GroupElement> frontier = out;
  for (int l = 0; l < len; ++l) {
    std::vector<GroupElement> next;
    for (const auto& g : frontier)
      for (const auto& f : letters) {
        GroupElement h = mul(f, g);
        if (seen.insert(h.key()).second) {
          next.push_back(h);
          out.push_back(h);
        }
      }
    frontier = std::move(next);
  }
  return out;
}

int max_level(const GroupSpec& spec, const GroupElement& g) {
  int j = 1;
  while (j <= spec.nil_class && spec.in_level(j + 1, g)) ++j;
  return j;  // g in G_j \ G_{j+1}, or m+1 handled by caller for identity
}

}  // namespace

VerifyReport verify_spec(const GroupSpec& spec) {
  VerifyReport rep;
  auto add = [&](const std::string& n, bool ok, const std::string& d = "") {
    rep.checks.push_back({n, ok, ok ? "" : d});
  };

  // top predicate accepts only the identity
  {
    bool ok = true;
    std::string wit;
    for (const auto& g : words_up_to(spec, 2))
      if (!g.is_identity() && spec.in_level(spec.nil_class + 1, g)) {
        ok = false;
        wit = "non-identity element passes the G_" +
              std::to_string(spec.nil_class + 1) + " predicate";
        break;
      }
    add("top-level-predicate-trivial", ok, wit);
  }

  const auto sample = words_up_to(spec, 4);

  // nestedness G_{j+1} ⊆ G_j: structural (constraint sets grow) plus
  // dimension bookkeeping (#free entries of G_j = sum of ranks from j up),
  // plus the elementwise shadow on the sample
  {
    bool ok = true;
    std::string wit;
    auto key = [](const EntryPos& p) {
      return p.factor * 10000 + p.row * 100 + p.col;
    };
    for (int j = 1; j <= spec.nil_class && ok; ++j) {
      std::set<int> cur;
      for (const auto& p : spec.levels[j - 1].zero_entries) cur.insert(key(p));
      if (j < spec.nil_class) {
        std::set<int> next;
        for (const auto& p : spec.levels[j].zero_entries) next.insert(key(p));
        for (int k : cur)
          if (!next.count(k)) {
            ok = false;
            wit = "G_" + std::to_string(j + 1) + " predicate drops a G_" +
                  std::to_string(j) + " constraint";
          }
      }
      int free_entries = spec.total_entries() - static_cast<int>(cur.size());
      int rank_sum = 0;
      for (int jj = j; jj <= spec.nil_class; ++jj)
        rank_sum += spec.levels[jj - 1].rank;
      if (free_entries != rank_sum) {
        ok = false;
        wit = "G_" + std::to_string(j) + " has " + std::to_string(free_entries) +
              " free entries but rank sum " + std::to_string(rank_sum);
      }
    }
    for (const auto& g : sample)
      for (int j = 1; j <= spec.nil_class; ++j)
        if (spec.in_level(j + 1, g) && !spec.in_level(j, g)) {
          ok = false;
          wit = "element in G_" + std::to_string(j + 1) + " but not G_" +
                std::to_string(j);
        }
    add("predicates-nested", ok, wit);
  }

  // [G_i, G_j] ⊆ G_{i+j} on sampled elements
  {
    bool ok = true;
    std::string wit;
    for (std::size_t p = 0; p < sample.size() && ok; ++p)
      for (std::size_t q = 0; q < sample.size() && ok; ++q) {
        if (sample[p].is_identity() || sample[q].is_identity()) continue;
        int i = max_level(spec, sample[p]);
        int j = max_level(spec, sample[q]);
        GroupElement c = commutator(sample[p], sample[q]);
        int target = std::min(i + j, spec.nil_class + 1);
        if (!spec.in_level(target, c)) {
          ok = false;
          wit = "witness pair at levels " + std::to_string(i) + "," +
                std::to_string(j) + " leaves G_" + std::to_string(target);
        }
      }
    add("commutator-inclusions", ok, wit);
  }

  // phi_j^T vanishes on generators of G_{j+1}
  {
    bool ok = true;
    std::string wit;
    for (int j = 1; j < spec.nil_class; ++j)
      for (int jj = j + 1; jj <= spec.nil_class; ++jj)
        for (const auto& n : spec.graded[jj - 1]) {
          auto v = project(spec, j, spec.element(n));
          for (const auto& x : v)
            if (x != 0) {
              ok = false;
              wit = "phi_" + std::to_string(j) + " nonzero on " + n;
            }
        }
    add("projections-vanish-below", ok, wit);
  }

  // graded generators project to the standard basis of Z^{d_j}
  {
    bool ok = true;
    std::string wit;
    for (int j = 1; j <= spec.nil_class; ++j) {
      const auto& row = spec.graded[j - 1];
      if (static_cast<int>(row.size()) != spec.levels[j - 1].rank) {
        ok = false;
        wit = "graded generator count != d_" + std::to_string(j);
        continue;
      }
      for (std::size_t i = 0; i < row.size(); ++i) {
        auto v = project(spec, j, spec.element(row[i]));
        for (std::size_t k = 0; k < v.size(); ++k)
          if (v[k] != (k == i ? 1 : 0)) {
            ok = false;
            wit = "phi_" + std::to_string(j) + "(" + row[i] + ") not basis";
          }
      }
    }
    add("graded-generators-basis", ok, wit);
  }

  // subgroup generators satisfy their own predicates
  {
    bool ok = true;
    std::string wit;
    for (const auto& sub : spec.subgroups) {
      for (const auto& n : sub.gens)
        if (!is_member(sub, spec.element(n))) {
          ok = false;
          wit = sub.name + ": generator " + n + " fails the predicate";
        }
      if (sub.hj_gens)
        for (int j = 1; j <= spec.nil_class; ++j)
          for (const auto& n : (*sub.hj_gens)[j - 1]) {
            const auto& g = spec.element(n);
            if (!is_member(sub, g) || !spec.in_level(j, g)) {
              ok = false;
              wit = sub.name + ": H_" + std::to_string(j) + " generator " + n +
                    " outside H ∩ G_" + std::to_string(j);
            }
          }
    }
    add("subgroup-generators-member", ok, wit);
  }

  return rep;
}

}  // namespace nilreg
