#include "nilreg/catalog.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nilreg {

using nlohmann::json;

namespace {

EntryPos parse_pos(const json& j) {
  return EntryPos{j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>()};
}

LinearFunctional parse_fn(const json& j) {
  LinearFunctional f;
  for (const auto& t : j) {
    LinearFunctional::Term term;
    term.pos = EntryPos{t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()};
    term.coeff = Int(t.at(3).get<long long>());
    f.terms.push_back(std::move(term));
  }
  return f;
}

GroupElement parse_element(const json& j, const std::vector<int>& dims) {
  GroupElement g;
  if (j.size() != dims.size())
    fail(ErrorKind::Structural, "catalog: element factor count mismatch");
  for (std::size_t f = 0; f < dims.size(); ++f) {
    const int d = dims[f];
    IntMat m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        m(r, c) = Int(j.at(f).at(r).at(c).get<long long>());
    for (int r = 0; r < d; ++r) {
      if (m(r, r) != 1)
        fail(ErrorKind::Structural, "catalog: matrix not unitriangular (diagonal)");
      for (int c = 0; c < r; ++c)
        if (m(r, c) != 0)
          fail(ErrorKind::Structural, "catalog: matrix not unitriangular (below diagonal)");
    }
    g.factors.push_back(std::move(m));
  }
  return g;
}

SubgroupSpec parse_subgroup(const json& j, int nil_class) {
  SubgroupSpec s;
  s.name = j.at("name").get<std::string>();
  for (const auto& p : j.at("zero_entries")) s.zero_entries.push_back(parse_pos(p));
  if (j.contains("zero_functionals"))
    for (const auto& f : j["zero_functionals"]) s.zero_functionals.push_back(parse_fn(f));
  s.gens = j.at("gens").get<std::vector<std::string>>();
  if (j.contains("hj_gens")) {
    auto hj = j["hj_gens"].get<std::vector<std::vector<std::string>>>();
    if (static_cast<int>(hj.size()) != nil_class)
      fail(ErrorKind::Structural,
           "catalog: subgroup " + s.name + " hj_gens has wrong level count");
    s.hj_gens = std::move(hj);
  }
  if (j.contains("pi")) {
    s.pi = parse_fn(j["pi"]);
    s.pi_center = j.at("pi_center").get<std::string>();
  }
  if (j.contains("canonicalizer"))
    for (const auto& st : j["canonicalizer"])
      s.canonicalizer.push_back(
          CanonStep{st.at("gen").get<std::string>(), parse_pos(st.at("entry"))});
  if (j.contains("order")) s.order_fn = parse_fn(j["order"]);
  if (j.contains("join_center")) s.join_center = j["join_center"].get<std::string>();
  return s;
}

GroupSpec parse_group(const json& j) {
  GroupSpec g;
  g.name = j.at("name").get<std::string>();
  g.factor_dims = j.at("factors").get<std::vector<int>>();
  g.nil_class = j.at("class").get<int>();
  g.abelian = j.value("abelian", false);

  for (const auto& [name, mat] : j.at("generators").items()) {
    g.gen_names.push_back(name);
    g.elements.emplace(name, parse_element(mat, g.factor_dims));
  }
  if (j.contains("products"))
    for (const auto& [name, word] : j["products"].items()) {
      GroupElement e = g.identity();
      for (const auto& part : word.get<std::vector<std::string>>())
        e = mul(e, g.element(part));
      g.elements.emplace(name, std::move(e));
    }

  g.word_gens = j.at("word_gens").get<std::vector<std::string>>();
  g.graded = j.at("graded").get<std::vector<std::vector<std::string>>>();
  if (static_cast<int>(g.graded.size()) != g.nil_class)
    fail(ErrorKind::Structural, "catalog: graded table level count != class");

  for (const auto& lv : j.at("levels")) {
    if (lv.contains("torsion") && !lv["torsion"].empty())
      fail(ErrorKind::Structural,
           "catalog: group " + g.name +
               " declares a nonzero torsion part; the schema requires torsion-free quotients");
    LevelSpec level;
    level.rank = lv.at("rank").get<int>();
    for (const auto& p : lv.at("zero_entries")) level.zero_entries.push_back(parse_pos(p));
    for (const auto& f : lv.at("proj")) level.proj.push_back(parse_fn(f));
    if (static_cast<int>(level.proj.size()) != level.rank)
      fail(ErrorKind::Structural, "catalog: proj count != rank in " + g.name);
    g.levels.push_back(std::move(level));
  }
  if (static_cast<int>(g.levels.size()) != g.nil_class)
    fail(ErrorKind::Structural, "catalog: level count != class in " + g.name);

  if (j.contains("subgroups"))
    for (const auto& s : j["subgroups"]) g.subgroups.push_back(parse_subgroup(s, g.nil_class));
  if (j.contains("witnesses"))
    for (const auto& w : j["witnesses"]) {
      WitnessSpec ws;
      ws.name = w.at("name").get<std::string>();
      ws.central = w.at("central").get<std::string>();
      ws.K = w.at("K").get<std::string>();
      ws.H = w.at("H").get<std::string>();
      ws.mu = parse_fn(w.at("mu"));
      for (const auto& step : w.at("chain"))
        ws.chain.push_back(
            ChainStep{step.at("sub").get<std::string>(), parse_fn(step.at("lambda"))});
      g.witnesses.push_back(std::move(ws));
    }
  if (j.contains("central_candidates"))
    for (const auto& c : j["central_candidates"]) {
      CentralCandidate cc;
      cc.element = c.at("element").get<std::string>();
      cc.witnesses = c.at("witnesses").get<std::vector<std::string>>();
      cc.rationale = c.value("rationale", "");
      g.central_candidates.push_back(std::move(cc));
    }
  return g;
}

}  // namespace

const GroupSpec& Catalog::group(const std::string& name) const {
  for (const auto& g : groups)
    if (g.name == name) return g;
  std::string avail;
  for (const auto& g : groups) avail += (avail.empty() ? "" : ", ") + g.name;
  fail(ErrorKind::Lookup, "unknown group '" + name + "' (available: " + avail + ")");
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Lookup, "cannot open catalog file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();

  Catalog cat;
  cat.path = path;
  cat.content_hash = fnv1a(bytes);
  json j = json::parse(bytes);
  if (j.value("schema", "") != std::string("nilreg-catalog-v1"))
    fail(ErrorKind::Structural, "catalog: unknown schema tag");
  for (const auto& g : j.at("groups")) cat.groups.push_back(parse_group(g));
  return cat;
}

std::string default_catalog_path() {
#ifdef NILREG_DEFAULT_CATALOG
  if (const char* env = std::getenv("NILREG_CATALOG")) return env;
  return NILREG_DEFAULT_CATALOG;
#else
  if (const char* env = std::getenv("NILREG_CATALOG")) return env;
  return "catalog.json";
#endif
}

}  // namespace nilreg
