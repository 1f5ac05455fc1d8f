#include "nilreg/manifest.hpp"

#include <fstream>

#include <json.hpp>

namespace nilreg {

using nlohmann::json;

void RunManifest::save(const std::string& path) const {
  json j;
  j["command"] = command;
  j["argv"] = argv;
  j["catalog_hash"] = catalog_hash;
  j["seeds"] = seeds;
  j["version"] = version;
  j["elapsed_s"] = elapsed_s;
  if (budget_s > 0) j["budget_s"] = budget_s;
  j["outputs"] = outputs;
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Structural, "manifest: cannot write " + path);
  out << j.dump(1) << "\n";
}

RunManifest RunManifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Lookup, "manifest: cannot open " + path);
  json j = json::parse(in);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.argv = j.at("argv").get<std::vector<std::string>>();
  m.catalog_hash = j.at("catalog_hash").get<std::uint64_t>();
  m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  m.version = j.at("version").get<std::string>();
  m.elapsed_s = j.at("elapsed_s").get<double>();
  m.budget_s = j.value("budget_s", 0.0);
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  return m;
}

}  // namespace nilreg
