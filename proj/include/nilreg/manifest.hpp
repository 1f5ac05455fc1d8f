#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nilreg/common.hpp"

namespace nilreg {

inline constexpr const char* kToolVersion = "nilreg 0.1.0";

// Written next to every CLI output; re-running the recorded argv reproduces
// the outputs byte for byte (seeded commands replay their seeds).
struct RunManifest {
  std::string command;  // argv joined
  std::vector<std::string> argv;
  std::uint64_t catalog_hash = 0;
  std::vector<std::uint64_t> seeds;
  std::string version = kToolVersion;
  double elapsed_s = 0;
  double budget_s = 0;  // 0: unlimited
  std::vector<std::string> outputs;

  void save(const std::string& path) const;
  static RunManifest load(const std::string& path);
};

}  // namespace nilreg
