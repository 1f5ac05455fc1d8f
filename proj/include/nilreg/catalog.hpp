#pragma once

#include <string>
#include <vector>

#include "nilreg/group.hpp"

namespace nilreg {

struct Catalog {
  std::vector<GroupSpec> groups;
  std::uint64_t content_hash = 0;  // FNV-1a of the file bytes
  std::string path;

  const GroupSpec& group(const std::string& name) const;
};

Catalog load_catalog(const std::string& path);
std::string default_catalog_path();

}  // namespace nilreg
