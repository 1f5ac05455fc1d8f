#pragma once

#include "nilreg/catalog.hpp"

inline const nilreg::Catalog& cat() {
  static nilreg::Catalog c = nilreg::load_catalog(nilreg::default_catalog_path());
  return c;
}
