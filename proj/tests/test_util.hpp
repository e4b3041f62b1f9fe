#pragma once

#include <cstdlib>
#include <string>

#include "pascal_ecpp/cm.hpp"

namespace pascal_ecpp::testutil {

inline std::string default_table_path() {
  if (const char* env = std::getenv("PASCAL_ECPP_TABLES")) return env;
  return PASCAL_ECPP_DEFAULT_TABLES;
}

inline const DiscriminantTable& bundled_table() {
  static const DiscriminantTable table =
      DiscriminantTable::load(default_table_path());
  return table;
}

}  // namespace pascal_ecpp::testutil
