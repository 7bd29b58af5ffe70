#pragma once

#include "pqs/group.hpp"

namespace test_support {

// Shipped catalog, loaded once per test binary.
inline const pqs::GroupCatalog& catalog() {
  static const pqs::GroupCatalog cat = pqs::load_catalog(PQS_DATA_DIR "/groups.txt");
  return cat;
}

}  // namespace test_support
