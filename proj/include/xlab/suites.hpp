#pragma once

#include <string>
#include <vector>

namespace xlab {

// A bundled, self-contained experiment set: one or more ready-to-run JSON
// configs with pinned tolerances.  `verify <name>` runs every config of the
// suite and reports the combined verdict.
struct Suite {
  std::string name;
  std::string description;
  std::vector<std::string> configs;  // JSON documents
};

const std::vector<Suite>& bundled_suites();
const Suite* find_suite(const std::string& name);

}  // namespace xlab
