#pragma once

#include <cstdint>

#include "supergrade/json_io.hpp"

namespace supergrade {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;   // one human-readable line
  json data;            // structured witnesses / counters
  double seconds = 0;
};

/// Names of the acceptance suite, in criterion order.
std::vector<std::string> list_checks();

/// Runs one named check; unknown names throw std::invalid_argument.
CheckResult run_check(const std::string& name, std::uint64_t seed = 0);

}  // namespace supergrade
