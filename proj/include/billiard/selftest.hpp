#pragma once

#include <string>
#include <vector>

namespace billiard {

struct SelftestCheck {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Invariant checks over every module, small enough to run in a few seconds.
std::vector<SelftestCheck> run_selftest();

}  // namespace billiard
