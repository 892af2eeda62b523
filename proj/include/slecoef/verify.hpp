#pragma once

// Named verification suites: each item is one acceptance check with a hard
// pass/fail verdict and a timing. Shared by the `verify` CLI subcommand and
// the acceptance test binary.

#include <string>
#include <vector>

namespace slecoef {

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckItem> items;
  bool pass() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
};

std::vector<std::string> verify_suite_names();
SuiteResult verify_suite(const std::string& name);

}  // namespace slecoef
