#pragma once

#include <string>
#include <vector>

namespace saddle::verify {

struct SuiteResult {
  std::string name;
  bool pass = false;
  double worst_margin = 0.0;  // worst slack against the suite's tolerance
  std::string detail;
};

std::vector<SuiteResult> run_all(unsigned seed);

}  // namespace saddle::verify
