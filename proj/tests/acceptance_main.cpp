// One PASS/FAIL line per acceptance criterion; the exit status is nonzero if any line fails.

#include <cstring>
#include <iostream>
#include <set>
#include <string>

#include "verify.hpp"

int main(int argc, char** argv) {
  std::set<int> only;
  bool verbose = false;
  for (int k = 1; k < argc; ++k) {
    if (!std::strcmp(argv[k], "-v"))
      verbose = true;
    else
      only.insert(std::stoi(argv[k]));
  }
  int failed = 0;
  for (const auto& c : krlab::verify::criteria()) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto r = krlab::verify::run_criterion(c, verbose ? &std::cerr : nullptr);
    std::cout << krlab::verify::format(r) << std::endl;
    if (!r.pass()) ++failed;
  }
  return failed ? 1 : 0;
}
