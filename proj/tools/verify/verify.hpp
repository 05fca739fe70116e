#pragma once

// The acceptance suite: one check per criterion, each with an exact verdict and a time limit.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace krlab::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool correct = false;   // every exact comparison held
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;     // first failure, or a short summary

  bool pass() const { return correct && seconds < limit_seconds; }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  // Returns true when all comparisons hold; appends notes to `detail`.
  std::function<bool(std::string& detail, std::ostream* log)> run;
};

const std::vector<Criterion>& criteria();

CriterionResult run_criterion(const Criterion& c, std::ostream* log = nullptr);

// "PASS  3  invariance  (41.2 s, limit 300 s)  detail"
std::string format(const CriterionResult& r);

}  // namespace krlab::verify
