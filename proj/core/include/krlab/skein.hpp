#pragma once

// The decategorification P_N of closed braids by skein recursion.

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "krlab/braid.hpp"
#include "krlab/ratfun.hpp"

namespace krlab::skein {

using ratfun::RatFun;
using ratfun::SkeinValue;

// Value of the m-component crossingless closure.
SkeinValue unlink_value(int m, int N);

struct EvaluatorStats {
  long calls = 0, memo_hits = 0, negative_splits = 0, square_splits = 0, searches = 0;
};

// Memoized recursion: negative letters are split into their positive version and the
// smoothing, positive squares are split, and square-free positive words go through a
// budgeted Markov search. The memo is shared by all calls on one evaluator.
class Evaluator {
 public:
  static constexpr long kDefaultBudget = 10'000;
  static constexpr long kMaxBudget = 1'000'000;

  explicit Evaluator(int N, long budget = kDefaultBudget);

  // Throws BudgetError when a positive word resists every search up to kMaxBudget.
  SkeinValue evaluate(const braid::BraidWord& w);
  int n() const { return N_; }
  EvaluatorStats stats() const;

 private:
  SkeinValue compute(const braid::BraidWord& w);

  int N_;
  long budget_;
  mutable std::recursive_mutex mu_;
  std::map<braid::BraidWord, SkeinValue> memo_;
  EvaluatorStats stats_;
};

SkeinValue evaluate(const braid::BraidWord& w, int N, long budget = Evaluator::kDefaultBudget);

// alpha^-1 xi^-N P(w+) - alpha xi^N P(w-) - tau (xi^-1 - xi) P(w0) for the letter at 1-based
// position p, with w+/w- carrying that letter positive/negative and w0 without it.
SkeinValue skein_residual(const braid::BraidWord& w, int p, int N, Evaluator* ev = nullptr);

// Series coefficients of P = P0 + tau P1 up to the given caps.
struct SeriesTable {
  std::map<std::pair<int, int>, ratfun::Rational> tau0, tau1;
};
SeriesTable series_expand(const SkeinValue& v, int alpha_max, int xi_max);
std::string to_string(const SeriesTable& t);

}  // namespace krlab::skein
