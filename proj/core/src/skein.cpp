#include "krlab/skein.hpp"

#include <algorithm>
#include <sstream>

#include "krlab/error.hpp"

namespace krlab::skein {

using ratfun::Laurent;

namespace {

Laurent mono(int alpha, int xi, int c = 1) { return Laurent::monomial(c, alpha, xi); }

// [N] = xi^{1-N} + xi^{3-N} + ... + xi^{N-1}
Laurent quantum_n(int N) {
  Laurent q;
  for (int k = 0; k < N; ++k) q.add_term(1, 0, -N + 1 + 2 * k);
  return q;
}

// xi^-1 - xi
Laurent xi_gap() { return mono(0, -1) - mono(0, 1); }

SkeinValue constant(const Laurent& l) { return SkeinValue::constant(RatFun(l)); }
SkeinValue tau_times(const Laurent& l) { return SkeinValue::tau_times(RatFun(l)); }

bool has_negative(const braid::BraidWord& w) {
  return std::any_of(w.letters.begin(), w.letters.end(), [](int l) { return l < 0; });
}

// Index k with letters[k] == letters[k+1] > 0, cyclically; -1 if none.
int cyclic_square(const braid::BraidWord& w) {
  std::size_t n = w.letters.size();
  if (n < 2) return -1;
  for (std::size_t k = 0; k < n; ++k)
    if (w.letters[k] > 0 && w.letters[k] == w.letters[(k + 1) % n]) return static_cast<int>(k);
  return -1;
}

}  // namespace

SkeinValue unlink_value(int m, int N) {
  if (m < 1) throw DomainError("unlink_value needs at least one component");
  if (N < 1) throw DomainError("N must be positive");
  const Laurent qn = quantum_n(N);
  // With R = (tau alpha xi^-1 + xi^-N) / (xi^-N - xi^N) one has R - 1 = xi^N (tau alpha xi^{-N-1} + 1) / (xi^-N - xi^N),
  // so the quotient (R^m - 1) / (tau alpha xi^{-N-1} + 1) becomes a geometric sum with denominators (xi^-1 - xi)^j.
  auto at = [&](int t) {
    Laurent pre = pow(mono(-1, 0, t), m);
    RatFun v(pre * pow(qn, m), 1, 0);
    Laurent step = mono(1, -1, t) + mono(0, -N);
    for (int j = 0; j < m; ++j) v += RatFun(pre * mono(0, N + j + 1) * pow(qn, m - 1 - j) * pow(step, j), 0, j + 1);
    return v.normalized();
  };
  return {at(1), at(-1)};
}

Evaluator::Evaluator(int N, long budget) : N_(N), budget_(budget) {
  if (N < 1) throw DomainError("N must be positive");
  if (budget < 1) throw DomainError("search budget must be positive");
}

EvaluatorStats Evaluator::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

SkeinValue Evaluator::evaluate(const braid::BraidWord& w) {
  std::lock_guard lock(mu_);
  ++stats_.calls;
  braid::BraidWord s = braid::simplify(w);
  if (auto it = memo_.find(s); it != memo_.end()) {
    ++stats_.memo_hits;
    return it->second;
  }
  SkeinValue v = compute(s).normalized();
  memo_.emplace(std::move(s), v);
  return v;
}

SkeinValue Evaluator::compute(const braid::BraidWord& w) {
  const int N = N_;
  if (w.letters.empty()) return unlink_value(w.strands, N);

  if (has_negative(w)) {
    ++stats_.negative_splits;
    auto p = static_cast<std::size_t>(std::find_if(w.letters.begin(), w.letters.end(), [](int l) { return l < 0; }) -
                                      w.letters.begin());
    braid::BraidWord plus = w, smooth = w;
    plus.letters[p] = -plus.letters[p];
    smooth.letters.erase(smooth.letters.begin() + static_cast<long>(p));
    return constant(mono(-2, -2 * N)) * evaluate(plus) - tau_times(mono(-1, -N) * xi_gap()) * evaluate(smooth);
  }

  if (int k = cyclic_square(w); k >= 0) {
    ++stats_.square_splits;
    braid::BraidWord r = w;
    std::rotate(r.letters.begin(), r.letters.begin() + k, r.letters.end());
    braid::BraidWord both = r, one = r;
    both.letters.erase(both.letters.begin(), both.letters.begin() + 2);
    one.letters.erase(one.letters.begin());
    return constant(mono(2, 2 * N)) * evaluate(both) + tau_times(mono(1, N) * xi_gap()) * evaluate(one);
  }

  // Square-free positive word: look for a transversely isotopic word the rules above shrink.
  auto goal = [&](const braid::BraidWord& x) {
    if (x.strands < w.strands || x.letters.size() < w.letters.size()) return true;
    return !has_negative(x) && (cyclic_square(x) >= 0 || braid::can_destabilize(x));
  };
  for (long b = budget_;; b = std::min(2 * b, kMaxBudget)) {
    ++stats_.searches;
    auto r = braid::markov_search(w, b, goal);
    if (r.goal >= 0) return evaluate(r.nodes[static_cast<std::size_t>(r.goal)].word);
    if (!r.exhausted || b >= kMaxBudget)
      throw BudgetError("irreducible positive word within budget: \"" + w.to_string() + "\" on " +
                        std::to_string(w.strands) + " strands, budget " + std::to_string(b));
  }
}

SkeinValue evaluate(const braid::BraidWord& w, int N, long budget) { return Evaluator(N, budget).evaluate(w); }

SkeinValue skein_residual(const braid::BraidWord& w, int p, int N, Evaluator* ev) {
  w.validate();
  if (p < 1 || p > static_cast<int>(w.letters.size())) throw DomainError("no letter at position " + std::to_string(p));
  Evaluator local(N);
  Evaluator& e = ev ? *ev : local;
  if (e.n() != N) throw DomainError("evaluator was built for a different N");
  auto idx = static_cast<std::size_t>(p - 1);
  braid::BraidWord plus = w, minus = w, smooth = w;
  plus.letters[idx] = std::abs(w.letters[idx]);
  minus.letters[idx] = -std::abs(w.letters[idx]);
  smooth.letters.erase(smooth.letters.begin() + static_cast<long>(idx));
  SkeinValue r = constant(mono(-1, -N)) * e.evaluate(plus) - constant(mono(1, N)) * e.evaluate(minus) -
                 tau_times(xi_gap()) * e.evaluate(smooth);
  return r.normalized();
}

SeriesTable series_expand(const SkeinValue& v, int alpha_max, int xi_max) {
  return {v.tau_free().series(alpha_max, xi_max), v.tau_part().series(alpha_max, xi_max)};
}

std::string to_string(const SeriesTable& t) {
  auto render = [](const std::map<std::pair<int, int>, ratfun::Rational>& m) {
    Laurent l;
    for (const auto& [k, c] : m) l.add_term(c, k.first, k.second);
    return l.to_string();
  };
  std::ostringstream os;
  os << "P0 = " << render(t.tau0) << " + ...\n";
  os << "P1 = " << render(t.tau1) << " + ...\n";
  return os.str();
}

}  // namespace krlab::skein
