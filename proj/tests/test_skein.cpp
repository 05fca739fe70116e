#include <doctest.h>

#include "krlab/braid.hpp"
#include "krlab/error.hpp"
#include "krlab/ratfun.hpp"
#include "krlab/skein.hpp"

using namespace krlab;
using namespace krlab::ratfun;

namespace {

Laurent mono(int a, int x, int c = 1) { return Laurent::monomial(c, a, x); }

Laurent quantum(int N) {
  Laurent s;
  for (int k = 0; k < N; ++k) s += mono(0, 1 - N + 2 * k);
  return s;
}

// P(U^m) at tau = t as a plain quotient, by the recursion that adds one component at a time.
Fraction unlink_by_recursion(int m, int N, int t) {
  Fraction qn{quantum(N), Laurent(1)};
  Fraction base{Laurent(1) + mono(-1, 1 - N, t), Laurent(1) - mono(0, 2)};
  Fraction lead{mono(-1, 0, t), Laurent(1)};
  Fraction gap{mono(0, N), mono(0, -1) - mono(0, 1)};
  Fraction p = lead * (qn * Fraction{Laurent(1), Laurent(1) - mono(2, 0)} + gap);
  Fraction pw{Laurent(1), Laurent(1)};
  for (int k = 2; k <= m; ++k) {
    pw = pw * base;
    p = lead * (qn * p + gap * pw);
  }
  return p;
}

braid::BraidWord word(const std::string& s, int strands = 0) { return braid::parse(s, strands); }

}  // namespace

TEST_CASE("laurent and rational function arithmetic") {
  Laurent x = mono(0, 1), a = mono(1, 0);
  CHECK((x + a) * (x - a) == x * x - a * a);
  CHECK(pow(x, 3).coefficient(0, 3) == 1);
  CHECK((Laurent(1) - mono(0, 2)).to_string().find("ξ^2") != std::string::npos);

  // (1 - xi^2) / (1 - xi^2) normalizes to 1
  RatFun r(Laurent(1) - mono(0, 2), 0, 1);
  auto n = r.normalized();
  CHECK(n.q == 0);
  CHECK(n.num == Laurent(1));
  CHECK(r == RatFun(Laurent(1)));
  CHECK(RatFun(Laurent(1), 1, 0) + RatFun(Laurent(-1), 1, 0) == RatFun());
  CHECK_FALSE(RatFun(Laurent(1), 1, 0) == RatFun(Laurent(1), 0, 1));
}

TEST_CASE("power series expansion") {
  // 1 / (1 - alpha^2)
  auto s = RatFun(Laurent(1), 1, 0).series(6, 0);
  CHECK(s.size() == 4);
  for (int k = 0; k <= 6; k += 2) CHECK(s.at({k, 0}) == 1);
  // xi / (1 - xi^2)^2 = sum (k + 1) xi^(2k + 1)
  auto t = RatFun(mono(0, 1), 0, 2).series(0, 9);
  for (int k = 0; k <= 4; ++k) CHECK(t.at({0, 2 * k + 1}) == k + 1);
  // [3] is its own expansion
  auto q = RatFun(quantum(3)).series(0, 4);
  CHECK(q.size() == 3);
  CHECK(q.at({0, -2}) == 1);
  // a general quotient agrees with the same value in normal form
  Fraction f{mono(0, 1), (Laurent(1) - mono(0, 2)) * (Laurent(1) - mono(0, 2))};
  CHECK(f.series(0, 9) == t);
  CHECK(f == RatFun(mono(0, 1), 0, 2));
  CHECK_THROWS_AS((f / Fraction{Laurent(), Laurent(1)}), DomainError);
}

TEST_CASE("unlink value against its recursion") {
  for (int N = 1; N <= 4; ++N)
    for (int m = 1; m <= 4; ++m) {
      CAPTURE(N);
      CAPTURE(m);
      auto v = skein::unlink_value(m, N);
      CHECK(unlink_by_recursion(m, N, 1) == v.plus);
      CHECK(unlink_by_recursion(m, N, -1) == v.minus);
    }
  CHECK_THROWS_AS(skein::unlink_value(0, 1), DomainError);
}

TEST_CASE("tau parts") {
  auto v = skein::unlink_value(1, 1);
  // P(U) is tau alpha^-1 (...), so the tau-free part vanishes
  CHECK(v.tau_free() == RatFun());
  CHECK(v.tau_part() == v.plus);
  SkeinValue c = SkeinValue::constant(RatFun(mono(1, 0)));
  CHECK(c.tau_part() == RatFun());
  CHECK((c * SkeinValue::tau_times(RatFun(Laurent(1)))).tau_part() == RatFun(mono(1, 0)));
}

TEST_CASE("evaluation of small closures") {
  for (int N = 1; N <= 3; ++N) {
    CAPTURE(N);
    skein::Evaluator ev(N);
    auto u = skein::unlink_value(1, N);
    CHECK(ev.evaluate(word("", 1)) == u);
    CHECK(ev.evaluate(word("1")) == u);
    CHECK(ev.evaluate(word("1 2 3")) == u);
    CHECK(ev.evaluate(word("", 3)) == skein::unlink_value(3, N));
    // a negative stabilization: alpha^-2 xi^-2N P(U) - tau alpha^-1 xi^-N (xi^-1 - xi) P(U^2)
    SkeinValue neg = SkeinValue::constant(RatFun(mono(-2, -2 * N))) * u -
                     SkeinValue::tau_times(RatFun(mono(-1, -N - 1) - mono(-1, 1 - N))) * skein::unlink_value(2, N);
    CHECK(ev.evaluate(word("-1")) == neg);
    CHECK(ev.stats().calls > 0);
  }
}

TEST_CASE("skein relation residuals vanish") {
  CHECK(skein::skein_residual(word("1"), 1, 1).is_zero());
  CHECK(skein::skein_residual(word("1"), 1, 2).is_zero());
  CHECK(skein::skein_residual(word("1"), 1, 3).is_zero());
  CHECK(skein::skein_residual(word("1 2 1"), 2, 1).is_zero());
  CHECK(skein::skein_residual(word("-1 -1"), 1, 2).is_zero());
  CHECK(skein::skein_residual(word("1 -2 1 -2"), 3, 1).is_zero());
  CHECK_THROWS_AS(skein::skein_residual(word("1"), 2, 1), DomainError);
  skein::Evaluator ev(2);
  CHECK_THROWS_AS(skein::skein_residual(word("1"), 1, 1, &ev), DomainError);
}

TEST_CASE("search budget") {
  CHECK_THROWS_AS(skein::Evaluator(1, 0), DomainError);
  CHECK_THROWS_AS(skein::Evaluator(0), DomainError);
  // a tiny starting budget only costs retries
  CHECK(skein::evaluate(word("1 2 1 2"), 1, 1) == skein::evaluate(word("1 2 1 2"), 1));
}
