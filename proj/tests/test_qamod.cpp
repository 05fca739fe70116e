#include <doctest.h>

#include "krlab/braid.hpp"
#include "krlab/complex.hpp"
#include "krlab/qamod.hpp"

using namespace krlab;
using namespace krlab::qamod;
using ratfun::Laurent;
using ratfun::RatFun;
using ratfun::SkeinValue;

namespace {

SliceMatrix slice(std::vector<int> source, std::vector<int> target, std::vector<std::vector<int>> q) {
  auto m = SliceMatrix::zero(std::move(source), std::move(target), 0);
  for (std::size_t r = 0; r < q.size(); ++r)
    for (std::size_t c = 0; c < q[r].size(); ++c) m.q[r][c] = q[r][c];
  m.validate();
  return m;
}

void check_reconstruction(const SliceMatrix& m) {
  auto s = smith(m);
  CHECK(multiply(multiply(s.left, m), s.right).q == s.diagonal.q);
  CHECK(multiply(multiply(s.left_inv, s.diagonal), s.right_inv).q == m.q);
}

GradedQaModule homology_of(const std::string& word, int strands, int N, int W = 12) {
  return two_stage_homology(complex::build_complex(braid::parse(word, strands), N), {W, true});
}

Laurent mono(int a, int x) { return Laurent::monomial(1, a, x); }

}  // namespace

TEST_CASE("smith form of small slices") {
  // [[a, 0], [0, a^2]]
  auto m = slice({2, 4}, {0, 0}, {{1, 0}, {0, 1}});
  auto s = smith(m);
  CHECK(s.exponents == std::vector<int>{1, 2});
  check_reconstruction(m);
  auto c = cokernel(m);
  CHECK(c.free.empty());
  CHECK(c.torsion == std::vector<std::pair<int, int>>{{1, 0}, {2, 0}});

  // [[a, a], [0, a^2]] has the same invariant factors
  auto n = slice({2, 2}, {0, -2}, {{1, 1}, {0, 1}});
  CHECK(smith(n).exponents == std::vector<int>{1, 2});
  check_reconstruction(n);
  CHECK(cokernel(n).torsion == std::vector<std::pair<int, int>>{{1, 0}, {2, -2}});

  // the zero map leaves its target free; a unit kills it
  auto z = slice({0}, {0}, {{0}});
  CHECK(smith(z).pivots.empty());
  CHECK(cokernel(z).free == std::vector<int>{0});
  CHECK(cokernel(slice({0}, {0}, {{3}})).empty());

  // a least exponent is always chosen as pivot: [[a^2, a], [a, 0]] -> (a, a)
  auto p = slice({2, 0}, {-2, 0}, {{1, 1}, {1, 0}});
  CHECK(smith(p).exponents == std::vector<int>{1, 1});
  check_reconstruction(p);
}

TEST_CASE("negative a-exponents are rejected") {
  auto m = SliceMatrix::zero({0}, {2}, 0);
  m.q[0][0] = 1;
  CHECK_THROWS_AS(m.validate(), DomainError);
}

TEST_CASE("kernel and span") {
  // [a, a] has kernel spanned by (1, -1)
  auto m = slice({2, 2}, {0}, {{1, 1}});
  auto k = kernel(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0].v[0] == -k[0].v[1]);
  CHECK(k[0].v[0] != 0);
  Span sp({2, 2}, k);
  CHECK(sp.rank() == 1);
  CHECK(sp.solve({2, {5, -5}}).has_value());
  CHECK_FALSE(sp.solve({2, {1, 0}}).has_value());
}

TEST_CASE("unknot homology for N = 1") {
  auto m = homology_of("", 1, 1);
  CHECK(m.x_min == 0);
  REQUIRE(m.slices.count({1, 0, 0}));
  CHECK(m.slices.at({1, 0, 0}).free == std::vector<int>{-1});
  for (int x = 2; x <= m.x_max; x += 2) {
    CAPTURE(x);
    REQUIRE(m.slices.count({1, 0, x}));
    CHECK(m.slices.at({1, 0, x}).torsion == std::vector<std::pair<int, int>>{{1, -1}});
  }
  CHECK(m.slices.size() == static_cast<std::size_t>(m.x_max / 2 + 1));

  auto tails = m.tails();
  REQUIRE(tails.size() == 1);
  CHECK(tails[0].start <= 4);
  CHECK(tails[0].pattern.torsion == std::vector<std::pair<int, int>>{{1, -1}});

  auto one = specialize(m, At::AOne);
  CHECK(one.dims.size() == 1);
  CHECK(one.dims.at({1, 0, 0}) == 1);
  auto zero = specialize(m, At::AZero);
  CHECK(zero.dims.at({1, 0, 2}) == 1);
  CHECK(zero.generators.at({1, 0, 2, -1}) == 1);

  // tau alpha^-1 (1 / (1 - alpha^2) + xi^2 / (1 - xi^2))
  auto e = euler_characteristic(m);
  CHECK(e.tail_verified);
  auto at = [](int t) { return RatFun(Laurent::monomial(t, -1, 0), 1, 0) + RatFun(Laurent::monomial(t, -1, 2), 0, 1); };
  CHECK(e.value == SkeinValue{at(1), at(-1)});
}

TEST_CASE("positive stabilization leaves the homology unchanged") {
  for (int N = 1; N <= 2; ++N) {
    auto u = homology_of("", 1, N, 14);
    auto s = homology_of("1", 2, N, 14);
    int hi = std::min(u.x_max, s.x_max);
    CHECK(u.window(u.x_min, hi).slices == s.window(s.x_min, hi).slices);
  }
}

TEST_CASE("negative stabilization adds a torsion column") {
  auto m = homology_of("-1", 2, 1);
  CHECK(m.slices.at({1, 0, 0}).free == std::vector<int>{-1});
  for (int x = 0; x <= m.x_max; x += 2) {
    CAPTURE(x);
    REQUIRE(m.slices.count({0, 1, x}));
    CHECK(m.slices.at({0, 1, x}).torsion == std::vector<std::pair<int, int>>{{1, -2}});
  }
}

TEST_CASE("window and euler_window") {
  auto m = homology_of("", 1, 1);
  auto w = m.window(0, 4);
  CHECK(w.x_min == 0);
  CHECK(w.x_max == 4);
  CHECK(w.slices.size() == 3);
  // window sum: alpha^-1 / (1 - alpha^2) + (alpha^-1 - alpha) (xi^2 + xi^4) / (1 - alpha^2), times tau
  auto v = euler_window(w);
  Laurent num = mono(-1, 0) + (mono(-1, 2) - mono(1, 2)) + (mono(-1, 4) - mono(1, 4));
  CHECK(v.plus == RatFun(num, 1, 0));
  CHECK(v.minus == RatFun(-num, 1, 0));
}
