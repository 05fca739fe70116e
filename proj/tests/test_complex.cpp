#include <doctest.h>

#include "krlab/complex.hpp"
#include "krlab/qamod.hpp"

using namespace krlab;
using namespace krlab::complex;

namespace {

bool is_scalar(const Matrix& m, const Poly& s) {
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c)
      if (!(m[r][c] == (r == c ? s : Poly()))) return false;
  return true;
}

}  // namespace

TEST_CASE("crossing model maps") {
  auto t = std::make_shared<poly::VariableTable>();
  int x1 = t->add_mark("x1"), y1 = t->add_mark("y1"), x2 = t->add_mark("x2"), y2 = t->add_mark("y2");
  for (int N = 1; N <= 3; ++N)
    for (int sign : {1, -1}) {
      CAPTURE(N);
      auto c = crossing_model(t, sign, x1, y1, x2, y2, N);
      auto g0 = mf::koszul(c.gamma0), g1 = mf::koszul(c.gamma1);
      CHECK_NOTHROW(g0.check());
      CHECK_NOTHROW(g1.check());
      CHECK(g0.potential == g1.potential);
      CHECK_NOTHROW(check_morphism(g0, g1, c.chi0, {0, 1}));
      CHECK_NOTHROW(check_morphism(g1, g0, c.chi1, {0, 1}));
      CHECK_THROWS_AS(check_morphism(g0, g1, c.chi0, {0, 0}), DomainError);
      // both composites are multiplication by x2 - x1
      CHECK(c.s == Poly::var(x2) - Poly::var(x1));
      auto c10 = compose(c.chi1, c.chi0), c01 = compose(c.chi0, c.chi1);
      CHECK(is_scalar(c10.f0, c.s));
      CHECK(is_scalar(c10.f1, c.s));
      CHECK(is_scalar(c01.f0, c.s));
      CHECK(is_scalar(c01.f1, c.s));
    }
  CHECK_THROWS_AS(crossing_model(t, 1, x1, x1, x2, y2, 1), DomainError);
}

TEST_CASE("crossingless closure of one strand") {
  for (int N = 1; N <= 3; ++N) {
    BuildInfo info;
    auto c = build_complex({1, {}}, N, {}, &info);
    CHECK_NOTHROW(c.check());
    CHECK(info.crossings == 0);
    CHECK(info.components == 1);
    REQUIRE(c.terms.size() == 1);
    const auto& m = c.terms.at(0);
    REQUIRE(m.rank() == 2);
    // a single row ((N+1) a x^N, 0) in the one surviving mark
    REQUIRE(c.ring_vars.size() == 1);
    Poly expect = poly::Rational(N + 1) * Poly::var(0) * Poly::var(c.ring_vars[0], N);
    bool found = false;
    for (const auto& row : m.d0)
      for (const auto& e : row) found = found || e == expect;
    for (const auto& row : m.d1)
      for (const auto& e : row) found = found || e == expect;
    CHECK(found);
    CHECK(m.potential.is_zero());
  }
}

TEST_CASE("cube complexes satisfy the complex identities") {
  const std::vector<std::pair<std::string, int>> words = {{"1", 2}, {"-1", 2}, {"1 1", 2}, {"1 -1", 2},
                                                          {"1 2", 3}, {"1 -2 1", 3}, {"-1 -1 -1", 2}};
  for (int N = 1; N <= 2; ++N)
    for (const auto& [text, m] : words) {
      CAPTURE(text);
      BuildInfo info;
      auto c = build_complex(braid::parse(text, m), N, {}, &info);
      CHECK_NOTHROW(c.check());
      CHECK(info.crossings == static_cast<int>(braid::parse(text, m).letters.size()));
      CHECK(info.cube_states.size() == (std::size_t{1} << info.crossings));
      auto e = gaussian_eliminate(c);
      CHECK_NOTHROW(e.check());
      CHECK(e.generators() <= c.generators());
    }
}

TEST_CASE("extra marks do not change the homology") {
  int N = 1;
  auto w = braid::parse("1 1", 2);
  auto base = qamod::two_stage_homology(build_complex(w, N), {10, true});
  auto more = qamod::two_stage_homology(build_complex(w, N, {{1, 1}, {2, 2}}), {10, true});
  CHECK(base.window(base.x_min, base.x_max).slices ==
        more.window(std::max(base.x_min, more.x_min), base.x_max).slices);
}

TEST_CASE("gaussian elimination keeps the homology") {
  for (const auto& text : {"1 1", "1 -1", "-1 -1"}) {
    auto c = build_complex(braid::parse(text, 2), 1);
    auto e = gaussian_eliminate(c);
    auto h0 = qamod::two_stage_homology(c, {10, true});
    auto h1 = qamod::two_stage_homology(e, {10, true});
    CHECK(h0.slices == h1.slices);
  }
}
