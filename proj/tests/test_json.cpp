#include <doctest.h>

#include "json_io.hpp"
#include "krlab/braid.hpp"
#include "krlab/complex.hpp"
#include "krlab/error.hpp"

using namespace krlab;

TEST_CASE("module documents round trip") {
  for (int N = 1; N <= 2; ++N) {
    auto c = complex::build_complex(braid::parse("-1", 2), N);
    auto m = qamod::two_stage_homology(c, {10, true});
    auto j = io::to_json(m);
    CHECK(j.at("slices").size() == m.slices.size());
    CHECK(io::module_from_json(j) == m);
    CHECK(io::module_from_json(nlohmann::json::parse(j.dump())) == m);
  }
}

TEST_CASE("malformed module documents") {
  CHECK_THROWS_AS(io::module_from_json(nlohmann::json::object()), ParseError);
  CHECK_THROWS_AS(io::module_from_json(nlohmann::json::parse(R"({"x_min":0,"x_max":2,"slices":[{"eps":1}]})")),
                  ParseError);
  CHECK_THROWS_AS(io::module_from_json(nlohmann::json::parse(R"({"x_min":"low","x_max":2,"slices":[]})")), ParseError);
}

TEST_CASE("tails and series documents") {
  qamod::Tail t{1, 0, 2, {{}, {{1, -1}}}};
  auto j = io::to_json(std::vector<qamod::Tail>{t});
  REQUIRE(j.size() == 1);
  CHECK(j[0].at("start") == 2);
  CHECK(j[0].at("torsion")[0] == nlohmann::json::array({1, -1}));
  std::map<std::pair<int, int>, ratfun::Rational> s{{{1, 2}, ratfun::Rational(3, 4)}};
  CHECK(io::to_json(s)[0].at("c") == "3/4");
}
