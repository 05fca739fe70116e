#include "json_io.hpp"

#include <algorithm>

#include "krlab/error.hpp"

namespace krlab::io {

using nlohmann::json;

json to_json(const qamod::GradedQaModule& m) {
  json slices = json::array();
  for (const auto& [k, s] : m.slices) {
    auto [eps, i, x] = k;
    json torsion = json::array();
    for (auto [l, t] : s.torsion) torsion.push_back({l, t});
    slices.push_back({{"eps", eps}, {"i", i}, {"x", x}, {"free", s.free}, {"torsion", torsion}});
  }
  return {{"x_min", m.x_min}, {"x_max", m.x_max}, {"slices", slices}};
}

qamod::GradedQaModule module_from_json(const json& j) {
  try {
    qamod::GradedQaModule m;
    m.x_min = j.at("x_min").get<int>();
    m.x_max = j.at("x_max").get<int>();
    for (const auto& s : j.at("slices")) {
      qamod::QaSlice q;
      q.free = s.at("free").get<std::vector<int>>();
      for (const auto& t : s.at("torsion")) q.torsion.emplace_back(t.at(0).get<int>(), t.at(1).get<int>());
      std::sort(q.free.begin(), q.free.end());
      std::sort(q.torsion.begin(), q.torsion.end());
      m.slices[{s.at("eps").get<int>(), s.at("i").get<int>(), s.at("x").get<int>()}] = std::move(q);
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed module document: ") + e.what());
  }
}

json to_json(const std::vector<qamod::Tail>& tails) {
  json out = json::array();
  for (const auto& t : tails) {
    json torsion = json::array();
    for (auto [l, s] : t.pattern.torsion) torsion.push_back({l, s});
    out.push_back({{"eps", t.eps}, {"i", t.i}, {"start", t.start}, {"step", 2}, {"free", t.pattern.free},
                   {"torsion", torsion}});
  }
  return out;
}

json to_json(const std::map<std::pair<int, int>, ratfun::Rational>& series) {
  json out = json::array();
  for (const auto& [k, c] : series) out.push_back({{"alpha", k.first}, {"xi", k.second}, {"c", c.get_str()}});
  return out;
}

json to_json(const mf::GdimSeries& g) {
  json terms = json::array();
  for (const auto& [k, c] : g.terms) {
    auto [eps, a, x] = k;
    terms.push_back({{"tau", eps}, {"alpha", a}, {"xi", x}, {"dim", c}});
  }
  return {{"x_truncation", g.x_truncation}, {"terms", terms}, {"total", g.total()}};
}

}  // namespace krlab::io
