#include "krlab/moy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace krlab::moy {

using poly::Poly;
using poly::Rational;
using poly::VariableTable;

MoyGraph MoyGraph::parse(const std::string& text) {
  MoyGraph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    auto fail = [&] { throw ParseError("graph line " + std::to_string(lineno) + ": cannot parse '" + line + "'"); };
    if (kind == "v") {
      Vertex v;
      if (!(ls >> v.id)) fail();
      g.vertices.push_back(v);
    } else if (kind == "e") {
      Edge e;
      if (!(ls >> e.id >> e.color >> e.from >> e.to)) fail();
      g.edges.push_back(e);
    } else if (kind == "m") {
      Mark m;
      if (!(ls >> m.edge >> m.alphabet)) fail();
      g.marks.push_back(m);
    } else {
      fail();
    }
    std::string extra;
    if (ls >> extra) fail();
  }
  g.validate();
  return g;
}

std::string MoyGraph::to_dsl() const {
  std::ostringstream os;
  for (const auto& v : vertices) os << "v " << v.id << "\n";
  for (const auto& e : edges) os << "e " << e.id << " " << e.color << " " << e.from << " " << e.to << "\n";
  for (const auto& m : marks) os << "m " << m.edge << " " << m.alphabet << "\n";
  return os.str();
}

namespace {

struct Incidence {
  std::vector<std::size_t> in, out;
};

std::map<std::string, Incidence> incidences(const MoyGraph& g) {
  std::map<std::string, Incidence> inc;
  for (const auto& v : g.vertices) inc[v.id];
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    inc[g.edges[i].from].out.push_back(i);
    inc[g.edges[i].to].in.push_back(i);
  }
  return inc;
}

bool is_endpoint(const Incidence& i) { return i.in.size() + i.out.size() == 1; }

}  // namespace

void MoyGraph::validate() const {
  std::set<std::string> vids, eids, alphabets;
  for (const auto& v : vertices)
    if (!vids.insert(v.id).second) throw DomainError("duplicate vertex id " + v.id);
  for (const auto& e : edges) {
    if (!eids.insert(e.id).second) throw DomainError("duplicate edge id " + e.id);
    if (e.color < 1 || e.color > 3) throw DomainError("edge color must be 1..3: " + e.id);
    if (!vids.count(e.from) || !vids.count(e.to)) throw DomainError("edge with unknown end vertex: " + e.id);
  }
  std::map<std::string, int> marks_per_edge;
  for (const auto& m : marks) {
    if (!eids.count(m.edge)) throw DomainError("mark on unknown edge " + m.edge);
    if (!alphabets.insert(m.alphabet).second) throw DomainError("alphabet used twice: " + m.alphabet);
    ++marks_per_edge[m.edge];
  }
  for (const auto& e : edges)
    if (!marks_per_edge[e.id]) throw DomainError("edge without a marked point: " + e.id);
  for (const auto& [id, inc] : incidences(*this)) {
    if (inc.in.empty() && inc.out.empty()) throw DomainError("isolated vertex " + id);
    if (is_endpoint(inc)) continue;
    int cin = 0, cout = 0;
    for (auto i : inc.in) cin += edges[i].color;
    for (auto i : inc.out) cout += edges[i].color;
    if (cin != cout) throw DomainError("flow is not conserved at vertex " + id);
    if (cin > 3) throw DomainError("vertex of total color > 3 unsupported: " + id);
  }
}

namespace {

// Elementary symmetric functions of the union of the given alphabets, E[0] = 1.
std::vector<Poly> combined_elementary(const std::vector<Alphabet>& alphabets) {
  std::vector<Poly> E{Poly(1)};
  for (const auto& al : alphabets) {
    std::vector<Poly> g{Poly(1)};
    for (int v : al.gens) g.push_back(Poly::var(v));
    std::vector<Poly> next(E.size() + al.gens.size());
    for (std::size_t i = 0; i < E.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) next[i + j] += E[i] * g[j];
    E = std::move(next);
  }
  return E;
}

}  // namespace

mf::KoszulSpec vertex_factorization(const mf::TablePtr& table, int N, const std::vector<Alphabet>& exits,
                                    const std::vector<Alphabet>& entrances) {
  int m = 0, me = 0;
  for (const auto& a : exits) m += a.color;
  for (const auto& a : entrances) me += a.color;
  if (m != me) throw DomainError("vertex violates flow conservation");
  if (m < 1 || m > 3) throw DomainError("vertex of total color > 3 unsupported");
  if (table->size() >= poly::kMaxVars) throw DomainError("no spare variable for difference quotients");
  const int T = poly::kMaxVars - 1;
  std::vector<Poly> X = combined_elementary(exits), Y = combined_elementary(entrances);
  mf::KoszulSpec spec;
  spec.table = table;
  spec.N = N;
  for (int j = 1; j <= m; ++j) {
    std::vector<Poly> E;
    for (int i = 1; i <= m; ++i) E.push_back(i < j ? Y[i] : i > j ? X[i] : Poly::var(T));
    Poly p = poly::power_sum_in_elementary(m, N + 1, E);
    Poly U = poly::divided_difference(p, T, X[j], Y[j]);
    spec.rows.push_back(mf::make_row(*table, N, Poly::var(VariableTable::kA) * U, X[j] - Y[j]));
  }
  int sh = 0;
  for (std::size_t s = 0; s < exits.size(); ++s)
    for (std::size_t t = s + 1; t < exits.size(); ++t) sh += exits[s].color * exits[t].color;
  spec.shift = {0, -sh};
  return spec;
}

GraphFactorization graph_factorization(const MoyGraph& g, int N) {
  g.validate();
  auto inc = incidences(g);
  std::map<std::string, std::size_t> edge_index;
  for (std::size_t i = 0; i < g.edges.size(); ++i) edge_index[g.edges[i].id] = i;
  std::vector<std::vector<std::string>> edge_marks(g.edges.size());
  for (const auto& m : g.marks) edge_marks[edge_index[m.edge]].push_back(m.alphabet);

  // Components via union-find over vertices.
  std::map<std::string, std::string> parent;
  for (const auto& v : g.vertices) parent[v.id] = v.id;
  std::function<std::string(const std::string&)> root = [&](const std::string& v) {
    return parent[v] == v ? v : parent[v] = root(parent[v]);
  };
  for (const auto& e : g.edges) parent[root(e.from)] = root(e.to);
  std::set<std::string> open_components;
  for (const auto& [id, i] : inc)
    if (is_endpoint(i)) open_components.insert(root(id));

  std::set<std::string> boundary;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (is_endpoint(inc[e.from])) boundary.insert(edge_marks[i].front());
    if (is_endpoint(inc[e.to])) boundary.insert(edge_marks[i].back());
  }
  std::set<std::string> seen_closed;
  for (const auto& m : g.marks) {
    std::string r = root(g.edges[edge_index[m.edge]].from);
    if (open_components.count(r) || seen_closed.count(r)) continue;
    seen_closed.insert(r);
    boundary.insert(m.alphabet);
  }

  auto table = std::make_shared<VariableTable>();
  std::map<std::string, Alphabet> alphabets;
  for (const auto& m : g.marks) {
    int color = g.edges[edge_index[m.edge]].color;
    alphabets[m.alphabet] = {color, table->add_alphabet(m.alphabet, color, boundary.count(m.alphabet) > 0)};
  }

  GraphFactorization out;
  out.table = table;
  mf::KoszulSpec& spec = out.spec;
  spec.table = table;
  spec.N = N;
  auto append = [&](const mf::KoszulSpec& s) {
    spec.rows.insert(spec.rows.end(), s.rows.begin(), s.rows.end());
    spec.shift = spec.shift + s.shift;
  };
  for (const auto& v : g.vertices) {
    const auto& i = inc[v.id];
    if (is_endpoint(i)) continue;
    std::vector<Alphabet> exits, entrances;
    for (auto e : i.out) exits.push_back(alphabets[edge_marks[e].front()]);
    for (auto e : i.in) entrances.push_back(alphabets[edge_marks[e].back()]);
    append(vertex_factorization(table, N, exits, entrances));
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    for (std::size_t k = 0; k + 1 < edge_marks[e].size(); ++k)
      append(vertex_factorization(table, N, {alphabets[edge_marks[e][k + 1]]}, {alphabets[edge_marks[e][k]]}));

  // Exclude internal variables whose row is linear in them.
  mf::KoszulSpec red = spec;
  for (bool progress = true; progress;) {
    progress = false;
    for (int r = 0; r < static_cast<int>(red.rows.size()) && !progress; ++r)
      for (int v = 1; v < table->size() && !progress; ++v) {
        if ((*table)[v].boundary) continue;
        if (poly::linear_in(red.rows[r].right, v)) {
          red = mf::exclude_variable(red, r, v);
          progress = true;
        }
      }
  }
  out.reduced_spec = red;
  out.mf = mf::split_contractibles(mf::koszul(red));
  return out;
}

namespace {

const std::map<std::string, std::string>& builtins() {
  static const std::map<std::string, std::string> g = {
      {"circle", "v v\ne e 1 v v\nm e x\n"},
      // Edge splitting: a 2-colored edge split into two 1-colored edges and merged again.
      {"theta-split",
       "v b\nv s\nv j\nv t\n"
       "e in 2 b s\ne l 1 s j\ne r 1 s j\ne out 2 j t\n"
       "m in x34\nm l x5\nm r x6\nm out x12\n"},
      {"theta-merged", "v b\nv t\ne e 2 b t\nm e x34\nm e x12\n"},
      // Resolutions of a crossing with bottom marks x2 (left), y2 (right) and top marks y1 (left), x1 (right).
      {"resolution-0",
       "v b1\nv b2\nv t1\nv t2\n"
       "e l 1 b1 t1\ne r 1 b2 t2\n"
       "m l x2\nm l y1\nm r y2\nm r x1\n"},
      {"resolution-1",
       "v b1\nv b2\nv t1\nv t2\nv w\n"
       "e l 1 b1 w\ne r 1 b2 w\ne u 1 w t1\ne o 1 w t2\n"
       "m l x2\nm r y2\nm u y1\nm o x1\n"},
      {"r3-gamma",
       "v p45\nv p6\nv p12\nv p3\nv s\nv w\nv j\n"
       "e e45 2 p45 s\ne e7 1 s j\ne e9 1 s w\ne e6 1 p6 w\ne e8 1 w j\ne e3 1 w p3\ne e12 2 j p12\n"
       "m e45 x45\nm e7 x7\nm e9 x9\nm e6 x6\nm e8 x8\nm e3 x3\nm e12 x12\n"},
      {"r3-gamma0",
       "v p45\nv p6\nv p12\nv p3\n"
       "e a 2 p45 p12\ne b 1 p6 p3\n"
       "m a x45\nm a x12\nm b x6\nm b x3\n"},
      {"r3-gamma1",
       "v p45\nv p6\nv p12\nv p3\nv c\n"
       "e a 2 p45 c\ne b 1 p6 c\ne u 2 c p12\ne o 1 c p3\n"
       "m a x45\nm b x6\nm u x12\nm o x3\n"},
  };
  return g;
}

}  // namespace

MoyGraph builtin_graph(const std::string& name) {
  auto it = builtins().find(name);
  if (it == builtins().end()) throw DomainError("unknown builtin graph: " + name);
  return MoyGraph::parse(it->second);
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : builtins()) out.push_back(k);
  return out;
}

}  // namespace krlab::moy
