#pragma once

// Marked MOY graphs and their matrix factorizations.

#include <memory>
#include <string>
#include <vector>

#include "krlab/mf.hpp"

namespace krlab::moy {

struct MoyGraph {
  struct Vertex {
    std::string id;
  };
  struct Edge {
    std::string id;
    int color = 1;
    std::string from, to;
  };
  // Marks on one edge are ordered from the edge's tail to its head in declaration order.
  struct Mark {
    std::string edge;
    std::string alphabet;
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Mark> marks;

  // Line DSL: `v <id>`, `e <id> <color> <from> <to>`, `m <edge-id> <alphabet>`, `#` comments.
  static MoyGraph parse(const std::string& text);
  std::string to_dsl() const;
  // Throws DomainError on broken flow conservation, unmarked edges, unknown ids, colors outside 1..3.
  void validate() const;
};

// One alphabet: its color and the variable ids of its elementary symmetric generators.
struct Alphabet {
  int color = 1;
  std::vector<int> gens;
};

// Rows (a U_j, X_j - Y_j) for a vertex with the given exit and entrance alphabets,
// shifted by {0, -sum_{s<t} i_s i_t} over the exits.
mf::KoszulSpec vertex_factorization(const mf::TablePtr& table, int N, const std::vector<Alphabet>& exits,
                                    const std::vector<Alphabet>& entrances);

struct GraphFactorization {
  mf::TablePtr table;
  mf::KoszulSpec spec;          // tensor product of all vertex factorizations
  mf::KoszulSpec reduced_spec;  // after excluding internal variables
  mf::MatrixFactorization mf;   // reduced and with contractible summands split off
};

// Boundary variables: alphabets at end points; for a component without end points, its first mark.
GraphFactorization graph_factorization(const MoyGraph& g, int N);

MoyGraph builtin_graph(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace krlab::moy
