#pragma once

// Braid words and transverse Markov moves.

#include <functional>
#include <string>
#include <vector>

#include "krlab/error.hpp"

namespace krlab::braid {

// Letters are signed generator indices: +i is sigma_i, -i is sigma_i^{-1}.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  int writhe() const;
  std::string to_string() const;  // "1 -2 1"
  // Throws DomainError if an index is outside 1..strands-1.
  void validate() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
  friend auto operator<=>(const BraidWord&, const BraidWord&) = default;
};

// Signed integers ("1 -2 1") or symbolic tokens ("s1 s2^-1"); '#' starts a comment.
// strands = max index + 1 unless strands_override > 0.
BraidWord parse(const std::string& text, int strands_override = 0);

// Cyclic free reduction followed by the lexicographically least rotation.
BraidWord canonical(const BraidWord& w);

// Removes the top generator when it occurs exactly once and positively.
bool can_destabilize(const BraidWord& w);
BraidWord destabilize(const BraidWord& w);

struct SearchNode {
  BraidWord word;  // canonical form
  int parent = -1;
  std::string move;  // "kind position" that produced this node from its parent
};

struct SearchResult {
  std::vector<SearchNode> nodes;  // BFS order, nodes[0] = canonical input
  bool exhausted = false;         // budget ran out with unexplored states remaining
  int goal = -1;                  // index of the first node satisfying the goal, if any
};

// Bounded BFS over braid relations, far commutations, single-letter conjugations and
// positive destabilizations. Stops early at the first node satisfying `goal` (if given).
SearchResult markov_search(const BraidWord& w, long budget,
                           const std::function<bool(const BraidWord&)>& goal = nullptr);

// Move log from the root to node `idx`, one "kind position" per line.
std::vector<std::string> trace(const SearchResult& r, int idx);

// Fixpoint of free cancellation, canonical rotation, positive destabilization, and a small
// bounded search for a representative with fewer strands or letters.
BraidWord simplify(const BraidWord& w, long search_budget = 64);

}  // namespace krlab::braid
