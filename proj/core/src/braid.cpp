#include "krlab/braid.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace krlab::braid {

int BraidWord::writhe() const {
  int w = 0;
  for (int l : letters) w += l > 0 ? 1 : -1;
  return w;
}

std::string BraidWord::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < letters.size(); ++i) os << (i ? " " : "") << letters[i];
  return os.str();
}

void BraidWord::validate() const {
  if (strands < 1) throw DomainError("braid needs at least one strand");
  for (int l : letters)
    if (l == 0 || std::abs(l) >= strands) throw DomainError("generator index out of range in " + to_string());
}

BraidWord parse(const std::string& text, int strands_override) {
  static const std::regex numeric(R"(^[+-]?\d+$)");
  static const std::regex symbolic(R"(^s(\d+)(\^(\{?)([+-]?1)(\}?))?$)");
  BraidWord w;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::smatch m;
      int letter;
      if (std::regex_match(tok, numeric)) {
        letter = std::stoi(tok);
      } else if (std::regex_match(tok, m, symbolic)) {
        letter = std::stoi(m[1]);
        if (m[2].matched && m[4] == "-1") letter = -letter;
      } else {
        throw ParseError("malformed braid token '" + tok + "'");
      }
      if (letter == 0) throw ParseError("generator index must be positive");
      w.letters.push_back(letter);
    }
  }
  int mx = 0;
  for (int l : w.letters) mx = std::max(mx, std::abs(l));
  w.strands = mx + 1;
  if (strands_override > 0) {
    if (strands_override < w.strands) throw ParseError("strand count smaller than the largest generator index + 1");
    w.strands = strands_override;
  }
  return w;
}

namespace {

std::vector<int> free_reduce(const std::vector<int>& in) {
  std::vector<int> st;
  for (int l : in) {
    if (!st.empty() && st.back() == -l) st.pop_back();
    else st.push_back(l);
  }
  std::size_t b = 0, e = st.size();
  while (e - b >= 2 && st[b] == -st[e - 1]) {
    ++b;
    --e;
  }
  return {st.begin() + static_cast<long>(b), st.begin() + static_cast<long>(e)};
}

std::vector<int> rotate_by(const std::vector<int>& v, std::size_t k) {
  std::vector<int> r(v.begin() + static_cast<long>(k), v.end());
  r.insert(r.end(), v.begin(), v.begin() + static_cast<long>(k));
  return r;
}

}  // namespace

BraidWord canonical(const BraidWord& w) {
  BraidWord c{w.strands, free_reduce(w.letters)};
  std::vector<int> best = c.letters;
  for (std::size_t k = 1; k < c.letters.size(); ++k) {
    auto r = rotate_by(c.letters, k);
    if (r < best) best = std::move(r);
  }
  c.letters = std::move(best);
  return c;
}

bool can_destabilize(const BraidWord& w) {
  if (w.strands < 2) return false;
  int top = w.strands - 1, pos = 0, neg = 0;
  for (int l : w.letters) {
    if (l == top) ++pos;
    if (l == -top) ++neg;
  }
  return pos == 1 && neg == 0;
}

BraidWord destabilize(const BraidWord& w) {
  if (!can_destabilize(w)) throw DomainError("word is not positively destabilizable");
  BraidWord r{w.strands - 1, {}};
  for (int l : w.letters)
    if (l != w.strands - 1) r.letters.push_back(l);
  return canonical(r);
}

namespace {

struct Neighbor {
  BraidWord word;
  std::string move;
};

// Relations applied to the window of `u` starting at `pos`; results appended with their log lines.
void window_moves(const std::vector<int>& u, std::size_t pos, int strands, const std::string& prefix,
                  std::vector<Neighbor>& out) {
  auto emit = [&](std::vector<int> repl, std::size_t len, const char* kind) {
    std::vector<int> nw(u.begin(), u.begin() + static_cast<long>(pos));
    nw.insert(nw.end(), repl.begin(), repl.end());
    nw.insert(nw.end(), u.begin() + static_cast<long>(pos + len), u.end());
    out.push_back({canonical({strands, nw}), prefix + kind + " " + std::to_string(pos)});
  };
  if (pos + 2 > u.size()) return;
  int a = u[pos], b = u[pos + 1];
  int i = std::abs(a), j = std::abs(b);
  int ea = a > 0 ? 1 : -1, eb = b > 0 ? 1 : -1;
  if (std::abs(i - j) >= 2) emit({b, a}, 2, "commute");
  if (pos + 3 <= u.size() && std::abs(i - j) == 1) {
    int c = u[pos + 2];
    if (c == a && ea == eb) emit({b, a, b}, 3, "braid");
    // s_i^e s_j^f s_i^-e = s_j^-e s_i^f s_j^e
    if (c == -a) emit({-ea * j, eb * i, ea * j}, 3, "braid-mixed");
  }
}

void relation_moves(const BraidWord& w, std::vector<Neighbor>& out) {
  std::size_t n = w.letters.size();
  if (n < 2) return;
  for (std::size_t k = 0; k < n; ++k) window_moves(rotate_by(w.letters, k), 0, w.strands, "rotate " + std::to_string(k) + "\n", out);
}

// Conjugation by a single letter followed by one relation touching the new letters
// (a bare conjugation is undone by cyclic reduction).
void conjugation_moves(const BraidWord& w, std::vector<Neighbor>& out) {
  std::size_t n = w.letters.size();
  for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k) {
    auto r = rotate_by(w.letters, n ? k : 0);
    for (int s = 1; s < w.strands; ++s)
      for (int sign : {1, -1}) {
        std::vector<int> u{sign * s};
        u.insert(u.end(), r.begin(), r.end());
        u.push_back(-sign * s);
        std::string prefix = "rotate " + std::to_string(k) + "\nconjugate " + std::to_string(sign * s) + "\n";
        window_moves(u, 0, w.strands, prefix, out);
        if (u.size() >= 3) window_moves(u, u.size() - 3, w.strands, prefix, out);
        window_moves(u, u.size() - 2, w.strands, prefix, out);
      }
  }
}

}  // namespace

SearchResult markov_search(const BraidWord& w, long budget, const std::function<bool(const BraidWord&)>& goal) {
  if (budget < 1) throw DomainError("search budget must be positive");
  SearchResult res;
  BraidWord start = canonical(w);
  std::size_t max_len = start.letters.size() + 4;
  std::map<BraidWord, int> seen;
  res.nodes.push_back({start, -1, ""});
  seen[start] = 0;
  if (goal && goal(start)) {
    res.goal = 0;
    return res;
  }
  std::size_t head = 0;
  long expansions = 0;
  while (head < res.nodes.size()) {
    if (expansions >= budget) {
      res.exhausted = true;
      return res;
    }
    ++expansions;
    BraidWord cur = res.nodes[head].word;
    int cur_idx = static_cast<int>(head++);
    std::vector<Neighbor> nb;
    relation_moves(cur, nb);
    conjugation_moves(cur, nb);
    if (can_destabilize(cur)) nb.push_back({destabilize(cur), "destabilize " + std::to_string(cur.strands - 1)});
    for (auto& n : nb) {
      if (n.word.letters.size() > max_len || seen.count(n.word)) continue;
      seen[n.word] = static_cast<int>(res.nodes.size());
      res.nodes.push_back({n.word, cur_idx, n.move});
      if (goal && goal(n.word)) {
        res.goal = static_cast<int>(res.nodes.size()) - 1;
        return res;
      }
    }
  }
  return res;
}

std::vector<std::string> trace(const SearchResult& r, int idx) {
  std::vector<std::string> out;
  std::vector<std::string> moves;
  for (int i = idx; i > 0; i = r.nodes[i].parent) moves.push_back(r.nodes[i].move);
  std::reverse(moves.begin(), moves.end());
  for (const auto& m : moves) {
    std::istringstream in(m);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
  }
  return out;
}

BraidWord simplify(const BraidWord& w, long search_budget) {
  w.validate();
  BraidWord cur = canonical(w);
  for (;;) {
    if (can_destabilize(cur)) {
      cur = destabilize(cur);
      continue;
    }
    if (search_budget <= 0) return cur;
    auto smaller = [&](const BraidWord& x) {
      return x.strands < cur.strands || x.letters.size() < cur.letters.size();
    };
    auto r = markov_search(cur, search_budget, smaller);
    if (r.goal < 0) return cur;
    cur = r.nodes[r.goal].word;
  }
}

}  // namespace krlab::braid
