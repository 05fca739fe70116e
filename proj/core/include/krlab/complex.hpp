#pragma once

// Resolution cube of a closed braid: a chain complex of matrix factorizations.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "krlab/braid.hpp"
#include "krlab/mf.hpp"

namespace krlab::complex {

using mf::Bideg;
using mf::Matrix;
using mf::MatrixFactorization;
using poly::Poly;

// Morphism of matrix factorizations: f0 maps basis0 to basis0, f1 maps basis1 to basis1.
struct MfMorphism {
  Matrix f0;  // target.basis0 x source.basis0
  Matrix f1;  // target.basis1 x source.basis1
};

MfMorphism compose(const MfMorphism& g, const MfMorphism& f);  // g after f
// Throws DomainError unless f commutes with the differentials and every entry has bidegree
// `degree` + source degree - target degree.
void check_morphism(const MatrixFactorization& src, const MatrixFactorization& dst, const MfMorphism& f,
                    Bideg degree);

// Local models at a crossing with marks x1 (top-right), y1 (top-left), x2 (bottom-left),
// y2 (bottom-right); strands run x2 -> x1 and y2 -> y1.
struct CrossingModel {
  int sign = 1;
  int x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  mf::KoszulSpec gamma0;  // oriented smoothing
  mf::KoszulSpec gamma1;  // wide edge, including its {0,-1}
  Poly s;                 // x2 - x1
  MfMorphism chi0;        // gamma0 -> gamma1
  MfMorphism chi1;        // gamma1 -> gamma0
};

CrossingModel crossing_model(const mf::TablePtr& table, int sign, int x1, int y1, int x2, int y2, int N);

// Block of one term: the rows [start, start+len) of basis0 and basis1 that came from one summand.
struct Summand {
  std::size_t start0 = 0, len0 = 0, start1 = 0, len1 = 0;
  std::string label;
};

struct ChainComplexOfMF {
  mf::TablePtr table;
  int N = 1;
  std::vector<int> ring_vars;  // marks of the base ring besides a
  std::map<int, MatrixFactorization> terms;
  std::map<int, std::vector<Summand>> summands;
  std::map<int, MfMorphism> d_chi;  // term i -> term i+1

  std::size_t generators() const;
  // Throws DomainError unless d_chi^2 = 0, d_chi commutes with d_mf and preserves all gradings.
  void check() const;
};

// An extra mark on the strand at position `strand` (1-based) just below letter `before`.
struct ExtraMark {
  int before = 0;
  int strand = 1;
};

struct BuildInfo {
  int crossings = 0;
  int components = 0;     // link components of the closure
  int excluded = 0;       // marks removed by common-row exclusion
  std::vector<std::string> cube_states;  // one label per cube vertex, e.g. "01"
};

// The cube complex of the closure of w with one mark per arc (plus `extra`), after excluding
// every mark that a crossing-independent row determines.
ChainComplexOfMF build_complex(const braid::BraidWord& w, int N, const std::vector<ExtraMark>& extra = {},
                               BuildInfo* info = nullptr);

// Removes d_chi blocks that are constant isomorphisms between whole summands, correcting the
// remaining differential by -gamma phi^{-1} delta. Stops when no such block remains.
ChainComplexOfMF gaussian_eliminate(const ChainComplexOfMF& c);

}  // namespace krlab::complex
