#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdimer/collections.hpp"

namespace pdimer {

// Top rim of the lattice diagram of the rank-one module M_I: heights
// h(0..n) with h(0) = 0 and h(i) - h(i-1) = -1 exactly when edge i is in I.
// One application of t lowers a column by 2 units, so degree-per-vertex is
// (height difference)/2.
struct RimProfile {
  std::vector<int> heights;  // size n+1
};

RimProfile rim_profile(const KSubset& I);

// Degree of the minimal monomial morphism g_{JI}, by the interval formula:
// sum of (b_j, a_j)_0 with b_j clockwise from b(I,J) and a_j anticlockwise
// from a(I,J). Requires I, J weakly separated (I = J gives zero).
Weight deg_min_formula(const KSubset& I, const KSubset& J);

// Same degree via the highest embedding of lattice L_I into L_J; defined for
// any pair with the same (k,n).
Weight deg_min_oracle(const KSubset& I, const KSubset& J);

// I <=_V J iff the support of deg(g_{JI}) misses V.
bool leq_v(const KSubset& I, const KSubset& J, const std::vector<int>& V);

// Number of distinct normal-form monomials x^a y^b in e_i B e_j of t-grade
// at most d, counted by honest enumeration and canonical reduction under
// xy = yx and x^k = y^{n-k}. Vertices i, j in 1..n.
std::int64_t b_normal_count(int n, int k, int i, int j, std::int64_t d);

// Presentation of the circle algebra B: generators x_i: i-1 -> i and
// y_i: i -> i-1 with the 2n relations xy = yx and x^k = y^{n-k}. Relation
// sides are generator words in traversal order; positive entry +i means x_i,
// negative -i means y_i.
struct BRelation {
  std::string family;  // "commutation" or "power"
  int vertex;          // base vertex of the relation
  std::vector<int> lhs;
  std::vector<int> rhs;
};

struct BPresentation {
  int n = 0;
  int k = 0;
  std::vector<BRelation> relations;
};

BPresentation b_presentation(int n, int k);

}  // namespace pdimer
