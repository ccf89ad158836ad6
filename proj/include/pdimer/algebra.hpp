#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pdimer/dimer.hpp"

namespace pdimer {

// A path in the quiver; the empty path at a vertex is the idempotent.
struct QuiverPath {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;  // traversal order

  static QuiverPath idempotent(int vertex) { return QuiverPath{vertex, vertex, {}}; }
};

QuiverPath make_path(const QuiverWithFaces& Q, const std::vector<int>& arrows);
QuiverPath compose(const QuiverWithFaces& Q, const QuiverPath& first, const QuiverPath& second);

// The canonical element u^N p_{JI} of e_J A_D e_I.
struct NormalForm {
  int source = 0;
  int target = 0;
  std::int64_t power = 0;

  friend bool operator==(const NormalForm& a, const NormalForm& b) {
    return a.source == b.source && a.target == b.target && a.power == b.power;
  }
  friend bool operator!=(const NormalForm& a, const NormalForm& b) { return !(a == b); }
};

Weight path_weight(const QuiverWithFaces& Q, const QuiverPath& p);

// Degree of the minimal morphism between the labels of two vertices.
Weight deg_min_vertices(const QuiverWithFaces& Q, int I, int J);

// Greedy insincere path: repeatedly take an arrow whose weight avoids
// (a,b)_0 for the current pair and subtracts exactly from the remaining
// minimal degree. Deterministic; throws TheoremViolationError if no legal
// arrow exists (which would falsify the legal-arrow proposition).
QuiverPath minimal_path(const QuiverWithFaces& Q, int I, int J);

// Writes a path as u^N p_{JI}; the residual weight above deg_min must be a
// constant multiple of C_0.
NormalForm normalize(const QuiverWithFaces& Q, const QuiverPath& p);

// For each internal arrow, the two return paths bounding its faces.
struct ArrowRelation {
  int arrow = 0;
  std::vector<int> plus;   // from head to tail, completing the + face
  std::vector<int> minus;  // from head to tail, completing the - face
};

std::vector<ArrowRelation> dimer_relations(const QuiverWithFaces& Q);

enum class RewriteOutcome {
  kEquivalent,       // q reached from p
  kInequivalent,     // the full equivalence class of p was explored, q absent
  kBudgetExhausted,  // undecided within budget
};

std::string to_string(RewriteOutcome r);

// Breadth-first closure of p under single relation substitutions. `budget`
// counts expanded states. Sound, incomplete by design.
RewriteOutcome rewrite_equiv(const QuiverWithFaces& Q, const QuiverPath& p, const QuiverPath& q,
                             std::size_t budget);

// Meet-in-the-middle variant: closures grow from both sides and the smaller
// frontier expands first. Same soundness; concludes much earlier on both true
// and false comparisons. Used by the surface checks.
RewriteOutcome rewrite_equiv_bidir(const QuiverWithFaces& Q, const QuiverPath& p,
                                   const QuiverPath& q, std::size_t budget);

// Dimension of the span of {u^N p_{JI} : 0 <= N <= d}.
std::int64_t graded_hom_dim(const QuiverWithFaces& Q, int I, int J, std::int64_t d);

// Boundary algebra data: generators realised as minimal paths, their
// weights, the defining identities, and a small multiplication table.
struct BoundaryGenerators {
  int j = 0;            // base marked index (generators at E_j)
  QuiverPath y;         // E_j -> E_{j+1}, weight E_j
  QuiverPath x;         // E_{j+1} -> E_j, weight C_0 - E_j
};

struct BoundaryTableEntry {
  std::string word;  // e.g. "x[3].y[2]" in traversal order
  std::string source_label;
  std::string target_label;
  std::int64_t power = 0;

  friend bool operator==(const BoundaryTableEntry& a, const BoundaryTableEntry& b) {
    return a.word == b.word && a.source_label == b.source_label &&
           a.target_label == b.target_label && a.power == b.power;
  }
};

struct BoundaryAlgebraReport {
  CheckReport checks;
  std::vector<BoundaryGenerators> generators;
  std::vector<BoundaryTableEntry> table;  // products of up to 3 generators

  bool table_equal(const BoundaryAlgebraReport& other) const { return table == other.table; }
};

BoundaryAlgebraReport boundary_algebra(const QuiverWithFaces& Q);

// Central element u: face loops commute with every arrow and agree at each
// vertex, as NormalForm identities.
CheckReport central_element_check(const QuiverWithFaces& Q);

}  // namespace pdimer
