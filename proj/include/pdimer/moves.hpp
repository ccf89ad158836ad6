#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdimer/algebra.hpp"

namespace pdimer {

struct ExchangeResult {
  Collection collection;
  QuiverWithFaces quiver;
  KSubset old_label;
  KSubset new_label;
};

// Geometric exchange at an internal quadrilateral vertex. The mutated quiver
// is computed twice: by the mutation rules (compose through the vertex,
// reverse its arrows, cancel 2-cycles with the boundary variant) and by
// rebuilding Gamma from the new collection; disagreement is a
// TheoremViolationError. Faces come from the rebuild.
ExchangeResult geometric_exchange(const Collection& C, const QuiverWithFaces& Q, int vertex_id);

// Remove all 2-gon faces by untwisting: an internal 2-gon merges its two
// neighbour faces; a 2-gon with a boundary arrow drops the boundary arrow
// and promotes the other one. Order independent; `seed` shuffles the
// application order for confluence tests.
QuiverWithFaces reduce_twists(const QuiverWithFaces& Q, std::uint64_t seed = 0);

struct InvarianceStep {
  KSubset label;
  bool ok = true;
  std::string detail;
};

struct InvarianceReport {
  bool ok = true;
  std::vector<InvarianceStep> steps;
  Collection final_collection;
  QuiverWithFaces final_quiver;
};

// Apply a sequence of exchanges (given by the labels of the vertices to
// mutate at); after each step the collection must remain maximal weakly
// separated and the boundary multiplication table must be unchanged.
InvarianceReport invariance_check(const Collection& C, const QuiverWithFaces& Q,
                                  const std::vector<KSubset>& sequence);

// Internal vertices with exactly four incident arrows.
std::vector<int> exchangeable_vertices(const QuiverWithFaces& Q);

}  // namespace pdimer
