#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdimer/algebra.hpp"
#include "pdimer/dimer.hpp"

namespace pdimer {

struct MarkedSurface {
  enum class Kind { kDisk, kAnnulus };
  Kind kind = Kind::kDisk;
  int n = 0;  // marked points on the (outer) boundary, component 0
  int m = 0;  // marked points on the inner boundary, component 1 (annulus)
};

// Edges carry two formal end slots so that loop edges (possible on an
// annulus component with one marked point) stay distinguishable.
struct TriEdge {
  int id = 0;
  bool boundary = false;
  std::array<MarkedPoint, 2> ends;
};

// Vertices and edges listed clockwise, with edges[i] joining vertices[i] to
// vertices[i+1]; reversed[i] says edge i is traversed ends[1] -> ends[0].
struct Triangle {
  std::array<int, 3> edges{};
  std::array<MarkedPoint, 3> vertices{};
  std::array<bool, 3> reversed{};
};

struct Triangulation {
  MarkedSurface surface;
  std::vector<TriEdge> edges;
  std::vector<Triangle> triangles;

  const TriEdge& edge(int id) const;
  int marked_count(int component) const;
};

// Structural validation: internal edges in exactly two triangle slots,
// boundary edges in one, traversal slots consistent.
CheckReport validate_triangulation(const Triangulation& T);

// The dimer model of the degree-2 diagram of a triangulation: one vertex per
// edge, a positive 3-cycle face per triangle, a negative face per marked
// point (the clockwise fan of incident edge ends, closed by a boundary
// arrow). Strand degrees are checked and a wrong-handedness build is
// rejected.
QuiverWithFaces scott_quiver(const Triangulation& T);

// Quadrilateral flip at an internal edge.
Triangulation flip(const Triangulation& T, int edge_id);

// Fan triangulation of the disk (all arcs from marked point 1).
Triangulation disk_fan_triangulation(int n);

// Disk triangulation with the given internal arcs (as marked point index
// pairs); throws if the arcs do not triangulate the polygon.
Triangulation disk_triangulation_from_arcs(int n, const std::vector<std::pair<int, int>>& arcs);

// Staircase triangulation of the annulus described by a cyclic word over
// {'U','D'} with n U's (outer-based triangles) and m D's.
Triangulation annulus_staircase(int n, int m, const std::string& word);

// All triangulations of the disk reachable by flips (the whole flip graph at
// desk scale), canonically ordered by arc sets.
std::vector<Triangulation> enumerate_disk_triangulations(int n);

// Labels of a disk scott quiver derived by tracking strands; also the
// validator for the orientation conventions. Returns the labelled quiver and
// its collection.
struct DiskLabels {
  Collection collection;
  QuiverWithFaces quiver;
};
DiskLabels attach_disk_labels(const QuiverWithFaces& Q);

// The annulus boundary algebra presentation. Generator symbols: kind and
// 1-based index; words are stored in traversal order.
struct LambdaGen {
  enum class Kind { kX, kY, kXbar, kYbar, kR, kS };
  Kind kind = Kind::kX;
  int index = 1;
  std::string to_string() const;
};

struct LambdaRelation {
  std::string family;  // commutation | squared | connector
  std::string name;
  std::vector<LambdaGen> lhs;
  std::vector<LambdaGen> rhs;
};

struct LambdaPresentation {
  int n = 0;
  int m = 0;
  std::vector<LambdaRelation> relations;
  int count(const std::string& family) const;
};

LambdaPresentation lambda_presentation(int n, int m);

struct LambdaRelationResult {
  std::string name;
  std::string family;
  RewriteOutcome outcome = RewriteOutcome::kBudgetExhausted;
};

struct LambdaCheckReport {
  bool all_confirmed = false;
  bool assignment_found = false;
  std::string note;  // includes the unverified-completeness caveat
  std::vector<LambdaRelationResult> relations;

  bool same_outcomes(const LambdaCheckReport& other) const;
};

// Realize the Lambda generators as boundary paths of scott_quiver(T) and
// confirm every relation with the rewriting oracle.
LambdaCheckReport lambda_relation_check(const Triangulation& T, std::size_t budget);

}  // namespace pdimer
