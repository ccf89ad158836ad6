#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdimer/collections.hpp"

namespace pdimer {

// A marked point on the boundary of the ambient surface. Disk quivers use
// component 0 with indices 1..n; the annulus adds component 1.
struct MarkedPoint {
  int component = 0;
  int index = 0;

  friend bool operator==(const MarkedPoint& a, const MarkedPoint& b) {
    return a.component == b.component && a.index == b.index;
  }
  friend bool operator<(const MarkedPoint& a, const MarkedPoint& b) {
    return std::tie(a.component, a.index) < std::tie(b.component, b.index);
  }
  std::string to_string() const;
};

struct QuiverVertex {
  int id = 0;
  std::optional<KSubset> label;
  bool boundary = false;
};

struct QuiverArrow {
  int id = 0;
  int tail = 0;
  int head = 0;
  bool boundary = false;
};

struct QuiverFace {
  int id = 0;
  int sign = +1;            // +1 or -1
  std::vector<int> arrows;  // directed cycle, in boundary order
};

struct CheckReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(const std::string& msg) {
    ok = false;
    violations.push_back(msg);
  }
  void merge(const CheckReport& other) {
    if (!other.ok) ok = false;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

class QuiverWithFaces {
 public:
  QuiverWithFaces() = default;
  QuiverWithFaces(std::vector<QuiverVertex> vertices, std::vector<QuiverArrow> arrows,
                  std::vector<QuiverFace> faces);

  const std::vector<QuiverVertex>& vertices() const { return vertices_; }
  const std::vector<QuiverArrow>& arrows() const { return arrows_; }
  const std::vector<QuiverFace>& faces() const { return faces_; }

  const QuiverVertex& vertex(int id) const;
  const QuiverArrow& arrow(int id) const;
  const QuiverFace& face(int id) const;

  // Ids of the 1 or 2 faces whose boundary contains the arrow.
  const std::vector<int>& faces_of_arrow(int arrow_id) const;
  const std::vector<int>& out_arrows(int vertex_id) const;
  const std::vector<int>& in_arrows(int vertex_id) const;

  bool labelled() const;
  int label_k() const { return k_; }
  int label_n() const { return n_; }
  // Vertex id carrying the given label, or -1.
  int vertex_with_label(const KSubset& s) const;
  // Arrow tail->head (after deduplication there is at most one), or -1.
  int arrow_between(int tail, int head) const;

  // Marked point assigned to a boundary arrow (set for labelled quivers and
  // for surface constructions that know their boundary).
  std::optional<MarkedPoint> marker_of_boundary_arrow(int arrow_id) const;
  void set_boundary_marker(int arrow_id, MarkedPoint p);
  // Number of marked points on each boundary component, when known.
  const std::map<int, int>& component_sizes() const { return component_sizes_; }
  void set_component_size(int component, int count);

 private:
  friend QuiverWithFaces gamma_of_collection(const Collection&);
  void rebuild_indices();
  void derive_label_data();

  std::vector<QuiverVertex> vertices_;
  std::vector<QuiverArrow> arrows_;
  std::vector<QuiverFace> faces_;
  int k_ = 0, n_ = 0;
  std::map<int, std::vector<int>> faces_of_arrow_;
  std::map<int, std::vector<int>> out_arrows_, in_arrows_;
  std::map<int, MarkedPoint> arrow_marker_;
  std::map<int, int> component_sizes_;
};

// The quiver with faces Gamma(C) of a maximal weakly separated collection:
// white cliques W(K) for (k-1)-subsets K, black cliques B(L) for (k+1)-subsets
// L, nontrivial cliques (>= 3 members) becoming faces (black -> +, white ->
// -), one arrow I -> J whenever J follows I in some nontrivial clique.
QuiverWithFaces gamma_of_collection(const Collection& C);

// Definition 3.2 axioms (a)-(d); diagnostic, lists each violation.
CheckReport check_dimer_axioms(const QuiverWithFaces& Q);

// A zig-zag path. `crossings` lists arrows in traversal order; open strands
// begin and end at boundary marked points.
struct Strand {
  std::optional<MarkedPoint> start;
  std::optional<MarkedPoint> end;
  bool closed = false;
  std::vector<int> crossings;
};

std::vector<Strand> strands(const QuiverWithFaces& Q);

// Global Postnikov axioms (b1), (b2) plus the local alternation assertion.
CheckReport check_postnikov_axioms(const QuiverWithFaces& Q, const std::vector<Strand>& ss);

// For a labelled quiver: strand starting at marked point t must end at t+k.
CheckReport check_strand_degree(const QuiverWithFaces& Q, const std::vector<Strand>& ss, int k);

Weight arrow_weight(const QuiverWithFaces& Q, int arrow_id);
// Sum of arrow weights around the face; throws TheoremViolationError if the
// sum differs from C_0.
Weight face_weight(const QuiverWithFaces& Q, int face_id);

struct PerfectMatching {
  int vertex = 0;  // the i in P_i
  std::vector<int> arrows;
};

PerfectMatching perfect_matching(const QuiverWithFaces& Q, int i);

// Incident arrows of a vertex in planar rotation order, rebuilt from face
// adjacency. At a boundary vertex the order is a line whose ends are the two
// boundary arrows, and the wedges W_out / W_in are the contiguous spans from
// first to last outgoing (resp. incoming) arrow.
struct VertexStar {
  int vertex = 0;
  bool internal = false;
  std::vector<int> arrows;
  std::vector<int> wedge_out;
  std::vector<int> wedge_in;
  bool degenerate_wedge = false;  // wedge equals the whole star
};

VertexStar vertex_star(const QuiverWithFaces& Q, int vertex_id);

// Props "wraps around C exactly": internal vertices sum to (r-1)C_0, wedges
// at E_j sum to (r_out-1)C_0 + e_j and (r_in-1)C_0 + e_{j-k}.
CheckReport vertex_weight_sums(const QuiverWithFaces& Q, int vertex_id);

struct PlabicNode {
  int id = 0;
  int color = 0;  // +1 black, -1 white, 0 boundary marked point
  int quiver_face = -1;
  MarkedPoint marker;  // for color 0
};

struct PlabicEdge {
  int id = 0;
  int a = 0;
  int b = 0;
  int quiver_arrow = -1;
};

struct PlabicGraph {
  std::vector<PlabicNode> nodes;
  std::vector<PlabicEdge> edges;
  // Anticlockwise cyclic edge order around each internal node.
  std::map<int, std::vector<int>> rotations;
};

PlabicGraph plabic_dual(const QuiverWithFaces& Q);

// Reconstruct the quiver from a plabic graph of a disk (dual of the dual).
// Vertex labels are not recovered; comparison is up to arrow structure.
QuiverWithFaces quiver_from_plabic(const PlabicGraph& G, int n_markers);

// Structural equality ignoring ids: same labelled vertex set, same arrow set
// (by endpoint labels and boundary flag), same faces (by sign and boundary
// label cycle up to rotation). Requires both quivers labelled.
bool same_labelled_quiver(const QuiverWithFaces& A, const QuiverWithFaces& B);

}  // namespace pdimer
