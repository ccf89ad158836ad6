#include "pdimer/dimer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pdimer {

std::string MarkedPoint::to_string() const {
  std::ostringstream os;
  os << "(" << component << "," << index << ")";
  return os.str();
}

QuiverWithFaces::QuiverWithFaces(std::vector<QuiverVertex> vertices,
                                 std::vector<QuiverArrow> arrows, std::vector<QuiverFace> faces)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)), faces_(std::move(faces)) {
  rebuild_indices();
  derive_label_data();
}

void QuiverWithFaces::rebuild_indices() {
  faces_of_arrow_.clear();
  out_arrows_.clear();
  in_arrows_.clear();
  for (const QuiverVertex& v : vertices_) {
    out_arrows_[v.id];
    in_arrows_[v.id];
  }
  for (const QuiverArrow& a : arrows_) {
    faces_of_arrow_[a.id];
    out_arrows_.at(a.tail).push_back(a.id);
    in_arrows_.at(a.head).push_back(a.id);
  }
  for (const QuiverFace& f : faces_)
    for (int aid : f.arrows) faces_of_arrow_.at(aid).push_back(f.id);
}

void QuiverWithFaces::derive_label_data() {
  k_ = n_ = 0;
  for (const QuiverVertex& v : vertices_) {
    if (!v.label) return;
    if (k_ == 0) {
      k_ = v.label->k();
      n_ = v.label->n();
    } else if (v.label->k() != k_ || v.label->n() != n_) {
      throw InvalidInputError("QuiverWithFaces: inconsistent label sizes");
    }
  }
}

const QuiverVertex& QuiverWithFaces::vertex(int id) const {
  for (const QuiverVertex& v : vertices_)
    if (v.id == id) return v;
  throw InvalidInputError("unknown vertex id " + std::to_string(id));
}

const QuiverArrow& QuiverWithFaces::arrow(int id) const {
  for (const QuiverArrow& a : arrows_)
    if (a.id == id) return a;
  throw InvalidInputError("unknown arrow id " + std::to_string(id));
}

const QuiverFace& QuiverWithFaces::face(int id) const {
  for (const QuiverFace& f : faces_)
    if (f.id == id) return f;
  throw InvalidInputError("unknown face id " + std::to_string(id));
}

const std::vector<int>& QuiverWithFaces::faces_of_arrow(int arrow_id) const {
  auto it = faces_of_arrow_.find(arrow_id);
  if (it == faces_of_arrow_.end()) throw InvalidInputError("unknown arrow id");
  return it->second;
}

const std::vector<int>& QuiverWithFaces::out_arrows(int vertex_id) const {
  auto it = out_arrows_.find(vertex_id);
  if (it == out_arrows_.end()) throw InvalidInputError("unknown vertex id");
  return it->second;
}

const std::vector<int>& QuiverWithFaces::in_arrows(int vertex_id) const {
  auto it = in_arrows_.find(vertex_id);
  if (it == in_arrows_.end()) throw InvalidInputError("unknown vertex id");
  return it->second;
}

bool QuiverWithFaces::labelled() const {
  return !vertices_.empty() &&
         std::all_of(vertices_.begin(), vertices_.end(),
                     [](const QuiverVertex& v) { return v.label.has_value(); });
}

int QuiverWithFaces::vertex_with_label(const KSubset& s) const {
  for (const QuiverVertex& v : vertices_)
    if (v.label && *v.label == s) return v.id;
  return -1;
}

int QuiverWithFaces::arrow_between(int tail, int head) const {
  for (const QuiverArrow& a : arrows_)
    if (a.tail == tail && a.head == head) return a.id;
  return -1;
}

std::optional<MarkedPoint> QuiverWithFaces::marker_of_boundary_arrow(int arrow_id) const {
  auto it = arrow_marker_.find(arrow_id);
  if (it == arrow_marker_.end()) return std::nullopt;
  return it->second;
}

void QuiverWithFaces::set_boundary_marker(int arrow_id, MarkedPoint p) {
  arrow_marker_[arrow_id] = p;
}

void QuiverWithFaces::set_component_size(int component, int count) {
  component_sizes_[component] = count;
}

QuiverWithFaces gamma_of_collection(const Collection& C) {
  if (!C.pairwise_weakly_separated())
    throw InvalidInputError("gamma_of_collection: collection is not weakly separated");
  if (!C.has_all_boundary_labels())
    throw InvalidInputError("gamma_of_collection: collection is missing a boundary label E_j");
  int k = C.k(), n = C.n();

  std::vector<QuiverVertex> vertices;
  for (int i = 0; i < C.size(); ++i) {
    QuiverVertex v;
    v.id = i;
    v.label = C.members()[static_cast<std::size_t>(i)];
    v.boundary = false;
    vertices.push_back(v);
  }
  std::vector<int> label_of_marker(static_cast<std::size_t>(n) + 1, -1);
  for (int j = 1; j <= n; ++j) {
    int idx = C.index_of(boundary_label(j, k, n));
    vertices[static_cast<std::size_t>(idx)].boundary = true;
  }

  // Clique cycles, as vertex-index sequences.
  struct Clique {
    int sign;  // +1 black (L), -1 white (K)
    std::vector<int> cycle;
    std::string name;
  };
  std::vector<Clique> cliques;

  {
    for (const KSubset& K : all_k_subsets(k - 1, n)) {
      std::vector<std::pair<int, int>> members;  // (a, vertex index) with K+a in C
      for (int a = 1; a <= n; ++a) {
        if (K.contains(a)) continue;
        std::vector<int> elems = K.elements();
        elems.push_back(a);
        int idx = C.index_of(KSubset(elems, n));
        if (idx >= 0) members.push_back({a, idx});
      }
      if (members.size() < 3) continue;
      std::sort(members.begin(), members.end());  // a_i clockwise
      Clique q;
      q.sign = -1;
      q.name = "W(" + K.to_string() + ")";
      for (auto& [a, idx] : members) q.cycle.push_back(idx);
      cliques.push_back(std::move(q));
    }
  }
  {
    for (const KSubset& L : all_k_subsets(k + 1, n)) {
      std::vector<std::pair<int, int>> members;  // (b, vertex index) with L-b in C
      for (int b : L.elements()) {
        std::vector<int> elems;
        for (int e : L.elements())
          if (e != b) elems.push_back(e);
        int idx = C.index_of(KSubset(elems, n));
        if (idx >= 0) members.push_back({b, idx});
      }
      if (members.size() < 3) continue;
      std::sort(members.begin(), members.end());
      Clique q;
      q.sign = +1;
      q.name = "B(" + L.to_string() + ")";
      // Cyclic order L-b_s, L-b_{s-1}, ..., L-b_1 with b_i clockwise.
      for (auto it = members.rbegin(); it != members.rend(); ++it) q.cycle.push_back(it->second);
      cliques.push_back(std::move(q));
    }
  }

  // One arrow I -> J even when the pair occurs in two cliques.
  std::map<std::pair<int, int>, int> arrow_ids;
  std::vector<QuiverArrow> arrows;
  for (const Clique& q : cliques) {
    std::size_t r = q.cycle.size();
    for (std::size_t i = 0; i < r; ++i) {
      int tail = q.cycle[i];
      int head = q.cycle[(i + 1) % r];
      if (tail == head)
        throw InvalidInputError("gamma_of_collection: degenerate clique " + q.name);
      auto key = std::make_pair(tail, head);
      if (!arrow_ids.count(key)) {
        QuiverArrow a;
        a.id = static_cast<int>(arrows.size());
        a.tail = tail;
        a.head = head;
        arrows.push_back(a);
        arrow_ids[key] = a.id;
      }
    }
  }

  std::vector<QuiverFace> faces;
  std::map<int, int> face_count_of_arrow;
  for (const Clique& q : cliques) {
    QuiverFace f;
    f.id = static_cast<int>(faces.size());
    f.sign = q.sign;
    std::size_t r = q.cycle.size();
    for (std::size_t i = 0; i < r; ++i) {
      int aid = arrow_ids.at({q.cycle[i], q.cycle[(i + 1) % r]});
      f.arrows.push_back(aid);
      ++face_count_of_arrow[aid];
    }
    faces.push_back(std::move(f));
  }
  for (QuiverArrow& a : arrows) a.boundary = (face_count_of_arrow[a.id] == 1);

  QuiverWithFaces Q(std::move(vertices), std::move(arrows), std::move(faces));

  // Markers: the boundary arrow joining E_{t-1} and E_t passes marked point t.
  std::map<int, int> marker_index_of_vertex;  // boundary vertex id -> j with label E_j
  for (int j = 1; j <= n; ++j)
    marker_index_of_vertex[Q.vertex_with_label(boundary_label(j, k, n))] = j;
  for (const QuiverArrow& a : Q.arrows()) {
    if (!a.boundary) continue;
    auto it_t = marker_index_of_vertex.find(a.tail);
    auto it_h = marker_index_of_vertex.find(a.head);
    if (it_t == marker_index_of_vertex.end() || it_h == marker_index_of_vertex.end())
      throw InvalidInputError("gamma_of_collection: boundary arrow between internal labels " +
                              Q.vertex(a.tail).label->to_string() + " -> " +
                              Q.vertex(a.head).label->to_string() +
                              " (collection is not maximal)");
    int x = it_t->second, y = it_h->second;
    int t;
    if (cyc_reduce(x + 1, n) == y)
      t = y;
    else if (cyc_reduce(y + 1, n) == x)
      t = x;
    else
      throw InvalidInputError("gamma_of_collection: boundary arrow between non-adjacent E_j");
    Q.set_boundary_marker(a.id, MarkedPoint{0, t});
  }
  Q.set_component_size(0, n);

  CheckReport axioms = check_dimer_axioms(Q);
  if (!axioms.ok)
    throw InvalidInputError("gamma_of_collection: dimer axioms fail (collection not maximal?): " +
                            axioms.violations.front());
  return Q;
}

CheckReport check_dimer_axioms(const QuiverWithFaces& Q) {
  CheckReport rep;
  // (a) no loops
  for (const QuiverArrow& a : Q.arrows())
    if (a.tail == a.head) rep.fail("axiom (a): loop at arrow " + std::to_string(a.id));
  // face boundaries are directed cycles, each arrow at most once per face
  for (const QuiverFace& f : Q.faces()) {
    if (f.arrows.empty()) {
      rep.fail("face " + std::to_string(f.id) + " has empty boundary");
      continue;
    }
    std::set<int> seen(f.arrows.begin(), f.arrows.end());
    if (seen.size() != f.arrows.size())
      rep.fail("face " + std::to_string(f.id) + " repeats an arrow");
    for (std::size_t i = 0; i < f.arrows.size(); ++i) {
      const QuiverArrow& cur = Q.arrow(f.arrows[i]);
      const QuiverArrow& nxt = Q.arrow(f.arrows[(i + 1) % f.arrows.size()]);
      if (cur.head != nxt.tail)
        rep.fail("face " + std::to_string(f.id) + " boundary is not a directed cycle");
    }
  }
  // (b) face multiplicity, consistent with boundary flags
  for (const QuiverArrow& a : Q.arrows()) {
    std::size_t mult = Q.faces_of_arrow(a.id).size();
    if (mult != 1 && mult != 2)
      rep.fail("axiom (b): arrow " + std::to_string(a.id) + " has face multiplicity " +
               std::to_string(mult));
    if (mult == 1 && !a.boundary)
      rep.fail("axiom (b): internal arrow " + std::to_string(a.id) + " lies in one face");
    if (mult == 2 && a.boundary)
      rep.fail("axiom (b): boundary arrow " + std::to_string(a.id) + " lies in two faces");
  }
  // (c) internal arrows lie in one positive and one negative face
  for (const QuiverArrow& a : Q.arrows()) {
    const std::vector<int>& fs = Q.faces_of_arrow(a.id);
    if (fs.size() == 2 && Q.face(fs[0]).sign + Q.face(fs[1]).sign != 0)
      rep.fail("axiom (c): arrow " + std::to_string(a.id) +
               " does not separate a + face from a - face");
  }
  // (d) incidence graph connected, line at boundary vertices, cycle at internal
  for (const QuiverVertex& v : Q.vertices()) {
    std::vector<int> incident = Q.out_arrows(v.id);
    const std::vector<int>& in = Q.in_arrows(v.id);
    incident.insert(incident.end(), in.begin(), in.end());
    if (incident.empty()) {
      rep.fail("axiom (d): isolated vertex " + std::to_string(v.id));
      continue;
    }
    std::map<int, std::vector<int>> adjacency;
    for (int aid : incident) adjacency[aid];
    for (const QuiverFace& f : Q.faces()) {
      for (std::size_t i = 0; i < f.arrows.size(); ++i) {
        int x = f.arrows[i];
        int y = f.arrows[(i + 1) % f.arrows.size()];
        if (Q.arrow(x).head == v.id && Q.arrow(y).tail == v.id) {
          adjacency[x].push_back(y);
          adjacency[y].push_back(x);
        }
      }
    }
    int odd = 0;
    bool bad_degree = false;
    for (auto& [aid, nb] : adjacency) {
      if (nb.size() > 2) bad_degree = true;
      if (nb.size() == 1) ++odd;
      if (nb.empty() && incident.size() > 1) bad_degree = true;
    }
    // connectivity sweep
    std::set<int> seen;
    std::vector<int> stack{incident.front()};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      if (!seen.insert(cur).second) continue;
      for (int nb : adjacency[cur]) stack.push_back(nb);
    }
    if (seen.size() != adjacency.size())
      rep.fail("axiom (d): incidence graph at vertex " + std::to_string(v.id) +
               " is disconnected");
    else if (bad_degree)
      rep.fail("axiom (d): incidence graph at vertex " + std::to_string(v.id) +
               " is not a line or cycle");
    else if (v.boundary && odd != 2)
      rep.fail("axiom (d): incidence graph at boundary vertex " + std::to_string(v.id) +
               " is not a line");
    else if (!v.boundary && odd != 0)
      rep.fail("axiom (d): incidence graph at internal vertex " + std::to_string(v.id) +
               " is not a cycle");
  }
  return rep;
}

namespace {

int succ_in_face(const QuiverFace& f, int arrow_id) {
  for (std::size_t i = 0; i < f.arrows.size(); ++i)
    if (f.arrows[i] == arrow_id) return f.arrows[(i + 1) % f.arrows.size()];
  throw InvalidInputError("arrow not on face");
}

}  // namespace

std::vector<Strand> strands(const QuiverWithFaces& Q) {
  // State (arrow a, face f): the strand has just crossed a into f; it next
  // crosses the successor of a in the boundary of f.
  std::set<std::pair<int, int>> visited;
  std::vector<Strand> out;

  auto other_face = [&Q](int arrow_id, int face_id) -> int {
    const std::vector<int>& fs = Q.faces_of_arrow(arrow_id);
    if (fs.size() != 2) return -1;
    return fs[0] == face_id ? fs[1] : fs[0];
  };

  auto traverse = [&](int a0, int f0, bool closed) {
    Strand s;
    s.closed = closed;
    if (!closed) s.start = Q.marker_of_boundary_arrow(a0);
    int a = a0, f = f0;
    while (true) {
      if (!visited.insert({a, f}).second)
        throw TheoremViolationError("strands: state revisited (corrupt face data)");
      s.crossings.push_back(a);
      int b = succ_in_face(Q.face(f), a);
      if (Q.faces_of_arrow(b).size() == 1) {
        // crossing b leaves the surface
        s.crossings.push_back(b);
        s.end = Q.marker_of_boundary_arrow(b);
        break;
      }
      int fn = other_face(b, f);
      if (closed && b == a0 && fn == f0) break;  // cycle closed, do not re-add
      a = b;
      f = fn;
    }
    out.push_back(std::move(s));
  };

  for (const QuiverArrow& a : Q.arrows()) {
    if (!a.boundary) continue;
    const std::vector<int>& fs = Q.faces_of_arrow(a.id);
    if (fs.size() != 1) throw InvalidInputError("strands: boundary arrow with bad multiplicity");
    traverse(a.id, fs[0], false);
  }
  // Remaining unvisited states belong to closed zig-zag cycles.
  for (const QuiverArrow& a : Q.arrows()) {
    for (int f : Q.faces_of_arrow(a.id)) {
      if (!visited.count({a.id, f})) traverse(a.id, f, true);
    }
  }
  return out;
}

CheckReport check_postnikov_axioms(const QuiverWithFaces& Q, const std::vector<Strand>& ss) {
  CheckReport rep;
  std::map<int, int> crossings_per_arrow;
  for (std::size_t si = 0; si < ss.size(); ++si) {
    const Strand& s = ss[si];
    if (s.closed) rep.fail("(b1): closed zig-zag cycle (strand " + std::to_string(si) + ")");
    std::set<int> seen;
    for (int a : s.crossings) {
      ++crossings_per_arrow[a];
      if (!seen.insert(a).second)
        rep.fail("(b1): strand " + std::to_string(si) + " crosses arrow " + std::to_string(a) +
                 " twice");
    }
    // (a3) alternation: consecutive crossings share a face, with alternating
    // signs along the strand (this is the zig-zag transition rule).
    int prev_sign = 0;
    for (std::size_t i = 0; i + 1 < s.crossings.size(); ++i) {
      int found_sign = 0;
      for (int f : Q.faces_of_arrow(s.crossings[i])) {
        const QuiverFace& face = Q.face(f);
        if (succ_in_face(face, s.crossings[i]) == s.crossings[i + 1] &&
            (prev_sign == 0 || face.sign == -prev_sign)) {
          found_sign = face.sign;
          break;
        }
      }
      if (found_sign == 0) {
        rep.fail("(a3): strand " + std::to_string(si) + " breaks alternation at step " +
                 std::to_string(i));
        break;
      }
      prev_sign = found_sign;
    }
  }
  for (auto& [aid, count] : crossings_per_arrow)
    if (count != 2)
      rep.fail("arrow " + std::to_string(aid) + " crossed " + std::to_string(count) +
               " times (expected 2)");
  // (b2): two strands sharing crossings pass them in opposite orders.
  for (std::size_t i = 0; i < ss.size(); ++i) {
    std::map<int, std::size_t> pos;
    for (std::size_t t = 0; t < ss[i].crossings.size(); ++t) pos[ss[i].crossings[t]] = t;
    for (std::size_t j = i + 1; j < ss.size(); ++j) {
      std::vector<std::pair<std::size_t, std::size_t>> shared;  // (pos in i, pos in j)
      for (std::size_t t = 0; t < ss[j].crossings.size(); ++t) {
        auto it = pos.find(ss[j].crossings[t]);
        if (it != pos.end()) shared.push_back({it->second, t});
      }
      for (std::size_t x = 0; x < shared.size(); ++x)
        for (std::size_t y = x + 1; y < shared.size(); ++y) {
          bool same = (shared[x].first < shared[y].first) == (shared[x].second < shared[y].second);
          if (same)
            rep.fail("(b2): strands " + std::to_string(i) + "," + std::to_string(j) +
                     " cross twice in the same order");
        }
    }
  }
  return rep;
}

CheckReport check_strand_degree(const QuiverWithFaces& Q, const std::vector<Strand>& ss, int k) {
  CheckReport rep;
  for (const Strand& s : ss) {
    if (s.closed) {
      rep.fail("strand degree: closed strand");
      continue;
    }
    if (!s.start || !s.end) {
      rep.fail("strand degree: strand without marked endpoints");
      continue;
    }
    if (s.start->component != s.end->component) {
      rep.fail("strand degree: strand changes boundary component");
      continue;
    }
    auto it = Q.component_sizes().find(s.start->component);
    if (it == Q.component_sizes().end()) {
      rep.fail("strand degree: unknown component size");
      continue;
    }
    int r = it->second;
    if (cyc_reduce(s.start->index + k, r) != cyc_reduce(s.end->index, r))
      rep.fail("strand degree: strand from " + s.start->to_string() + " ends at " +
               s.end->to_string() + " (expected +" + std::to_string(k) + ")");
  }
  return rep;
}

Weight arrow_weight(const QuiverWithFaces& Q, int arrow_id) {
  const QuiverArrow& a = Q.arrow(arrow_id);
  const QuiverVertex& tv = Q.vertex(a.tail);
  const QuiverVertex& hv = Q.vertex(a.head);
  if (!tv.label || !hv.label) throw InvalidInputError("arrow_weight: unlabelled endpoints");
  std::vector<int> c = tv.label->minus(*hv.label);
  std::vector<int> d = hv.label->minus(*tv.label);
  if (c.size() != 1 || d.size() != 1)
    throw InvalidInputError("arrow_weight: labels differ in more than one element");
  return interval_vertices(c[0], d[0], tv.label->n());
}

Weight face_weight(const QuiverWithFaces& Q, int face_id) {
  const QuiverFace& f = Q.face(face_id);
  if (!Q.labelled()) throw InvalidInputError("face_weight: quiver is not labelled");
  Weight w(Q.label_n());
  for (int aid : f.arrows) w += arrow_weight(Q, aid);
  if (w != full_weight(Q.label_n()))
    throw TheoremViolationError("face_weight: face " + std::to_string(face_id) +
                                " has weight " + w.to_string() + " != C_0");
  return w;
}

PerfectMatching perfect_matching(const QuiverWithFaces& Q, int i) {
  if (!Q.labelled()) throw InvalidInputError("perfect_matching: quiver is not labelled");
  CycIdx ci(i, Q.label_n());
  PerfectMatching pm;
  pm.vertex = i;
  for (const QuiverArrow& a : Q.arrows())
    if (arrow_weight(Q, a.id).support_contains(i)) pm.arrows.push_back(a.id);
  std::set<int> in_matching(pm.arrows.begin(), pm.arrows.end());
  for (const QuiverFace& f : Q.faces()) {
    int hits = 0;
    for (int aid : f.arrows) hits += in_matching.count(aid) ? 1 : 0;
    if (hits != 1)
      throw TheoremViolationError("perfect_matching: face " + std::to_string(f.id) + " meets P_" +
                                  std::to_string(i) + " in " + std::to_string(hits) + " arrows");
  }
  return pm;
}

VertexStar vertex_star(const QuiverWithFaces& Q, int vertex_id) {
  const QuiverVertex& v = Q.vertex(vertex_id);
  VertexStar star;
  star.vertex = vertex_id;
  star.internal = !v.boundary;

  std::vector<int> incident = Q.out_arrows(vertex_id);
  const std::vector<int>& in = Q.in_arrows(vertex_id);
  incident.insert(incident.end(), in.begin(), in.end());
  std::sort(incident.begin(), incident.end());
  if (incident.empty()) throw InvalidInputError("vertex_star: isolated vertex");
  if (incident.size() == 1) {
    star.arrows = incident;
    star.degenerate_wedge = true;
    star.wedge_out = star.wedge_in = incident;
    return star;
  }

  std::map<int, std::vector<int>> adjacency;
  for (int aid : incident) adjacency[aid];
  for (const QuiverFace& f : Q.faces()) {
    for (std::size_t i = 0; i < f.arrows.size(); ++i) {
      int x = f.arrows[i];
      int y = f.arrows[(i + 1) % f.arrows.size()];
      if (Q.arrow(x).head == vertex_id && Q.arrow(y).tail == vertex_id) {
        adjacency[x].push_back(y);
        adjacency[y].push_back(x);
      }
    }
  }
  // Walk the line (boundary) or cycle (internal).
  int start = -1;
  for (int aid : incident)
    if (adjacency[aid].size() == 1) {
      start = aid;
      break;
    }
  bool is_line = (start >= 0);
  if (!is_line) start = incident.front();
  std::vector<int> order;
  std::set<int> used;
  int cur = start, prev = -1;
  while (true) {
    order.push_back(cur);
    used.insert(cur);
    int next = -1;
    for (int nb : adjacency[cur]) {
      if (nb != prev && !used.count(nb)) {
        next = nb;
        break;
      }
    }
    if (next < 0) break;
    prev = cur;
    cur = next;
  }
  if (order.size() != incident.size())
    throw InvalidInputError("vertex_star: rotation order at vertex " + std::to_string(vertex_id) +
                            " is not a single line or cycle");
  if (is_line == star.internal)
    throw InvalidInputError("vertex_star: boundary flag inconsistent with incidence shape at " +
                            std::to_string(vertex_id));
  star.arrows = order;

  // Alternation in/out along the rotation order.
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    bool out_i = Q.arrow(order[i]).tail == vertex_id;
    bool out_n = Q.arrow(order[i + 1]).tail == vertex_id;
    if (out_i == out_n)
      throw InvalidInputError("vertex_star: arrows do not alternate at vertex " +
                              std::to_string(vertex_id));
  }

  if (!star.internal) {
    auto is_out = [&](int aid) { return Q.arrow(aid).tail == vertex_id; };
    int first_out = -1, last_out = -1, first_in = -1, last_in = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (is_out(order[i])) {
        if (first_out < 0) first_out = static_cast<int>(i);
        last_out = static_cast<int>(i);
      } else {
        if (first_in < 0) first_in = static_cast<int>(i);
        last_in = static_cast<int>(i);
      }
    }
    if (first_out >= 0)
      star.wedge_out.assign(order.begin() + first_out, order.begin() + last_out + 1);
    if (first_in >= 0)
      star.wedge_in.assign(order.begin() + first_in, order.begin() + last_in + 1);
    // A wedge spanning the whole line is fine (both boundary arrows point the
    // same way); only a vertex with no outgoing or no incoming arrows is
    // flagged.
    star.degenerate_wedge = first_out < 0 || first_in < 0;
  }
  return star;
}

CheckReport vertex_weight_sums(const QuiverWithFaces& Q, int vertex_id) {
  CheckReport rep;
  if (!Q.labelled()) {
    rep.fail("vertex_weight_sums: quiver is not labelled");
    return rep;
  }
  int n = Q.label_n(), k = Q.label_k();
  VertexStar star = vertex_star(Q, vertex_id);
  const QuiverVertex& v = Q.vertex(vertex_id);
  if (star.internal) {
    Weight sum(n);
    for (int aid : star.arrows) sum += arrow_weight(Q, aid);
    std::int64_t r = static_cast<std::int64_t>(star.arrows.size()) / 2;
    Weight expected = weight_plus_scalar(Weight::zero(n), r - 1);
    if (sum != expected)
      rep.fail("internal vertex " + std::to_string(vertex_id) + ": incident weight sum " +
               sum.to_string() + " != (r-1)C_0 = " + expected.to_string());
    return rep;
  }
  // Boundary vertex: identify j with label E_j.
  int j = -1;
  for (int t = 1; t <= n; ++t)
    if (*v.label == boundary_label(t, k, n)) j = t;
  if (j < 0) {
    rep.fail("boundary vertex " + std::to_string(vertex_id) + " is not labelled by any E_j");
    return rep;
  }
  if (star.degenerate_wedge)
    rep.fail("boundary vertex E_" + std::to_string(j) +
             ": wedge degenerates to the whole star; identity not applicable");
  auto check_wedge = [&](const std::vector<int>& wedge, bool outgoing, int base) {
    Weight sum(n);
    std::int64_t r = 0;
    for (int aid : wedge) {
      sum += arrow_weight(Q, aid);
      bool is_out = Q.arrow(aid).tail == vertex_id;
      if (is_out == outgoing) ++r;
    }
    Weight expected = weight_plus_scalar(Weight::zero(n), r - 1);
    expected.add_at(base, 1);
    if (sum != expected)
      rep.fail(std::string(outgoing ? "W_out" : "W_in") + "(E_" + std::to_string(j) + "): sum " +
               sum.to_string() + " != " + expected.to_string());
  };
  if (!star.degenerate_wedge) {
    check_wedge(star.wedge_out, true, j);
    check_wedge(star.wedge_in, false, cyc_reduce(j - k, n));
  }
  return rep;
}

PlabicGraph plabic_dual(const QuiverWithFaces& Q) {
  PlabicGraph G;
  std::map<int, int> node_of_face;
  for (const QuiverFace& f : Q.faces()) {
    PlabicNode node;
    node.id = static_cast<int>(G.nodes.size());
    node.color = f.sign;
    node.quiver_face = f.id;
    node_of_face[f.id] = node.id;
    G.nodes.push_back(node);
  }
  std::map<int, int> node_of_marker_arrow;
  for (const QuiverArrow& a : Q.arrows()) {
    if (!a.boundary) continue;
    PlabicNode node;
    node.id = static_cast<int>(G.nodes.size());
    node.color = 0;
    if (auto mp = Q.marker_of_boundary_arrow(a.id)) node.marker = *mp;
    node_of_marker_arrow[a.id] = node.id;
    G.nodes.push_back(node);
  }
  std::map<int, int> edge_of_arrow;
  for (const QuiverArrow& a : Q.arrows()) {
    PlabicEdge e;
    e.id = static_cast<int>(G.edges.size());
    e.quiver_arrow = a.id;
    const std::vector<int>& fs = Q.faces_of_arrow(a.id);
    e.a = node_of_face.at(fs[0]);
    e.b = fs.size() == 2 ? node_of_face.at(fs[1]) : node_of_marker_arrow.at(a.id);
    edge_of_arrow[a.id] = e.id;
    G.edges.push_back(e);
  }
  // Rotations: boundary order for + (black, anticlockwise boundary), reversed
  // for - (white, clockwise boundary), so every rotation is anticlockwise.
  for (const QuiverFace& f : Q.faces()) {
    std::vector<int> rot;
    for (int aid : f.arrows) rot.push_back(edge_of_arrow.at(aid));
    if (f.sign < 0) std::reverse(rot.begin(), rot.end());
    G.rotations[node_of_face.at(f.id)] = rot;
  }
  return G;
}

QuiverWithFaces quiver_from_plabic(const PlabicGraph& G, int n_markers) {
  // Close the disk with virtual circle edges between consecutive markers and
  // trace the faces of the resulting planar map. Darts are (edge, direction).
  struct Dart {
    int edge;
    int from, to;
  };
  std::vector<PlabicEdge> edges = G.edges;
  std::map<int, int> marker_node;  // marker index -> node id
  for (const PlabicNode& node : G.nodes)
    if (node.color == 0) marker_node[node.marker.index] = node.id;
  if (static_cast<int>(marker_node.size()) != n_markers)
    throw InvalidInputError("quiver_from_plabic: marker count mismatch");
  std::map<int, int> circle_edge_after;  // marker t -> edge id (t -> t+1)
  for (int t = 1; t <= n_markers; ++t) {
    PlabicEdge e;
    e.id = static_cast<int>(edges.size());
    e.quiver_arrow = -1;
    e.a = marker_node.at(t);
    e.b = marker_node.at(cyc_reduce(t + 1, n_markers));
    circle_edge_after[t] = e.id;
    edges.push_back(e);
  }
  // Anticlockwise rotations: internal nodes as given; marker t gets
  // [edge to t+1, edge to t-1, half-edge].
  std::map<int, std::vector<int>> rot = G.rotations;
  std::map<int, int> half_edge_of_marker;
  for (const PlabicEdge& e : G.edges) {
    for (int end : {e.a, e.b}) {
      auto it = std::find_if(G.nodes.begin(), G.nodes.end(),
                             [&](const PlabicNode& nd) { return nd.id == end; });
      if (it != G.nodes.end() && it->color == 0) half_edge_of_marker[it->marker.index] = e.id;
    }
  }
  for (int t = 1; t <= n_markers; ++t) {
    rot[marker_node.at(t)] = {circle_edge_after.at(t),
                              circle_edge_after.at(cyc_reduce(t - 1, n_markers)),
                              half_edge_of_marker.at(t)};
  }
  // next dart after arriving at `to` via dart (from -> to): successor of the
  // reversed dart in the anticlockwise rotation at `to`.
  auto next_dart = [&](const Dart& d) -> Dart {
    const std::vector<int>& r = rot.at(d.to);
    auto pos = std::find(r.begin(), r.end(), d.edge);
    if (pos == r.end()) throw InvalidInputError("quiver_from_plabic: rotation missing edge");
    int nxt_edge = r[(static_cast<std::size_t>(pos - r.begin()) + 1) % r.size()];
    const PlabicEdge& e = edges[static_cast<std::size_t>(nxt_edge)];
    int other = (e.a == d.to) ? e.b : e.a;
    return Dart{nxt_edge, d.to, other};
  };
  // Trace all faces.
  std::set<std::pair<int, bool>> seen;  // (edge, oriented a->b?)
  auto dart_key = [&](const Dart& d) {
    const PlabicEdge& e = edges[static_cast<std::size_t>(d.edge)];
    return std::make_pair(d.edge, d.from == e.a);
  };
  std::vector<std::vector<Dart>> traced;
  for (const PlabicEdge& e : edges) {
    for (bool fwd : {true, false}) {
      Dart d{e.id, fwd ? e.a : e.b, fwd ? e.b : e.a};
      if (seen.count(dart_key(d))) continue;
      std::vector<Dart> cycle;
      Dart cur = d;
      while (true) {
        if (!seen.insert(dart_key(cur)).second) break;
        cycle.push_back(cur);
        cur = next_dart(cur);
        if (cur.edge == d.edge && cur.from == d.from) break;
      }
      traced.push_back(std::move(cycle));
    }
  }
  // The outer face consists solely of circle darts; drop it.
  std::vector<std::vector<Dart>> regions;
  for (auto& cyc : traced) {
    bool all_circle = std::all_of(cyc.begin(), cyc.end(), [&](const Dart& d) {
      return edges[static_cast<std::size_t>(d.edge)].quiver_arrow < 0;
    });
    if (!all_circle) regions.push_back(std::move(cyc));
  }
  // Regions become quiver vertices.
  std::vector<QuiverVertex> vertices;
  std::map<std::pair<int, bool>, int> region_of_dart;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    QuiverVertex v;
    v.id = static_cast<int>(i);
    v.boundary = std::any_of(regions[i].begin(), regions[i].end(), [&](const Dart& d) {
      return edges[static_cast<std::size_t>(d.edge)].quiver_arrow < 0;
    });
    vertices.push_back(v);
    for (const Dart& d : regions[i]) region_of_dart[dart_key(d)] = static_cast<int>(i);
  }
  auto color_of_node = [&](int id) {
    for (const PlabicNode& nd : G.nodes)
      if (nd.id == id) return nd.color;
    throw InvalidInputError("quiver_from_plabic: unknown node");
  };
  // Arrows: tail = region containing the (white -> black) dart, head = region
  // containing (black -> white); markers act as the opposite colour.
  std::vector<QuiverArrow> arrows;
  std::map<int, int> arrow_of_edge;
  for (const PlabicEdge& e : G.edges) {
    int ca = color_of_node(e.a);
    int cb = color_of_node(e.b);
    // Prefer an explicit black endpoint; a marker endpoint plays the colour
    // opposite to the internal one.
    int black_end;
    if (ca == +1)
      black_end = e.a;
    else if (cb == +1)
      black_end = e.b;
    else if (ca == -1)
      black_end = e.b;
    else
      black_end = e.a;
    int white_end = (black_end == e.a) ? e.b : e.a;
    QuiverArrow arr;
    arr.id = static_cast<int>(arrows.size());
    arr.tail = region_of_dart.at(std::make_pair(e.id, black_end == e.a));
    arr.head = region_of_dart.at(std::make_pair(e.id, white_end == e.a));
    arr.boundary = (ca == 0 || cb == 0);
    arrow_of_edge[e.id] = arr.id;
    arrows.push_back(arr);
  }
  std::vector<QuiverFace> faces;
  for (const PlabicNode& nd : G.nodes) {
    if (nd.color == 0) continue;
    QuiverFace f;
    f.id = static_cast<int>(faces.size());
    f.sign = nd.color;
    std::vector<int> boundary_edges = G.rotations.at(nd.id);
    if (nd.color < 0) std::reverse(boundary_edges.begin(), boundary_edges.end());
    for (int eid : boundary_edges) f.arrows.push_back(arrow_of_edge.at(eid));
    faces.push_back(std::move(f));
  }
  return QuiverWithFaces(std::move(vertices), std::move(arrows), std::move(faces));
}

bool same_labelled_quiver(const QuiverWithFaces& A, const QuiverWithFaces& B) {
  if (!A.labelled() || !B.labelled()) throw InvalidInputError("same_labelled_quiver: labels required");
  std::set<KSubset> la, lb;
  for (const QuiverVertex& v : A.vertices()) la.insert(*v.label);
  for (const QuiverVertex& v : B.vertices()) lb.insert(*v.label);
  if (la != lb) return false;
  auto arrow_set = [](const QuiverWithFaces& Q) {
    std::set<std::tuple<KSubset, KSubset, bool>> s;
    for (const QuiverArrow& a : Q.arrows())
      s.insert({*Q.vertex(a.tail).label, *Q.vertex(a.head).label, a.boundary});
    return s;
  };
  if (arrow_set(A) != arrow_set(B)) return false;
  auto face_set = [](const QuiverWithFaces& Q) {
    std::multiset<std::pair<int, std::vector<KSubset>>> s;
    for (const QuiverFace& f : Q.faces()) {
      std::vector<KSubset> cyc;
      for (int aid : f.arrows) cyc.push_back(*Q.vertex(Q.arrow(aid).tail).label);
      // canonical rotation
      std::vector<KSubset> best = cyc;
      for (std::size_t r = 1; r < cyc.size(); ++r) {
        std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
        if (cyc < best) best = cyc;
      }
      s.insert({f.sign, best});
    }
    return s;
  };
  return face_set(A) == face_set(B);
}

}  // namespace pdimer
