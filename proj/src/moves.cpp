#include "pdimer/moves.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace pdimer {

std::vector<int> exchangeable_vertices(const QuiverWithFaces& Q) {
  std::vector<int> out;
  for (const QuiverVertex& v : Q.vertices()) {
    if (v.boundary) continue;
    if (Q.out_arrows(v.id).size() + Q.in_arrows(v.id).size() == 4) out.push_back(v.id);
  }
  return out;
}

namespace {

struct LabelArrow {
  KSubset tail;
  KSubset head;
  bool boundary;

  friend bool operator<(const LabelArrow& a, const LabelArrow& b) {
    return std::tie(a.tail, a.head, a.boundary) < std::tie(b.tail, b.head, b.boundary);
  }
  friend bool operator==(const LabelArrow& a, const LabelArrow& b) {
    return a.tail == b.tail && a.head == b.head && a.boundary == b.boundary;
  }
};

std::multiset<LabelArrow> label_arrows(const QuiverWithFaces& Q) {
  std::multiset<LabelArrow> out;
  for (const QuiverArrow& a : Q.arrows())
    out.insert({*Q.vertex(a.tail).label, *Q.vertex(a.head).label, a.boundary});
  return out;
}

}  // namespace

ExchangeResult geometric_exchange(const Collection& C, const QuiverWithFaces& Q, int vertex_id) {
  const QuiverVertex& v = Q.vertex(vertex_id);
  if (v.boundary) throw InvalidInputError("geometric_exchange: boundary vertex");
  if (!v.label) throw InvalidInputError("geometric_exchange: unlabelled quiver");
  VertexStar star = vertex_star(Q, vertex_id);
  if (star.arrows.size() != 4)
    throw InvalidInputError("geometric_exchange: vertex " + v.label->to_string() +
                            " has degree " + std::to_string(star.arrows.size()) +
                            ", not a quadrilateral");
  // Cyclically ordered neighbours N1..N4.
  std::vector<KSubset> nb;
  for (int aid : star.arrows) {
    const QuiverArrow& a = Q.arrow(aid);
    nb.push_back(*Q.vertex(a.tail == vertex_id ? a.head : a.tail).label);
  }
  const KSubset& I = *v.label;
  // Pairing adjacent neighbours two ways: one parity reproduces I, the other
  // is the exchanged label (rotating the pairing by two changes nothing).
  auto intersect_union = [&](int off) {
    std::vector<int> elems;
    for (int e = 1; e <= I.n(); ++e) {
      bool in01 = nb[(0 + off) % 4].contains(e) && nb[(1 + off) % 4].contains(e);
      bool in23 = nb[(2 + off) % 4].contains(e) && nb[(3 + off) % 4].contains(e);
      if (in01 || in23) elems.push_back(e);
    }
    return elems;
  };
  std::vector<int> parity0 = intersect_union(0);
  std::vector<int> parity1 = intersect_union(1);
  bool p0_is_I = parity0 == I.elements();
  bool p1_is_I = parity1 == I.elements();
  if (p0_is_I == p1_is_I)
    throw TheoremViolationError(
        "geometric_exchange: exactly one neighbour pairing should reproduce the old label");
  std::vector<int> new_elems = p0_is_I ? parity1 : parity0;
  if (static_cast<int>(new_elems.size()) != I.k())
    throw TheoremViolationError("geometric_exchange: new label has wrong size");
  KSubset new_label(new_elems, I.n());

  std::vector<KSubset> members;
  for (const KSubset& m : C.members())
    if (!(m == I)) members.push_back(m);
  members.push_back(new_label);
  Collection C2(C.k(), C.n(), std::move(members));
  if (!C2.pairwise_weakly_separated())
    throw TheoremViolationError("geometric_exchange: mutated collection is not weakly separated");
  if (!C2.is_maximal())
    throw TheoremViolationError("geometric_exchange: mutated collection is not maximal");

  // Route (ii): rebuild from the new collection.
  QuiverWithFaces rebuilt = gamma_of_collection(C2);

  // Route (i): arrow-level mutation.
  std::multiset<LabelArrow> arrows = label_arrows(Q);
  std::vector<KSubset> in_nb, out_nb;
  for (int aid : star.arrows) {
    const QuiverArrow& a = Q.arrow(aid);
    if (a.head == vertex_id)
      in_nb.push_back(*Q.vertex(a.tail).label);
    else
      out_nb.push_back(*Q.vertex(a.head).label);
  }
  // (a) compose paths through the vertex.
  for (const KSubset& src : in_nb)
    for (const KSubset& dst : out_nb) arrows.insert({src, dst, false});
  // (b) reverse arrows at the vertex, relabelling it.
  std::multiset<LabelArrow> mutated;
  for (const LabelArrow& a : arrows) {
    if (a.tail == I)
      mutated.insert({a.head, new_label, a.boundary});
    else if (a.head == I)
      mutated.insert({new_label, a.tail, a.boundary});
    else
      mutated.insert(a);
  }
  // (c)/(d) cancel 2-cycles until none remain.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = mutated.begin(); it != mutated.end() && !changed; ++it) {
      for (auto jt = mutated.begin(); jt != mutated.end(); ++jt) {
        if (it == jt) continue;
        if (!(it->tail == jt->head && it->head == jt->tail)) continue;
        if (!it->boundary && !jt->boundary) {
          mutated.erase(jt);
          mutated.erase(it);  // iterators distinct, erase order fixed above
        } else if (it->boundary != jt->boundary) {
          LabelArrow internal = it->boundary ? *jt : *it;
          auto bnd = it->boundary ? it : jt;
          auto intl = it->boundary ? jt : it;
          mutated.erase(bnd);
          mutated.erase(intl);
          internal.boundary = true;
          mutated.insert(internal);
        } else {
          throw TheoremViolationError("geometric_exchange: 2-cycle of boundary arrows");
        }
        changed = true;
        break;
      }
    }
  }
  if (mutated != label_arrows(rebuilt))
    throw TheoremViolationError(
        "geometric_exchange: mutation-rule arrows disagree with the rebuilt quiver at " +
        I.to_string() + " -> " + new_label.to_string());

  return ExchangeResult{std::move(C2), std::move(rebuilt), I, new_label};
}

QuiverWithFaces reduce_twists(const QuiverWithFaces& Q, std::uint64_t seed) {
  // Work on mutable copies keyed by id.
  std::map<int, QuiverArrow> arrows;
  for (const QuiverArrow& a : Q.arrows()) arrows[a.id] = a;
  std::map<int, QuiverFace> faces;
  for (const QuiverFace& f : Q.faces()) faces[f.id] = f;
  std::map<int, MarkedPoint> markers;
  for (const QuiverArrow& a : Q.arrows())
    if (auto mp = Q.marker_of_boundary_arrow(a.id)) markers[a.id] = *mp;
  std::mt19937_64 rng(seed);

  auto faces_of = [&](int arrow_id) {
    std::vector<int> out;
    for (auto& [fid, f] : faces)
      if (std::count(f.arrows.begin(), f.arrows.end(), arrow_id)) out.push_back(fid);
    return out;
  };

  while (true) {
    std::vector<int> twogons;
    for (auto& [fid, f] : faces)
      if (f.arrows.size() == 2) twogons.push_back(fid);
    if (twogons.empty()) break;
    std::size_t pick = seed == 0 ? 0 : static_cast<std::size_t>(rng() % twogons.size());
    int fid = twogons[pick];
    QuiverFace gon = faces.at(fid);
    int a1 = gon.arrows[0], a2 = gon.arrows[1];
    bool b1 = arrows.at(a1).boundary, b2 = arrows.at(a2).boundary;
    if (b1 && b2) throw InvalidInputError("reduce_twists: free-standing 2-gon component");
    if (b1 || b2) {
      int boundary_arrow = b1 ? a1 : a2;
      int internal_arrow = b1 ? a2 : a1;
      faces.erase(fid);
      arrows.erase(boundary_arrow);
      arrows.at(internal_arrow).boundary = true;
      // The marked point stays put; the promoted arrow inherits it.
      auto mk = markers.find(boundary_arrow);
      if (mk != markers.end()) {
        markers[internal_arrow] = mk->second;
        markers.erase(mk);
      }
      continue;
    }
    // Internal 2-gon: splice the two neighbour faces together.
    auto other_face = [&](int arrow_id) {
      for (int g : faces_of(arrow_id))
        if (g != fid) return g;
      throw InvalidInputError("reduce_twists: internal arrow without second face");
    };
    int f1 = other_face(a1);
    int f2 = other_face(a2);
    if (f1 == f2) throw InvalidInputError("reduce_twists: 2-gon glued to a single face");
    // a1: u->v lies in gon and f1; a2: v->u in gon and f2. New face boundary:
    // (f1 after a1) then (f2 after a2).
    auto rest_after = [&](int face_id, int arrow_id) {
      std::vector<int> cyc = faces.at(face_id).arrows;
      auto it = std::find(cyc.begin(), cyc.end(), arrow_id);
      std::rotate(cyc.begin(), it, cyc.end());
      return std::vector<int>(cyc.begin() + 1, cyc.end());
    };
    QuiverFace merged;
    merged.id = f1;
    merged.sign = faces.at(f1).sign;
    if (faces.at(f1).sign != faces.at(f2).sign)
      throw InvalidInputError("reduce_twists: neighbour faces of a 2-gon have opposite signs");
    std::vector<int> part1 = rest_after(f1, a1);
    std::vector<int> part2 = rest_after(f2, a2);
    merged.arrows = part2;
    merged.arrows.insert(merged.arrows.end(), part1.begin(), part1.end());
    faces.erase(f1);
    faces.erase(f2);
    faces.erase(fid);
    faces[merged.id] = merged;
    arrows.erase(a1);
    arrows.erase(a2);
  }

  // Keep only vertices that still meet an arrow.
  std::set<int> live;
  for (auto& [aid, a] : arrows) {
    live.insert(a.tail);
    live.insert(a.head);
  }
  std::vector<QuiverVertex> vs;
  for (const QuiverVertex& v : Q.vertices())
    if (live.count(v.id)) vs.push_back(v);
  std::vector<QuiverArrow> as;
  for (auto& [aid, a] : arrows) as.push_back(a);
  std::vector<QuiverFace> fs;
  for (auto& [fid, f] : faces) fs.push_back(f);
  QuiverWithFaces out(std::move(vs), std::move(as), std::move(fs));
  for (const QuiverArrow& a : out.arrows()) {
    auto mk = markers.find(a.id);
    if (a.boundary && mk != markers.end()) out.set_boundary_marker(a.id, mk->second);
  }
  for (auto& [comp, size] : Q.component_sizes()) out.set_component_size(comp, size);
  return out;
}

InvarianceReport invariance_check(const Collection& C, const QuiverWithFaces& Q,
                                  const std::vector<KSubset>& sequence) {
  BoundaryAlgebraReport reference = boundary_algebra(Q);
  InvarianceReport rep{true, {}, C, Q};
  Collection cur = C;
  QuiverWithFaces curQ = Q;
  for (const KSubset& label : sequence) {
    InvarianceStep step{label, true, ""};
    int vid = curQ.vertex_with_label(label);
    if (vid < 0) {
      step.ok = false;
      step.detail = "label not present";
      rep.ok = false;
      rep.steps.push_back(step);
      break;
    }
    ExchangeResult ex = geometric_exchange(cur, curQ, vid);
    cur = ex.collection;
    curQ = ex.quiver;
    if (!cur.pairwise_weakly_separated() || !cur.is_maximal()) {
      step.ok = false;
      step.detail = "collection not maximal weakly separated";
    } else {
      BoundaryAlgebraReport now = boundary_algebra(curQ);
      if (!now.checks.ok) {
        step.ok = false;
        step.detail = "boundary identities failed: " + now.checks.violations.front();
      } else if (!now.table_equal(reference)) {
        step.ok = false;
        step.detail = "boundary multiplication table changed";
      }
    }
    if (!step.ok) rep.ok = false;
    rep.steps.push_back(step);
    if (!step.ok) break;
  }
  rep.final_collection = cur;
  rep.final_quiver = curQ;
  return rep;
}

}  // namespace pdimer
