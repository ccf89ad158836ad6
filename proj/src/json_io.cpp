#include "pdimer/json_io.hpp"

#include <algorithm>

namespace pdimer {

using nlohmann::json;

json collection_to_json(const Collection& C) {
  json labels = json::array();
  for (const KSubset& s : C.members()) labels.push_back(s.elements());
  return json{{"k", C.k()}, {"n", C.n()}, {"labels", labels}};
}

Collection collection_from_json(const json& j) {
  if (!j.contains("k") || !j.contains("n") || !j.contains("labels"))
    throw InvalidInputError("collection JSON needs k, n, labels");
  int k = j.at("k").get<int>();
  int n = j.at("n").get<int>();
  std::vector<KSubset> members;
  for (const auto& lab : j.at("labels")) members.emplace_back(lab.get<std::vector<int>>(), n);
  for (const KSubset& s : members)
    if (s.k() != k) throw InvalidInputError("collection JSON: label of wrong size");
  return Collection(k, n, std::move(members));
}

json quiver_to_json(const QuiverWithFaces& Q) {
  json vertices = json::array();
  for (const QuiverVertex& v : Q.vertices()) {
    json jv{{"id", v.id}, {"boundary", v.boundary}};
    if (v.label) jv["label"] = v.label->elements();
    vertices.push_back(jv);
  }
  json arrows = json::array();
  for (const QuiverArrow& a : Q.arrows()) {
    json ja{{"id", a.id}, {"tail", a.tail}, {"head", a.head}, {"boundary", a.boundary}};
    if (auto mp = Q.marker_of_boundary_arrow(a.id))
      ja["marker"] = json::array({mp->component, mp->index});
    arrows.push_back(ja);
  }
  json faces = json::array();
  for (const QuiverFace& f : Q.faces())
    faces.push_back(json{{"sign", f.sign > 0 ? "+" : "-"}, {"arrows", f.arrows}});
  json out{{"vertices", vertices}, {"arrows", arrows}, {"faces", faces}};
  if (!Q.component_sizes().empty()) {
    json comps = json::object();
    for (auto& [c, size] : Q.component_sizes()) comps[std::to_string(c)] = size;
    out["components"] = comps;
  }
  return out;
}

QuiverWithFaces quiver_from_json(const json& j) {
  std::vector<QuiverVertex> vertices;
  int n = 0;
  for (const auto& jv : j.at("vertices")) {
    if (jv.contains("label")) {
      auto elems = jv.at("label").get<std::vector<int>>();
      n = std::max(n, *std::max_element(elems.begin(), elems.end()));
    }
  }
  if (j.contains("components") && j.at("components").contains("0"))
    n = std::max(n, j.at("components").at("0").get<int>());
  for (const auto& jv : j.at("vertices")) {
    QuiverVertex v;
    v.id = jv.at("id").get<int>();
    v.boundary = jv.at("boundary").get<bool>();
    if (jv.contains("label")) v.label = KSubset(jv.at("label").get<std::vector<int>>(), n);
    vertices.push_back(v);
  }
  std::vector<QuiverArrow> arrows;
  std::vector<std::pair<int, MarkedPoint>> markers;
  for (const auto& ja : j.at("arrows")) {
    QuiverArrow a;
    a.id = ja.at("id").get<int>();
    a.tail = ja.at("tail").get<int>();
    a.head = ja.at("head").get<int>();
    a.boundary = ja.at("boundary").get<bool>();
    if (ja.contains("marker"))
      markers.push_back({a.id, MarkedPoint{ja.at("marker").at(0).get<int>(),
                                           ja.at("marker").at(1).get<int>()}});
    arrows.push_back(a);
  }
  std::vector<QuiverFace> faces;
  for (const auto& jf : j.at("faces")) {
    QuiverFace f;
    f.id = static_cast<int>(faces.size());
    f.sign = jf.at("sign").get<std::string>() == "+" ? +1 : -1;
    f.arrows = jf.at("arrows").get<std::vector<int>>();
    faces.push_back(f);
  }
  QuiverWithFaces Q(std::move(vertices), std::move(arrows), std::move(faces));
  for (auto& [aid, mp] : markers) Q.set_boundary_marker(aid, mp);
  if (j.contains("components"))
    for (auto& [key, val] : j.at("components").items())
      Q.set_component_size(std::stoi(key), val.get<int>());
  return Q;
}

json plabic_to_json(const PlabicGraph& G) {
  json nodes = json::array();
  for (const PlabicNode& nd : G.nodes) {
    json jn{{"id", nd.id}};
    if (nd.color == 0) {
      jn["color"] = "boundary";
      jn["marker"] = json::array({nd.marker.component, nd.marker.index});
    } else {
      jn["color"] = nd.color > 0 ? "black" : "white";
      jn["face"] = nd.quiver_face;
    }
    nodes.push_back(jn);
  }
  json edges = json::array();
  for (const PlabicEdge& e : G.edges)
    edges.push_back(json{{"id", e.id}, {"ends", json::array({e.a, e.b})},
                         {"arrow", e.quiver_arrow}});
  json rotations = json::object();
  for (auto& [node, rot] : G.rotations) rotations[std::to_string(node)] = rot;
  return json{{"nodes", nodes}, {"edges", edges}, {"rotations", rotations}};
}

json triangulation_to_json(const Triangulation& T) {
  json surface{{"kind", T.surface.kind == MarkedSurface::Kind::kDisk ? "disk" : "annulus"},
               {"n", T.surface.n},
               {"m", T.surface.m}};
  json edges = json::array();
  for (const TriEdge& e : T.edges)
    edges.push_back(json{
        {"id", e.id},
        {"boundary", e.boundary},
        {"endpoints", json::array({json::array({e.ends[0].component, e.ends[0].index}),
                                   json::array({e.ends[1].component, e.ends[1].index})})}});
  json tris = json::array();
  json tri_vertices = json::array();
  json tri_reversed = json::array();
  for (const Triangle& t : T.triangles) {
    tris.push_back(json::array({t.edges[0], t.edges[1], t.edges[2]}));
    json vs = json::array();
    for (const MarkedPoint& p : t.vertices) vs.push_back(json::array({p.component, p.index}));
    tri_vertices.push_back(vs);
    tri_reversed.push_back(json::array({t.reversed[0], t.reversed[1], t.reversed[2]}));
  }
  return json{{"surface", surface},
              {"edges", edges},
              {"triangles", tris},
              {"triangle_vertices", tri_vertices},
              {"triangle_reversed", tri_reversed}};
}

Triangulation triangulation_from_json(const json& j) {
  Triangulation T;
  const json& s = j.at("surface");
  T.surface.kind = s.at("kind").get<std::string>() == "disk" ? MarkedSurface::Kind::kDisk
                                                             : MarkedSurface::Kind::kAnnulus;
  T.surface.n = s.at("n").get<int>();
  T.surface.m = s.contains("m") ? s.at("m").get<int>() : 0;
  for (const auto& je : j.at("edges")) {
    TriEdge e;
    e.id = je.at("id").get<int>();
    e.boundary = je.at("boundary").get<bool>();
    const auto& ep = je.at("endpoints");
    e.ends = {MarkedPoint{ep.at(0).at(0).get<int>(), ep.at(0).at(1).get<int>()},
              MarkedPoint{ep.at(1).at(0).get<int>(), ep.at(1).at(1).get<int>()}};
    T.edges.push_back(e);
  }
  const json& tris = j.at("triangles");
  for (std::size_t ti = 0; ti < tris.size(); ++ti) {
    Triangle t;
    for (int p = 0; p < 3; ++p)
      t.edges[static_cast<std::size_t>(p)] = tris.at(ti).at(static_cast<std::size_t>(p)).get<int>();
    if (j.contains("triangle_vertices")) {
      for (int p = 0; p < 3; ++p) {
        const auto& v = j.at("triangle_vertices").at(ti).at(static_cast<std::size_t>(p));
        t.vertices[static_cast<std::size_t>(p)] =
            MarkedPoint{v.at(0).get<int>(), v.at(1).get<int>()};
      }
      if (j.contains("triangle_reversed")) {
        for (int p = 0; p < 3; ++p)
          t.reversed[static_cast<std::size_t>(p)] =
              j.at("triangle_reversed").at(ti).at(static_cast<std::size_t>(p)).get<bool>();
      } else {
        for (int p = 0; p < 3; ++p) {
          const TriEdge& e = T.edge(t.edges[static_cast<std::size_t>(p)]);
          if (e.ends[0] == e.ends[1])
            throw InvalidInputError(
                "triangulation JSON: loop edge needs explicit triangle_reversed data");
          t.reversed[static_cast<std::size_t>(p)] =
              !(e.ends[0] == t.vertices[static_cast<std::size_t>(p)]);
        }
      }
    } else {
      // Derive vertices from shared endpoints; unambiguous without loops or
      // doubled adjacencies.
      for (int p = 0; p < 3; ++p) {
        const TriEdge& a = T.edge(t.edges[static_cast<std::size_t>(p)]);
        const TriEdge& b = T.edge(t.edges[static_cast<std::size_t>((p + 1) % 3)]);
        std::vector<MarkedPoint> shared;
        for (const MarkedPoint& u : a.ends)
          for (const MarkedPoint& w : b.ends)
            if (u == w) shared.push_back(u);
        if (shared.size() != 1)
          throw InvalidInputError(
              "triangulation JSON: ambiguous corners; supply triangle_vertices");
        t.vertices[static_cast<std::size_t>((p + 1) % 3)] = shared.front();
      }
      for (int p = 0; p < 3; ++p) {
        const TriEdge& e = T.edge(t.edges[static_cast<std::size_t>(p)]);
        t.reversed[static_cast<std::size_t>(p)] =
            !(e.ends[0] == t.vertices[static_cast<std::size_t>(p)]);
      }
    }
    T.triangles.push_back(t);
  }
  CheckReport valid = validate_triangulation(T);
  if (!valid.ok) throw InvalidInputError("triangulation JSON: " + valid.violations.front());
  return T;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace pdimer
