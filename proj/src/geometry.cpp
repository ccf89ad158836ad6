#include "pdimer/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pdimer {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPointTol = 1e-9;
constexpr double kAreaTol = 1e-6;
}  // namespace

AngleAssignment::AngleAssignment(std::vector<double> theta) : theta_(std::move(theta)) {
  if (theta_.empty()) throw InvalidInputError("AngleAssignment: empty");
  double sum = 0;
  for (double t : theta_) {
    if (!(t > 0.0) || !(t < kTwoPi))
      throw InvalidInputError("AngleAssignment: angles must lie in (0, 2pi)");
    sum += t;
  }
  if (std::abs(sum - kTwoPi) > 1e-12)
    throw InvalidInputError("AngleAssignment: angles must sum to 2pi");
}

AngleAssignment uniform_angles(int n) {
  if (n < 1) throw InvalidInputError("uniform_angles: n must be positive");
  std::vector<double> t(static_cast<std::size_t>(n), kTwoPi / n);
  // Make the sum exact to the last ulp.
  double sum = 0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) sum += t[i];
  t.back() = kTwoPi - sum;
  return AngleAssignment(std::move(t));
}

Point TilingEmbedding::of_subset(const KSubset& s) const {
  Point p{0.0, 0.0};
  for (int i : s.elements()) {
    p[0] += unit[static_cast<std::size_t>(i - 1)][0];
    p[1] += unit[static_cast<std::size_t>(i - 1)][1];
  }
  return p;
}

TilingEmbedding embed(const QuiverWithFaces& Q, const AngleAssignment& angles) {
  if (!Q.labelled()) throw InvalidInputError("embed: quiver is not labelled");
  int n = Q.label_n();
  if (angles.n() != n) throw InvalidInputError("embed: angle count mismatch");
  for (const QuiverFace& f : Q.faces())
    if (f.arrows.size() < 3)
      throw InvalidInputError(
          "embed: 2-gon face present; diagram is not of reduced type and the embedding "
          "degenerates");
  TilingEmbedding emb;
  emb.unit.resize(static_cast<std::size_t>(n));
  double phi = 0.0;  // v_1 at angle 0, then clockwise with gap theta_i
  for (int i = 1; i <= n; ++i) {
    emb.unit[static_cast<std::size_t>(i - 1)] = {std::cos(phi), std::sin(phi)};
    phi -= angles.at(i);
  }
  for (const QuiverVertex& v : Q.vertices()) emb.positions[v.id] = emb.of_subset(*v.label);
  return emb;
}

double theta_of_arrow(const AngleAssignment& angles, const Weight& w) {
  if (w.modulus() != angles.n()) throw InvalidInputError("theta_of_arrow: size mismatch");
  double t = 0;
  for (int i = 1; i <= w.modulus(); ++i) {
    if (w.at(i) > 1) throw InvalidInputError("theta_of_arrow: weight is not 0/1");
    if (w.at(i) == 1) t += angles.at(i);
  }
  return t;
}

CheckReport check_angle_laws(const QuiverWithFaces& Q, const AngleAssignment& angles) {
  CheckReport rep;
  if (!Q.labelled()) {
    rep.fail("check_angle_laws: quiver is not labelled");
    return rep;
  }
  int n = Q.label_n(), k = Q.label_k();
  constexpr double tol = kPointTol;
  auto theta = [&](int arrow_id) { return theta_of_arrow(angles, arrow_weight(Q, arrow_id)); };

  for (const QuiverFace& f : Q.faces()) {
    double sum = 0;
    for (int aid : f.arrows) sum += theta(aid);
    if (std::abs(sum - kTwoPi) > tol)
      rep.fail("face " + std::to_string(f.id) + ": angle sum " + std::to_string(sum) +
               " != 2pi");
  }
  for (const QuiverVertex& v : Q.vertices()) {
    VertexStar star = vertex_star(Q, v.id);
    if (star.internal) {
      double sum = 0;
      for (int aid : star.arrows) sum += std::numbers::pi - theta(aid);
      if (std::abs(sum - kTwoPi) > tol)
        rep.fail("internal vertex " + std::to_string(v.id) + ": sum(pi - theta) = " +
                 std::to_string(sum) + " != 2pi");
    } else if (!star.degenerate_wedge) {
      int j = -1;
      for (int t = 1; t <= n; ++t)
        if (*v.label == boundary_label(t, k, n)) j = t;
      double sum = 0;
      for (int aid : star.wedge_out) sum += std::numbers::pi - theta(aid);
      double expect = std::numbers::pi - angles.at(j);
      if (std::abs(sum - expect) > tol)
        rep.fail("W_out(E_" + std::to_string(j) + "): sum(pi - theta) = " + std::to_string(sum) +
                 " != pi - theta_j");
      // R-charge form of the same identity, scaled by pi.
      double rsum = 0;
      for (int aid : star.wedge_out) rsum += 1.0 - theta(aid) / std::numbers::pi;
      if (std::abs(rsum - (1.0 - angles.at(j) / std::numbers::pi)) > tol)
        rep.fail("R-charge identity fails at E_" + std::to_string(j));
    }
  }
  return rep;
}

namespace {

double signed_area(const std::vector<Point>& poly) {
  double a = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return a / 2.0;
}

bool is_convex(const std::vector<Point>& poly, int orientation) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    const Point& c = poly[(i + 2) % poly.size()];
    double cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
    if (orientation > 0 ? cross < -kPointTol : cross > kPointTol) return false;
  }
  return true;
}

Point circumcenter(const Point& a, const Point& b, const Point& c) {
  double d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
  if (std::abs(d) < 1e-14) throw InvalidInputError("circumcenter: collinear points");
  double ux = ((a[0] * a[0] + a[1] * a[1]) * (b[1] - c[1]) +
               (b[0] * b[0] + b[1] * b[1]) * (c[1] - a[1]) +
               (c[0] * c[0] + c[1] * c[1]) * (a[1] - b[1])) /
              d;
  double uy = ((a[0] * a[0] + a[1] * a[1]) * (c[0] - b[0]) +
               (b[0] * b[0] + b[1] * b[1]) * (a[0] - c[0]) +
               (c[0] * c[0] + c[1] * c[1]) * (b[0] - a[0])) /
              d;
  return {ux, uy};
}

}  // namespace

CheckReport check_isoradial(const QuiverWithFaces& Q, const TilingEmbedding& emb) {
  CheckReport rep;
  if (!Q.labelled()) {
    rep.fail("check_isoradial: quiver is not labelled");
    return rep;
  }
  int n = Q.label_n(), k = Q.label_k();
  double tiles_area = 0;
  for (const QuiverFace& f : Q.faces()) {
    std::vector<Point> poly;
    for (int aid : f.arrows) poly.push_back(emb.positions.at(Q.arrow(aid).tail));
    Point c = circumcenter(poly[0], poly[1], poly[2]);
    for (const Point& p : poly) {
      double r = std::hypot(p[0] - c[0], p[1] - c[1]);
      if (std::abs(r - 1.0) > kPointTol)
        rep.fail("face " + std::to_string(f.id) + ": circumradius " + std::to_string(r));
    }
    double area = signed_area(poly);
    if (f.sign > 0 ? area <= 0 : area >= 0)
      rep.fail("face " + std::to_string(f.id) + ": orientation does not match sign");
    if (!is_convex(poly, f.sign))
      rep.fail("face " + std::to_string(f.id) + ": tile is not convex");
    tiles_area += std::abs(area);
  }
  // Hull: boundary polygon v(E_1..E_n), clockwise.
  std::vector<Point> hull;
  for (int j = 1; j <= n; ++j) hull.push_back(emb.of_subset(boundary_label(j, k, n)));
  double hull_area = std::abs(signed_area(hull));
  if (std::abs(tiles_area - hull_area) > kAreaTol)
    rep.fail("tile areas " + std::to_string(tiles_area) + " do not sum to hull area " +
             std::to_string(hull_area));
  if (!is_convex(hull, signed_area(hull) > 0 ? +1 : -1))
    rep.fail("boundary polygon is not convex");
  return rep;
}

namespace {

std::string fmt(double x) {
  // Fixed six decimals; normalize the sign of zero for byte-stable output.
  if (std::abs(x) < 5e-7) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

std::string svg_export(const QuiverWithFaces& Q, const TilingEmbedding& emb,
                       const std::vector<std::string>& layers) {
  const double scale = 120.0, cx = 400.0, cy = 400.0;
  auto px = [&](const Point& p) -> Point {
    return {cx + scale * p[0], cy - scale * p[1]};
  };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
        "viewBox=\"0 0 800 800\">\n";
  os << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
        "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">"
        "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#303030\"/></marker></defs>\n";
  for (const std::string& layer : layers) {
    if (layer == "tiles") {
      os << "<g id=\"tiles\" stroke=\"#606060\" stroke-width=\"1\">\n";
      for (const QuiverFace& f : Q.faces()) {
        os << "<polygon fill=\"" << (f.sign > 0 ? "#c8c8c8" : "#ffffff") << "\" points=\"";
        for (std::size_t i = 0; i < f.arrows.size(); ++i) {
          Point p = px(emb.positions.at(Q.arrow(f.arrows[i]).tail));
          if (i) os << " ";
          os << fmt(p[0]) << "," << fmt(p[1]);
        }
        os << "\"/>\n";
      }
      os << "</g>\n";
    } else if (layer == "quiver") {
      os << "<g id=\"quiver\" stroke=\"#303030\" stroke-width=\"1.5\" fill=\"none\">\n";
      for (const QuiverArrow& a : Q.arrows()) {
        Point t = px(emb.positions.at(a.tail));
        Point h = px(emb.positions.at(a.head));
        // Shorten slightly so arrowheads do not overlap vertex labels.
        double dx = h[0] - t[0], dy = h[1] - t[1];
        double len = std::hypot(dx, dy);
        double shrink = std::min(10.0, 0.2 * len);
        Point t2{t[0] + dx / len * shrink, t[1] + dy / len * shrink};
        Point h2{h[0] - dx / len * shrink, h[1] - dy / len * shrink};
        os << "<line x1=\"" << fmt(t2[0]) << "\" y1=\"" << fmt(t2[1]) << "\" x2=\"" << fmt(h2[0])
           << "\" y2=\"" << fmt(h2[1]) << "\" marker-end=\"url(#arrow)\"/>\n";
      }
      os << "</g>\n";
    } else if (layer == "strands") {
      os << "<g id=\"strands\" stroke=\"#b03030\" stroke-width=\"1\" fill=\"none\" "
            "stroke-dasharray=\"4 2\">\n";
      std::vector<Strand> ss = strands(Q);
      std::sort(ss.begin(), ss.end(), [](const Strand& a, const Strand& b) {
        if (a.start && b.start) return *a.start < *b.start;
        return a.crossings < b.crossings;
      });
      for (const Strand& s : ss) {
        os << "<polyline points=\"";
        bool first = true;
        for (int aid : s.crossings) {
          const QuiverArrow& a = Q.arrow(aid);
          Point t = emb.positions.at(a.tail);
          Point h = emb.positions.at(a.head);
          Point m = px({(t[0] + h[0]) / 2, (t[1] + h[1]) / 2});
          if (!first) os << " ";
          os << fmt(m[0]) << "," << fmt(m[1]);
          first = false;
        }
        os << "\"/>\n";
      }
      os << "</g>\n";
    } else if (layer == "labels") {
      os << "<g id=\"labels\" font-family=\"monospace\" font-size=\"13\" fill=\"#000000\" "
            "text-anchor=\"middle\">\n";
      for (const QuiverVertex& v : Q.vertices()) {
        Point p = px(emb.positions.at(v.id));
        os << "<text x=\"" << fmt(p[0]) << "\" y=\"" << fmt(p[1] + 4) << "\">"
           << (v.label ? v.label->to_string() : std::to_string(v.id)) << "</text>\n";
      }
      os << "</g>\n";
    } else {
      throw InvalidInputError("svg_export: unknown layer " + layer);
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace pdimer
