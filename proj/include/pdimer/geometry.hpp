#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "pdimer/dimer.hpp"

namespace pdimer {

struct AngleAssignment {
  explicit AngleAssignment(std::vector<double> theta);
  int n() const { return static_cast<int>(theta_.size()); }
  double at(int i) const { return theta_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<double>& values() const { return theta_; }

 private:
  std::vector<double> theta_;  // theta_i in (0, 2pi), summing to 2pi
};

AngleAssignment uniform_angles(int n);

using Point = std::array<double, 2>;

struct TilingEmbedding {
  std::vector<Point> unit;          // v_1..v_n clockwise on the unit circle
  std::map<int, Point> positions;   // vertex id -> v(label)
  Point of_subset(const KSubset& s) const;
};

// v(J) = sum of v_i over i in J, with gap theta_i between v_i and v_{i+1}.
// Rejects quivers with 2-gon faces (not an isoradial embedding).
TilingEmbedding embed(const QuiverWithFaces& Q, const AngleAssignment& angles);

double theta_of_arrow(const AngleAssignment& angles, const Weight& w);

// Face sums = 2pi, internal vertices sum (pi - theta) to 2pi, boundary
// wedges to pi - theta_j; equivalently the R-charge identities divided by pi.
CheckReport check_angle_laws(const QuiverWithFaces& Q, const AngleAssignment& angles);

// Unit circumradius per tile, convex tiles with orientation matching the face
// sign, tile areas summing to the boundary polygon area.
CheckReport check_isoradial(const QuiverWithFaces& Q, const TilingEmbedding& emb);

// Deterministic standalone SVG document. Layers (in paint order) from
// {"tiles", "quiver", "strands", "labels"}.
std::string svg_export(const QuiverWithFaces& Q, const TilingEmbedding& emb,
                       const std::vector<std::string>& layers);

}  // namespace pdimer
