#pragma once

#include "delone/exact.hpp"

namespace delone {

/// Position t = (tx, ty) of the second branch point inside the unit square.
struct ShiftVector {
  QuadExt tx = QuadExt(-1, 1, 2);  // sqrt(2) - 1
  QuadExt ty = QuadExt(-1, 1, 3);  // sqrt(3) - 1

  /// Both coordinates irrational and strictly inside (0, 1); throws
  /// kInvalidArgument otherwise.
  void validate() const;
};

/// Branched double cover of the plane over U = Z² and V = Z² + t; W = U ∪ V.
struct BranchConfig {
  ShiftVector shift;
};

/// Holonomies from the closed form: coprime pairs (tag "UU"), Z² + t ("UV")
/// and Z² - t ("VU"), restricted to the closed radius-ball.
PointSet closed_form(const BranchConfig& cfg, double radius);

/// Independent enumeration of segments between points of W whose open
/// interior avoids W, from one source in each translation class. Collinearity
/// and betweenness are decided exactly.
PointSet geometric_oracle(const BranchConfig& cfg, double radius);

/// True when w lies strictly between from and to on the segment.
bool on_open_segment(const PlanarPoint& from, const PlanarPoint& to,
                     const PlanarPoint& w);

enum class SlopeClass { kRational, kInfinite, kIrrational };

/// Exact classification of (p2.y - p1.y) / (p2.x - p1.x).
SlopeClass slope_class(const PlanarPoint& p1, const PlanarPoint& p2);

}  // namespace delone
