#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delone/exact.hpp"

namespace delone {

/// Permutation of {0..n-1} stored as its image vector.
using Permutation = std::vector<int>;

Permutation inverse(const Permutation& p);
/// (f ∘ g)(i) = f(g(i)).
Permutation compose(const Permutation& f, const Permutation& g);
bool is_permutation(const Permutation& p);

/// Square-tiled surface: N unit squares ("sheets") glued by translations.
/// h[i] is the sheet across the right edge of sheet i, v[i] the sheet across
/// its top edge.
class Origami {
 public:
  /// Validates bijectivity (kNotPermutation) and transitivity of <h, v>
  /// (kDisconnected).
  Origami(Permutation h, Permutation v);

  static Origami torus() { return Origami({0}, {0}); }

  int n() const { return static_cast<int>(h_.size()); }
  const Permutation& h() const { return h_; }
  const Permutation& v() const { return v_; }

  /// Mirror images used for the other quadrants: x -> -x swaps the roles of
  /// right and left neighbours, y -> -y those of top and bottom.
  Origami reflect_x() const { return Origami(inverse(h_), v_); }
  Origami reflect_y() const { return Origami(h_, inverse(v_)); }

  /// c = h ∘ v ∘ h⁻¹ ∘ v⁻¹; its cycles group sheets whose lower-left corners
  /// are the same point of the surface.
  Permutation commutator() const;

 private:
  Permutation h_;
  Permutation v_;
};

/// Parses {"n": N, "h": [...], "v": [...]} (0-indexed images).
/// Malformed documents raise kParse, bad gluings kNotPermutation, and
/// disconnected surfaces kDisconnected.
Origami origami_from_json(const std::string& text);
std::string origami_to_json(const Origami& o);

struct VertexClass {
  std::vector<int> sheets;  ///< one commutator cycle, starting at its smallest sheet
  int cone_order = 1;       ///< cone angle is 2π * cone_order
  bool singular = false;    ///< cone_order >= 2
};

/// Commutator cycles in order of their smallest sheet.
std::vector<VertexClass> vertex_classes(const Origami& o);

/// Primitive integer direction.
struct Direction {
  long p = 1;
  long q = 0;

  bool is_primitive() const;
  friend bool operator==(const Direction&, const Direction&) = default;
};

enum class Crossing : char { kH = 'H', kV = 'V' };

/// Order in which the segment from (0,0) to (p,q) crosses the unit grid;
/// the terminal corner is recorded as H then V. First quadrant only.
std::vector<Crossing> crossing_word(Direction dir);

/// Product of h (for H) and v (for V) in word order; sends the sheet a lift
/// of the closed geodesic starts on to the sheet it ends on.
Permutation monodromy(const Origami& o, Direction dir);

struct DirectionSaddles {
  /// Step counts s, one per outgoing prong, ascending. Holonomy is s * (p, q).
  std::vector<int> steps;
  /// Set when marked == false and the surface has no cone points at all.
  bool unsingular_cover = false;
};

/// Saddle connections in a first-quadrant primitive direction. With
/// `marked`, every preimage of the branch point counts as a vertex.
DirectionSaddles saddle_connections_in_direction(const Origami& o, Direction dir,
                                                 bool marked);

/// Walks the segment square by square from the lower-left corner of
/// `start_sheet`, returning the number of periods until it first meets a
/// vertex (singular, or any vertex with `marked`), or nullopt within s_max.
std::optional<int> ray_trace_oracle(const Origami& o, int start_sheet,
                                    Direction dir, int s_max, bool marked);

/// All holonomy vectors of saddle connections with norm <= radius, with
/// integer coordinates, closed under negation.
PointSet enumerate_holonomies(const Origami& o, double radius, bool marked);

/// Primitive directions (p, q) with p, q >= 0 and p^2 + q^2 <= radius^2,
/// generated by a pruned Stern–Brocot descent.
std::vector<Direction> primitive_directions(double radius);

}  // namespace delone
