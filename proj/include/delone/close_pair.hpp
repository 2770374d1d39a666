#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "delone/exact.hpp"

namespace delone {

/// (P + sqrt(D)) / Q with D > 0 non-square and Q | (D - P^2).
struct QuadIrrational {
  mpz_class P;
  mpz_class D;
  mpz_class Q;

  /// Normal form of an irrational quadratic number a + b sqrt(d).
  static QuadIrrational from_value(const QuadExt& value);
  QuadExt value() const;
};

/// [a0; preperiod..., (period...)] of a quadratic irrational.
struct ContinuedFraction {
  mpz_class a0;
  std::vector<mpz_class> preperiod;
  std::vector<mpz_class> period;

  /// k-th partial quotient (a0 for k = 0).
  const mpz_class& term(std::size_t k) const;
};

/// Exact periodic expansion via the (P, Q) recurrence; the period is closed on
/// the first repeated state. Throws kIncompleteExpansion past max_terms.
ContinuedFraction cf_expand(const QuadIrrational& x, std::size_t max_terms = 100000);

/// Convergents p_i / q_i for i = 0..k.
std::vector<std::pair<mpz_class, mpz_class>> convergents(const ContinuedFraction& cf,
                                                         std::size_t k);

struct InhomSolution {
  mpz_class m;
  mpz_class mp;
};

/// Integers (m, mp) with |c + m - mp * lambda| < eps.
///
/// Convergents are expanded until q_k >= 2/eps; the residual c - mp*lambda
/// (mod 1) is then reduced greedily by multiples of q_i * lambda - p_i, which
/// shrinks it below |q_i lambda - p_i| / 2 at step i. The bound is checked in
/// exact arithmetic; a bounded brute force over |mp| <= 2 q_k backs it up.
/// The pair is not claimed to minimise |c + m - mp * lambda|.
InhomSolution inhom_approx(const QuadIrrational& lambda, const Rational& c, double eps);
/// Same, with c allowed in the field of lambda.
InhomSolution inhom_approx(const QuadExt& lambda, const QuadExt& c, double eps);

/// Planar vector with both coordinates in one quadratic field.
struct Vec2 {
  QuadExt x;
  QuadExt y;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

Vec2 operator+(const Vec2& u, const Vec2& v);
Vec2 operator-(const Vec2& u, const Vec2& v);
Vec2 operator*(const QuadExt& s, const Vec2& v);
QuadExt dot(const Vec2& u, const Vec2& v);
QuadExt cross(const Vec2& u, const Vec2& v);

struct Decomposition {
  Vec2 along;  ///< parallel to the direction
  Vec2 perp;   ///< orthogonal to it
};

/// h = along + perp with along ∥ gamma. Exact; all coordinates must share a
/// field (kFieldMismatch otherwise).
Decomposition decompose(const Vec2& h, const Vec2& gamma);

/// Floating-point variant for data spanning several fields.
std::pair<std::array<double, 2>, std::array<double, 2>> decompose(
    std::array<double, 2> h, std::array<double, 2> gamma);

/// Periodic cylinder in a fixed direction.
struct Cylinder {
  Vec2 circumference;  ///< holonomy l of a core curve
  Vec2 crossing;       ///< holonomy h of a saddle connection crossing it once
  double width = 0;    ///< perpendicular extent; equals |perp(h)|
};

struct ClosePairResult {
  mpz_class n0;
  mpz_class n0p;
  Vec2 v1;  ///< h + n0 l
  Vec2 v2;  ///< h' + n0p l'
  double dist = 0;
  double dist_error = 0;
  QuadExt lambda;  ///< l' = lambda l
  QuadExt c;       ///< a - b, with along(h) = a l, along(h') = b l
  double eps = 0;  ///< bound passed to inhom_approx
  bool widths_within_bound = false;  ///< both widths <= r/4
};

/// Two saddle-connection holonomies on the Dehn-twist orbits h + n l and
/// h' + n' l' at distance < r.
///
/// Errors: kRatioRational when l'/l is rational; kPrecondition when the
/// circumferences are not parallel, a width disagrees with its crossing
/// holonomy, or the perpendicular offset |perp(h) - perp(h')| is not below
/// r/2 (guaranteed when both widths are <= r/4 and the offsets do not both
/// reach r/4 from opposite sides).
ClosePairResult close_pair(const Cylinder& ci, const Cylinder& cj, double r);

/// {"ci": {"circumference": [x, y], "crossing": [x, y], "width": w}, "cj": {...}}
/// with coordinates as exact-number strings.
std::pair<Cylinder, Cylinder> cylinders_from_json(const std::string& text);
std::string close_pair_to_json(const ClosePairResult& result, double r, int indent = 2);

}  // namespace delone
