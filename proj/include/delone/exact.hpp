#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "delone/bigfloat.hpp"

namespace delone {

/// Canonical rational (GMP keeps numerator/denominator reduced, den > 0).
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws on a zero denominator.
Rational make_rational(const mpz_class& num, const mpz_class& den);

/// Exact rational equal to a finite double.
Rational rational_from_double(double v);

/// Splits n >= 1 as root^2 * core with core squarefree.
struct SquarefreeSplit {
  std::int64_t core;
  std::int64_t root;
};
SquarefreeSplit squarefree_split(std::int64_t n);

/// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
///
/// The radicand is kept squarefree. d == 1 is the rational field and always
/// carries b == 0. A rational value may still be tagged with a larger d so
/// that every coordinate of a point set shares one field descriptor.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a, Rational b, std::int64_t d);

  static QuadExt rational(Rational a, std::int64_t d = 1) {
    return QuadExt(std::move(a), Rational(0), d);
  }
  static QuadExt integer(long v, std::int64_t d = 1) {
    return rational(Rational(v), d);
  }
  /// 0 + 1*sqrt(d)
  static QuadExt sqrt_of(std::int64_t d) { return QuadExt(0, 1, d); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t d() const { return d_; }

  bool is_rational() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  /// The same value tagged with radicand `d`. Only rational values (or values
  /// already in that field) can be retagged; anything else is a field mismatch.
  QuadExt in_field(std::int64_t d) const;

  QuadExt conjugate() const { return QuadExt(a_, -b_, d_); }
  /// a^2 - b^2 d
  Rational norm() const { return a_ * a_ - b_ * b_ * d_; }

  friend bool operator==(const QuadExt& u, const QuadExt& v) {
    return u.d_ == v.d_ && u.a_ == v.a_ && u.b_ == v.b_;
  }

 private:
  Rational a_{0};
  Rational b_{0};
  std::int64_t d_ = 1;
};

/// Radicand shared by u and v; d == 1 adapts to the other side.
std::int64_t common_field(const QuadExt& u, const QuadExt& v);

QuadExt quad_add(const QuadExt& u, const QuadExt& v);
QuadExt quad_sub(const QuadExt& u, const QuadExt& v);
QuadExt quad_mul(const QuadExt& u, const QuadExt& v);
QuadExt quad_div(const QuadExt& u, const QuadExt& v);
QuadExt quad_neg(const QuadExt& u);

inline QuadExt operator+(const QuadExt& u, const QuadExt& v) { return quad_add(u, v); }
inline QuadExt operator-(const QuadExt& u, const QuadExt& v) { return quad_sub(u, v); }
inline QuadExt operator*(const QuadExt& u, const QuadExt& v) { return quad_mul(u, v); }
inline QuadExt operator/(const QuadExt& u, const QuadExt& v) { return quad_div(u, v); }
inline QuadExt operator-(const QuadExt& u) { return quad_neg(u); }

/// Exact sign of a + b*sqrt(d); no floating point involved.
int quad_sign(const QuadExt& u);

/// Exact three-way comparison of values (fields must be compatible).
int quad_compare(const QuadExt& u, const QuadExt& v);

/// Largest integer <= u, exact.
mpz_class quad_floor(const QuadExt& u);

/// Value with a rigorous absolute error bound: |value - exact| <= error.
struct FloatEnclosure {
  BigFloat value;
  BigFloat error;

  double approx() const { return value.to_double(); }
  double error_upper() const { return error.to_double(MPFR_RNDU); }
};

/// Evaluates u at `precision_bits` (>= 24) with
/// error <= 2^(1 - precision_bits) * (1 + |value|).
FloatEnclosure to_float(const QuadExt& u, int precision_bits);

/// Nearest double (within a couple of ulps); for plotting and bucketing.
double to_double(const QuadExt& u);

/// "a_num/a_den+b_num/b_den*sqrt(d)", e.g. "-1/1+1/1*sqrt(2)".
std::string to_string(const QuadExt& u);

/// Accepts the canonical form plus shorthands such as "3", "-1/2",
/// "sqrt(2)", "-1+sqrt(2)", "2*sqrt(3)". Throws Error(kParse).
QuadExt parse_quad(std::string_view text);

/// Q-linear combination of square roots of distinct squarefree integers
/// (radicand 1 holds the rational part). Such a sum is zero exactly when every
/// coefficient is zero, which makes zero tests exact in any multiquadratic
/// field.
class SurdSum {
 public:
  SurdSum() = default;
  explicit SurdSum(const QuadExt& u);

  void add_term(const Rational& coeff, std::int64_t radicand);
  SurdSum& operator+=(const SurdSum& other);
  SurdSum& operator-=(const SurdSum& other);

  static SurdSum product(const QuadExt& u, const QuadExt& v);

  bool is_zero() const { return terms_.empty(); }
  const std::map<std::int64_t, Rational>& terms() const { return terms_; }

  /// Rigorous enclosure at working precision `bits`.
  FloatEnclosure evaluate(mpfr_prec_t bits) const;

  /// Exact zero detection, then interval evaluation with precision escalating
  /// up to 4096 bits. A nonzero sum that cannot be separated from zero at the
  /// cap is reported as 0 ("numerically equal").
  int sign() const;

  double approx() const;

 private:
  std::map<std::int64_t, Rational> terms_;
};

/// Planar point whose coordinates may live in different quadratic fields.
struct PlanarPoint {
  QuadExt x;
  QuadExt y;
  std::string tag;
};

/// Exact lexicographic comparison on (x, y); tags are ignored.
int compare_points(const PlanarPoint& p, const PlanarPoint& q);

/// |q - p|^2 as an exact surd sum.
SurdSum squared_distance(const PlanarPoint& p, const PlanarPoint& q);
SurdSum squared_norm(const PlanarPoint& p);

/// Exact sign of |p|^2 - radius^2.
int compare_norm(const PlanarPoint& p, double radius);

/// Duplicate-free, canonically ordered collection of planar points sharing a
/// coordinate-field descriptor (dx, dy).
class PointSet {
 public:
  PointSet() = default;
  /// Retags rational coordinates into (dx, dy), sorts, and drops exact
  /// duplicates (the first occurrence, and its tag, wins).
  PointSet(std::vector<PlanarPoint> points, std::int64_t dx, std::int64_t dy);

  /// Infers (dx, dy) from the irrational coordinates present.
  static PointSet from_points(std::vector<PlanarPoint> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const PlanarPoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  const std::vector<PlanarPoint>& points() const { return points_; }
  std::int64_t dx() const { return dx_; }
  std::int64_t dy() const { return dy_; }

  bool contains(const QuadExt& x, const QuadExt& y) const;
  /// Tag of the point at (x, y), or nullptr.
  const std::string* tag_of(const QuadExt& x, const QuadExt& y) const;

  PointSet negated() const;
  /// Points with |p| <= radius.
  PointSet within(double radius) const;

  /// Coordinate-only set equality.
  bool same_points(const PointSet& other) const;
  /// Coordinates and tags.
  friend bool operator==(const PointSet& a, const PointSet& b);

 private:
  std::vector<PlanarPoint> points_;
  std::int64_t dx_ = 1;
  std::int64_t dy_ = 1;
};

}  // namespace delone
