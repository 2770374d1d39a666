#include <gtest/gtest.h>

#include <random>

#include "delone/error.hpp"
#include "delone/exact.hpp"

using namespace delone;

namespace {

QuadExt q(long a, long b, std::int64_t d) { return QuadExt(a, b, d); }
QuadExt qs(const char* a, const char* b, std::int64_t d) {
  return QuadExt(Rational(a), Rational(b), d);
}

// floor(sqrt(d) * 10^digits) from integer square roots only.
mpz_class scaled_isqrt(long d, unsigned digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 2 * digits);
  mpz_class n = scale * d;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Digits-accurate decimal of a + b*sqrt(d) for integer a, b.
double oracle_value(long a, long b, long d) {
  const unsigned digits = 40;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpq_class v(mpz_class(a) * scale + mpz_class(b) * scaled_isqrt(d, digits), scale);
  return v.get_d();
}

QuadExt random_quad(std::mt19937_64& rng, std::int64_t d) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  return QuadExt(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), d);
}

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational r = make_rational(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(make_rational(0, 7).get_den(), 1);
  EXPECT_THROW(make_rational(1, 0), Error);
  EXPECT_EQ(rational_from_double(0.5), Rational(1, 2));
}

TEST(Squarefree, Split) {
  EXPECT_EQ(squarefree_split(12).core, 3);
  EXPECT_EQ(squarefree_split(12).root, 2);
  EXPECT_EQ(squarefree_split(1).core, 1);
  EXPECT_EQ(squarefree_split(49).core, 1);
  EXPECT_EQ(squarefree_split(49).root, 7);
}

TEST(QuadExt, CanonicalisesRadicand) {
  // sqrt(8) = 2 sqrt(2)
  EXPECT_EQ(QuadExt(0, 1, 8), q(0, 2, 2));
  // sqrt(9) folds into the rational part.
  QuadExt three(0, 1, 9);
  EXPECT_EQ(three, QuadExt::integer(3));
  EXPECT_EQ(three.d(), 1);
  EXPECT_THROW(QuadExt(0, 1, 0), Error);
  EXPECT_THROW(QuadExt(0, 1, -2), Error);
}

TEST(QuadExt, CanonicalisationIdempotent) {
  std::mt19937_64 rng(7);
  for (std::int64_t d : {2, 3, 5, 6, 8, 12, 18}) {
    for (int k = 0; k < 20; ++k) {
      QuadExt u = random_quad(rng, d);
      QuadExt again(u.a(), u.b(), u.d());
      EXPECT_EQ(u, again);
    }
  }
}

TEST(QuadExt, AddExamples) {
  EXPECT_EQ(q(1, 0, 2) + q(0, 1, 2), q(1, 1, 2));
  EXPECT_EQ(qs("1/2", "1", 3) + qs("1/2", "-1", 3), q(1, 0, 3));
  EXPECT_EQ(q(-1, 1, 2) + q(-1, 1, 2), q(-2, 2, 2));
}

TEST(QuadExt, MulExamples) {
  EXPECT_EQ(q(0, 1, 2) * q(0, 1, 2), q(2, 0, 2));
  EXPECT_EQ(q(1, 1, 3) * q(1, -1, 3), q(-2, 0, 3));
  EXPECT_EQ(qs("1/2", "1/3", 5) * q(0, 1, 5), qs("5/3", "1/2", 5));
}

TEST(QuadExt, FieldMismatch) {
  try {
    (void)(q(0, 1, 2) + q(0, 1, 3));
    FAIL() << "expected a field mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFieldMismatch);
  }
  EXPECT_THROW((void)(q(0, 1, 2) * q(1, 1, 5)), Error);
  // Rationals adapt to either field.
  EXPECT_EQ(QuadExt::integer(1) + q(0, 1, 3), q(1, 1, 3));
}

TEST(QuadExt, Division) {
  const QuadExt u = q(3, 2, 2);
  EXPECT_EQ(u / u, QuadExt::integer(1, 2));
  EXPECT_EQ((q(1, 1, 2) / q(1, -1, 2)), q(-3, -2, 2));
  EXPECT_THROW((void)(u / QuadExt::integer(0, 2)), Error);
}

TEST(QuadExt, RingAxioms) {
  std::mt19937_64 rng(2024);
  for (std::int64_t d : {2, 3, 5, 7}) {
    for (int k = 0; k < 200; ++k) {
      QuadExt a = random_quad(rng, d), b = random_quad(rng, d), c = random_quad(rng, d);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a - a, QuadExt::integer(0, d));
      EXPECT_EQ((a * a.conjugate()).a(), a.norm());
    }
  }
}

TEST(QuadSign, Examples) {
  EXPECT_EQ(quad_sign(q(1, -1, 2)), -1);
  EXPECT_EQ(quad_sign(q(0, 0, 3)), 0);
  EXPECT_EQ(quad_sign(q(3, -2, 2)), 1);
  EXPECT_EQ(quad_sign(q(-3, 2, 2)), -1);
  // 99 - 70 sqrt(2) ~ 0.00505
  EXPECT_EQ(quad_sign(q(99, -70, 2)), 1);
}

TEST(QuadSign, AgreesWithHighPrecisionFloat) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> big(-100000, 100000);
  const std::int64_t fields[] = {2, 3, 5, 6, 7, 10, 11, 13};
  int checked = 0;
  for (int k = 0; k < 10000; ++k) {
    const std::int64_t d = fields[k % 8];
    QuadExt u(Rational(big(rng), 1 + (k % 97)), Rational(big(rng), 1 + (k % 89)), d);
    FloatEnclosure f = to_float(u, 113);
    BigFloat lo(200), hi(200);
    mpfr_sub(lo.raw(), f.value.raw(), f.error.raw(), MPFR_RNDD);
    mpfr_add(hi.raw(), f.value.raw(), f.error.raw(), MPFR_RNDU);
    if (lo.sign() > 0) {
      EXPECT_EQ(quad_sign(u), 1);
      ++checked;
    } else if (hi.sign() < 0) {
      EXPECT_EQ(quad_sign(u), -1);
      ++checked;
    }
  }
  EXPECT_GE(checked, 9900);
}

TEST(QuadCompare, Ordering) {
  EXPECT_LT(quad_compare(q(1, 0, 2), q(0, 1, 2)), 0);
  EXPECT_EQ(quad_compare(q(1, 1, 2), q(1, 1, 2)), 0);
  EXPECT_GT(quad_compare(q(0, 1, 3), QuadExt::integer(1)), 0);
}

TEST(QuadFloor, Values) {
  EXPECT_EQ(quad_floor(q(0, 1, 2)), 1);
  EXPECT_EQ(quad_floor(q(0, -1, 2)), -2);
  EXPECT_EQ(quad_floor(QuadExt::integer(-3)), -3);
  EXPECT_EQ(quad_floor(q(99, -70, 2)), 0);
  EXPECT_EQ(quad_floor(q(-99, 70, 2)), -1);
  EXPECT_EQ(quad_floor(qs("1/2", "1/2", 5)), 1);
}

TEST(ToFloat, Examples) {
  FloatEnclosure f = to_float(q(-1, 1, 2), 53);
  EXPECT_NEAR(f.approx(), oracle_value(-1, 1, 2), 1e-15);
  EXPECT_LE(f.error_upper(), 1e-15);
  EXPECT_LE(std::abs(f.approx() - oracle_value(-1, 1, 2)), f.error_upper() + 1e-17);

  FloatEnclosure z = to_float(q(0, 0, 2), 53);
  EXPECT_EQ(z.approx(), 0.0);
  EXPECT_EQ(z.error_upper(), 0.0);

  EXPECT_NEAR(to_float(q(-1, 1, 3), 53).approx(), 0.7320508075688772, 1e-15);
  EXPECT_THROW(to_float(q(0, 1, 2), 23), Error);
}

TEST(ToFloat, ErrorBoundContract) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> a(-1000, 1000);
  for (int bits : {24, 53, 113, 300}) {
    for (int k = 0; k < 50; ++k) {
      const long x = a(rng), y = a(rng);
      const long d = (k % 2) ? 2 : 7;
      FloatEnclosure f = to_float(q(x, y, d), bits);
      // err <= 2^(1-bits) (1 + |value|)
      const double bound = std::ldexp(1.0, 1 - bits) * (1 + std::abs(f.approx()));
      EXPECT_LE(f.error_upper(), bound * (1 + 1e-12));
      EXPECT_NEAR(f.approx(), oracle_value(x, y, d), std::max(bound, 1e-16 * std::abs(f.approx())) * 4);
    }
  }
}

TEST(ToDouble, RationalRoundsToNearest) {
  EXPECT_EQ(to_double(QuadExt::rational(Rational(1, 100))), 0.01);
  EXPECT_EQ(to_double(QuadExt::rational(Rational(1, 3), 2)), 1.0 / 3.0);
}

TEST(Text, CanonicalForm) {
  EXPECT_EQ(to_string(q(-1, 1, 2)), "-1/1+1/1*sqrt(2)");
  EXPECT_EQ(to_string(q(1, -1, 2)), "1/1-1/1*sqrt(2)");
  EXPECT_EQ(to_string(QuadExt::integer(3)), "3/1+0/1*sqrt(1)");
}

TEST(Text, ParseShorthands) {
  EXPECT_EQ(parse_quad("3"), QuadExt::integer(3));
  EXPECT_EQ(parse_quad("-1/2"), QuadExt::rational(Rational(-1, 2)));
  EXPECT_EQ(parse_quad("0.5"), QuadExt::rational(Rational(1, 2)));
  EXPECT_EQ(parse_quad("sqrt(2)"), q(0, 1, 2));
  EXPECT_EQ(parse_quad("-1+sqrt(2)"), q(-1, 1, 2));
  EXPECT_EQ(parse_quad("2*sqrt(3)"), q(0, 2, 3));
  EXPECT_EQ(parse_quad("1/1+-1/1*sqrt(2)"), q(1, -1, 2));
  EXPECT_EQ(parse_quad("1/2+1/2*sqrt(5)"), qs("1/2", "1/2", 5));
}

TEST(Text, RoundTrip) {
  std::mt19937_64 rng(3);
  for (std::int64_t d : {1, 2, 3, 5, 30}) {
    for (int k = 0; k < 30; ++k) {
      QuadExt u = d == 1 ? QuadExt::rational(random_quad(rng, 2).a()) : random_quad(rng, d);
      EXPECT_EQ(parse_quad(to_string(u)), u);
    }
  }
}

TEST(Text, ParseErrors) {
  for (const char* bad : {"", "abc", "1/0", "sqrt(", "sqrt(2", "1+sqrt(x)", "1/2/3", "sqrt(-2)"}) {
    try {
      (void)parse_quad(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << "input: " << bad;
    }
  }
}

TEST(SurdSum, ExactZeroAcrossFields) {
  // (sqrt2 + sqrt3)^2 - 5 - 2 sqrt6 = 0
  SurdSum s = SurdSum::product(q(0, 1, 2) + QuadExt::integer(0, 2), q(0, 1, 2));
  s += SurdSum::product(q(0, 1, 3), q(0, 1, 3));
  s += SurdSum::product(q(0, 2, 2), q(0, 1, 3));
  SurdSum rhs;
  rhs.add_term(5, 1);
  rhs.add_term(2, 6);
  s -= rhs;
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.sign(), 0);
}

TEST(SurdSum, SignOfNearCancellation) {
  // sqrt2 + sqrt3 - sqrt(10) ~ -0.016;  sqrt(10) is not in the span of
  // the other two so no exact cancellation is possible.
  SurdSum s;
  s.add_term(1, 2);
  s.add_term(1, 3);
  s.add_term(-1, 10);
  EXPECT_EQ(s.sign(), -1);
  // 5 sqrt2 - 7 ~ 0.071
  SurdSum t;
  t.add_term(5, 2);
  t.add_term(-7, 1);
  EXPECT_EQ(t.sign(), 1);
  SurdSum u;
  u.add_term(-5, 2);
  u.add_term(7, 1);
  EXPECT_EQ(u.sign(), -1);
}

TEST(SurdSum, ProductNormalisesRadicands) {
  SurdSum s = SurdSum::product(q(0, 1, 6), q(0, 1, 15));  // sqrt90 = 3 sqrt10
  ASSERT_EQ(s.terms().size(), 1u);
  EXPECT_EQ(s.terms().begin()->first, 10);
  EXPECT_EQ(s.terms().begin()->second, 3);
}

TEST(Points, CompareAndDistance) {
  PlanarPoint a{q(0, 0, 2), q(0, 0, 3), {}};
  PlanarPoint b{q(-1, 1, 2), q(-1, 1, 3), {}};
  EXPECT_LT(compare_points(a, b), 0);
  EXPECT_EQ(compare_points(a, a), 0);
  // |b|^2 = (3 - 2 sqrt2) + (4 - 2 sqrt3)
  SurdSum expected;
  expected.add_term(7, 1);
  expected.add_term(-2, 2);
  expected.add_term(-2, 3);
  SurdSum diff = squared_distance(a, b);
  diff -= expected;
  EXPECT_TRUE(diff.is_zero());
  EXPECT_EQ(compare_norm(b, 0.85), -1);
  EXPECT_EQ(compare_norm(b, 0.84), 1);
  PlanarPoint unit{QuadExt::integer(1), QuadExt::integer(0), {}};
  EXPECT_EQ(compare_norm(unit, 1.0), 0);
}

TEST(PointSet, SortsDedupsAndKeepsFirstTag) {
  std::vector<PlanarPoint> pts = {
      {QuadExt::integer(1), QuadExt::integer(0), "first"},
      {QuadExt::integer(0), QuadExt::integer(1), "b"},
      {QuadExt::integer(1), QuadExt::integer(0), "second"},
      {QuadExt::integer(-1), QuadExt::integer(5), "c"},
  };
  PointSet ps(pts, 1, 1);
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_EQ(ps[0].x, QuadExt::integer(-1));
  EXPECT_EQ(*ps.tag_of(QuadExt::integer(1), QuadExt::integer(0)), "first");
  EXPECT_TRUE(ps.contains(QuadExt::integer(0), QuadExt::integer(1)));
  EXPECT_FALSE(ps.contains(QuadExt::integer(0), QuadExt::integer(2)));
  EXPECT_EQ(ps.within(1.0).size(), 2u);
  EXPECT_TRUE(ps.negated().negated().same_points(ps));
}

TEST(PointSet, RetagsRationalCoordinates) {
  std::vector<PlanarPoint> pts = {
      {QuadExt::integer(1), QuadExt::integer(0), {}},
      {q(-1, 1, 2), q(-1, 1, 3), {}},
  };
  PointSet ps = PointSet::from_points(pts);
  EXPECT_EQ(ps.dx(), 2);
  EXPECT_EQ(ps.dy(), 3);
  for (const auto& p : ps) {
    EXPECT_EQ(p.x.d(), 2);
    EXPECT_EQ(p.y.d(), 3);
  }
  std::vector<PlanarPoint> clash = {{q(0, 1, 2), QuadExt::integer(0), {}},
                                    {q(0, 1, 5), QuadExt::integer(0), {}}};
  EXPECT_THROW(PointSet::from_points(clash), Error);
}
