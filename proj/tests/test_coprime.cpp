#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "delone/coprime.hpp"
#include "delone/error.hpp"

using namespace delone;

namespace {

// Nonzero lattice points with x^2 + y^2 <= r2.
long lattice_count(long r2) {
  long count = 0;
  const long m = static_cast<long>(std::sqrt(static_cast<double>(r2))) + 1;
  for (long x = -m; x <= m; ++x)
    for (long y = -m; y <= m; ++y)
      if ((x || y) && x * x + y * y <= r2) ++count;
  return count;
}

// Coprime count via Moebius inversion over the common divisor:
// #{gcd = 1, |v| <= R} = sum_k mu(k) * #{nonzero v, |v| <= R/k}.
long moebius_coprime_count(long r) {
  std::vector<int> mu(static_cast<std::size_t>(r) + 1, 1);
  std::vector<bool> composite(static_cast<std::size_t>(r) + 1, false);
  for (long p = 2; p <= r; ++p) {
    if (composite[p]) continue;
    for (long k = p; k <= r; k += p) {
      if (k > p) composite[k] = true;
      mu[k] = -mu[k];
    }
    for (long k = p * p; k <= r; k += p * p) mu[k] = 0;
  }
  long total = 0;
  for (long k = 1; k <= r; ++k)
    if (mu[k]) total += mu[k] * lattice_count((r * r) / (k * k));
  return total;
}

bool has(const PointSet& ps, long x, long y) {
  return ps.contains(QuadExt::integer(x), QuadExt::integer(y));
}

}  // namespace

TEST(Gcd, AxisConvention) {
  EXPECT_EQ(gcd_abs(0, 5), 5);
  EXPECT_EQ(gcd_abs(-4, 6), 2);
  EXPECT_EQ(gcd_abs(-7, 0), 7);
}

TEST(Coprime, SmallExamples) {
  const PointSet one = coprime_points(1);
  EXPECT_EQ(one.size(), 4u);
  EXPECT_TRUE(has(one, 1, 0) && has(one, -1, 0) && has(one, 0, 1) && has(one, 0, -1));
  const PointSet two = coprime_points(2);
  EXPECT_EQ(two.size(), 8u);
  EXPECT_TRUE(has(two, 1, 1) && has(two, -1, -1));
  EXPECT_FALSE(has(two, 2, 0));
  EXPECT_TRUE(coprime_points(0.5).empty());
}

TEST(Coprime, MatchesMoebiusCount) {
  for (long r : {1L, 2L, 7L, 30L, 113L, 200L})
    EXPECT_EQ(static_cast<long>(coprime_points(static_cast<double>(r)).size()),
              moebius_coprime_count(r))
        << r;
}

TEST(Coprime, DensityAt200) {
  const double expected = 6 / (M_PI * M_PI) * M_PI * 200 * 200;
  const double got = static_cast<double>(coprime_points(200).size());
  EXPECT_LT(std::abs(got - expected) / expected, 0.02);
}

TEST(Coprime, BoundaryIsInclusiveAndExact) {
  // 3-4-5 triangle: (3, 4) sits exactly on the radius-5 circle.
  EXPECT_TRUE(has(coprime_points(5), 3, 4));
  EXPECT_FALSE(has(coprime_points(4.999999), 3, 4));
}

TEST(GcdFiltered, Examples) {
  EXPECT_TRUE(gcd_filtered_points(1, 9.5).same_points(coprime_points(9.5)));
  const PointSet ps = gcd_filtered_points(2, 2);
  EXPECT_EQ(ps.size(), 12u);
  EXPECT_TRUE(has(ps, 2, 0) && has(ps, 0, -2));
  EXPECT_FALSE(has(ps, 2, 2));
  EXPECT_EQ(static_cast<long>(gcd_filtered_points(20, 20).size()), lattice_count(400));
}

TEST(GcdFiltered, DirectLoop) {
  for (long n : {1L, 2L, 3L}) {
    long expected = 0;
    for (long x = -12; x <= 12; ++x)
      for (long y = -12; y <= 12; ++y)
        if ((x || y) && x * x + y * y <= 144 && gcd_abs(x, y) <= n) ++expected;
    EXPECT_EQ(static_cast<long>(gcd_filtered_points(n, 12).size()), expected);
  }
}

TEST(Primes, Above) {
  EXPECT_EQ(primes_above(1, 5), (std::vector<long>{2, 3, 5, 7, 11}));
  EXPECT_EQ(primes_above(5, 3), (std::vector<long>{7, 11, 13}));
  EXPECT_EQ(primes_above(2, 1), (std::vector<long>{3}));
}

TEST(Crt, Solve) {
  const mpz_class x = crt_solve({2, 3, 2}, {3, 5, 7});
  EXPECT_EQ(x, 23);
  EXPECT_EQ(crt_solve({-1}, {7}), 6);
}

TEST(Hole, UnitExample) {
  const HoleCertificate c = crt_hole(1, 1);
  EXPECT_EQ(c.n, 3);
  EXPECT_EQ(c.primes, (std::vector<std::vector<long>>{{2, 3, 5}, {7, 11, 13}, {17, 19, 23}}));
  EXPECT_EQ(c.row_modulus(1), 30);
  EXPECT_EQ(c.row_modulus(2), 1001);
  EXPECT_EQ(c.row_modulus(3), 7429);
  EXPECT_EQ(c.column_modulus(1), 2 * 7 * 17);
  for (long i = 1; i <= 3; ++i) {
    mpz_class rx = (c.x + i) % c.row_modulus(i);
    mpz_class ry = (c.y + i) % c.column_modulus(i);
    EXPECT_EQ(rx, 0);
    EXPECT_EQ(ry, 0);
  }
  // least non-negative solutions
  EXPECT_GE(c.x, 0);
  EXPECT_LT(c.x, c.row_modulus(1) * c.row_modulus(2) * c.row_modulus(3));
  const HoleReport r = verify_hole(c);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.grid_ok);
  EXPECT_TRUE(r.ball_ok);
  EXPECT_EQ(r.grid_points_checked, 9u);
}

TEST(Hole, PrimeSelection) {
  const HoleCertificate c = crt_hole(1, 2);
  EXPECT_EQ(c.n, 5);
  EXPECT_EQ(c.primes.front().front(), 2);
  EXPECT_EQ(c.primes.back().back(), 97);
  EXPECT_EQ(crt_hole(5, 1).primes[0][0], 7);
  EXPECT_EQ(crt_hole(2, 1).primes[0][0], 3);
}

TEST(Hole, VerifiesAcrossParameters) {
  for (long n : {1L, 2L, 3L})
    for (double r : {1.0, 2.0}) {
      const HoleCertificate c = crt_hole(n, r);
      EXPECT_GT(c.n, 2 * r);
      EXPECT_TRUE(verify_hole(c).pass) << n << " " << r;
      // p_{i,j} | x+i and y+j
      for (long i = 1; i <= c.n; ++i)
        for (long j = 1; j <= c.n; ++j) {
          const long p = c.primes[i - 1][j - 1];
          EXPECT_GT(p, n);
          EXPECT_TRUE(mpz_divisible_ui_p(mpz_class(c.x + i).get_mpz_t(), p));
          EXPECT_TRUE(mpz_divisible_ui_p(mpz_class(c.y + j).get_mpz_t(), p));
        }
    }
}

TEST(Hole, BallContainsNoLowGcdPoint) {
  // Independent scan with big-integer gcds around the centre.
  const HoleCertificate c = crt_hole(1, 2);
  const double centre = c.center_offset();
  for (long i = -1; i <= c.n + 2; ++i)
    for (long j = -1; j <= c.n + 2; ++j) {
      const double dx = i - centre, dy = j - centre;
      if (dx * dx + dy * dy >= c.radius * c.radius) continue;
      mpz_class g;
      mpz_class a = c.x + i, b = c.y + j;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      EXPECT_GT(g, 1) << i << "," << j;
    }
  // Same statement through the window generator.
  const PointSet window = gcd_filtered_window(1, c.x, c.y, c.n + 2);
  for (const auto& p : window) {
    const double dx = to_double(p.x) - centre, dy = to_double(p.y) - centre;
    EXPECT_GE(dx * dx + dy * dy, c.radius * c.radius);
  }
}

TEST(Hole, PerturbedCertificateFails) {
  HoleCertificate c = crt_hole(1, 1);
  c.x -= 1;
  const HoleReport r = verify_hole(c);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.grid_ok);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_FALSE(r.message.empty());
}

TEST(Hole, DegenerateSingleCell) {
  const HoleCertificate c = crt_hole(1, 0.3);
  EXPECT_EQ(c.n, 1);
  ASSERT_EQ(c.primes.size(), 1u);
  EXPECT_EQ(c.primes[0][0], 2);
  EXPECT_TRUE(verify_hole(c).pass);
  HoleCertificate bad = c;
  bad.y += 1;  // 2 no longer divides y + 1
  EXPECT_FALSE(verify_hole(bad).pass);
}

TEST(Hole, MalformedCertificates) {
  auto expect_malformed = [](const HoleCertificate& c) {
    try {
      verify_hole(c);
      ADD_FAILURE() << "accepted malformed certificate";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedCertificate);
    }
  };
  HoleCertificate c = crt_hole(1, 1);
  HoleCertificate small_n = c;
  small_n.n = 2;
  expect_malformed(small_n);
  HoleCertificate dup = c;
  dup.primes[1][1] = dup.primes[0][0];
  expect_malformed(dup);
  HoleCertificate composite = c;
  composite.primes[2][2] = 25;
  expect_malformed(composite);
  HoleCertificate low = crt_hole(3, 1);
  low.max_gcd = 20;
  expect_malformed(low);
  HoleCertificate ragged = c;
  ragged.primes[0].pop_back();
  expect_malformed(ragged);
}

TEST(Hole, JsonRoundTrip) {
  const HoleCertificate c = crt_hole(2, 1);
  const HoleCertificate back = certificate_from_json(certificate_to_json(c));
  EXPECT_EQ(back.x, c.x);
  EXPECT_EQ(back.y, c.y);
  EXPECT_EQ(back.primes, c.primes);
  EXPECT_TRUE(verify_hole(back).pass);
  EXPECT_NE(certificate_to_json(c).find("\"x\": \""), std::string::npos);
  try {
    certificate_from_json(R"({"N": 1, "R": 1, "n": 3, "primes": [], "x": "12a", "y": "1"})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedCertificate);
  }
  EXPECT_THROW(certificate_from_json("{"), Error);
}

TEST(Hole, SizeEstimate) {
  const HoleCertificate c = crt_hole(1, 2);
  const double actual = static_cast<double>(c.x.get_str().size() + c.y.get_str().size());
  EXPECT_GE(estimated_certificate_digits(1, 2) + 2, actual);
  EXPECT_GT(estimated_certificate_digits(1, 10) / 2, 1000);
}
