#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delone/exact.hpp"

namespace delone {

/// gcd(|a|, |b|) with gcd(k, 0) = |k|.
long gcd_abs(long a, long b);

/// Nonzero (p, q) with gcd(p, q) = 1 and p^2 + q^2 <= radius^2.
PointSet coprime_points(double radius);

/// Nonzero integer points of the closed radius-ball with gcd <= max_gcd.
PointSet gcd_filtered_points(long max_gcd, double radius);

/// Offsets (i, j) with |i|, |j| <= half_extent such that
/// (origin_x + i, origin_y + j) is nonzero with gcd <= max_gcd. Coordinates
/// are relative to the origin so that huge CRT centres stay representable.
PointSet gcd_filtered_window(long max_gcd, const mpz_class& origin_x,
                             const mpz_class& origin_y, long half_extent);

/// First `count` primes strictly greater than `floor`, ascending.
std::vector<long> primes_above(long floor, std::size_t count);

/// Least non-negative x with x ≡ residues[k] (mod moduli[k]); moduli pairwise
/// coprime.
mpz_class crt_solve(const std::vector<mpz_class>& residues,
                    const std::vector<mpz_class>& moduli);

/// Witness that an n×n block of integer points has every gcd > max_gcd.
struct HoleCertificate {
  long max_gcd = 1;             ///< gcd bound N
  double radius = 1;            ///< target empty-ball radius R
  long n = 3;                   ///< block side, n > 2R
  std::vector<std::vector<long>> primes;  ///< primes[i-1][j-1] divides x+i and y+j
  mpz_class x;
  mpz_class y;

  mpz_class row_modulus(long i) const;     ///< q_i, 1-based
  mpz_class column_modulus(long j) const;  ///< q'_j, 1-based
  /// Centre of the empty ball, (x + (n+1)/2, y + (n+1)/2), as an offset from (x, y).
  double center_offset() const { return (static_cast<double>(n) + 1) / 2; }
};

/// Upper estimate of the decimal digits of x plus those of y for crt_hole(N, R).
double estimated_certificate_digits(long max_gcd, double radius);

/// Builds the certificate: n = floor(2R) + 1, the first n² primes above N in
/// row-major order, least non-negative CRT solutions for x and y.
HoleCertificate crt_hole(long max_gcd, double radius);

struct HoleReport {
  bool pass = false;
  /// Grid check: every (x+i, y+j) is divisible by p_{i,j}.
  bool grid_ok = false;
  /// Ball check: no point with gcd <= N strictly within R of the centre.
  bool ball_ok = false;
  std::size_t grid_points_checked = 0;
  std::size_t ball_points_checked = 0;
  /// First failing point as an offset (i, j) from (x, y), with its gcd.
  std::optional<std::pair<long, long>> counterexample;
  std::string counterexample_gcd;
  std::string message;
};

/// Validates the certificate structure (kMalformedCertificate) and then checks
/// both the grid and the empty ball independently of how it was built.
HoleReport verify_hole(const HoleCertificate& cert);

std::string certificate_to_json(const HoleCertificate& cert, int indent = 2);
HoleCertificate certificate_from_json(const std::string& text);

}  // namespace delone
