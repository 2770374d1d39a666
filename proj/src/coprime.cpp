#include "delone/coprime.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "delone/error.hpp"

namespace delone {

namespace {

// floor(radius^2), exact.
long floor_square(double radius) {
  Rational r = rational_from_double(radius);
  Rational r2 = r * r;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), r2.get_num_mpz_t(), r2.get_den_mpz_t());
  if (!f.fits_slong_p()) throw Error(ErrorCode::kInvalidArgument, "radius too large");
  return f.get_si();
}

PointSet lattice_ball(long max_gcd, double radius) {
  std::vector<PlanarPoint> points;
  if (!(radius >= 1)) return PointSet(std::move(points), 1, 1);
  const long bound = floor_square(radius);
  const long extent = static_cast<long>(std::floor(radius));
  for (long p = -extent; p <= extent; ++p) {
    for (long q = -extent; q <= extent; ++q) {
      if (p * p + q * q > bound || (p == 0 && q == 0)) continue;
      if (gcd_abs(p, q) > max_gcd) continue;
      points.push_back({QuadExt::integer(p), QuadExt::integer(q), {}});
    }
  }
  return PointSet(std::move(points), 1, 1);
}

bool is_small_prime(long m) {
  if (m < 2) return false;
  for (long d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

}  // namespace

long gcd_abs(long a, long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

PointSet coprime_points(double radius) { return lattice_ball(1, radius); }

PointSet gcd_filtered_points(long max_gcd, double radius) {
  if (max_gcd < 1) throw Error(ErrorCode::kInvalidArgument, "max_gcd must be >= 1");
  return lattice_ball(max_gcd, radius);
}

PointSet gcd_filtered_window(long max_gcd, const mpz_class& origin_x,
                             const mpz_class& origin_y, long half_extent) {
  std::vector<PlanarPoint> points;
  mpz_class g, px, py;
  for (long i = -half_extent; i <= half_extent; ++i) {
    px = origin_x + i;
    for (long j = -half_extent; j <= half_extent; ++j) {
      py = origin_y + j;
      if (sgn(px) == 0 && sgn(py) == 0) continue;
      mpz_gcd(g.get_mpz_t(), px.get_mpz_t(), py.get_mpz_t());
      if (cmp(g, max_gcd) <= 0)
        points.push_back({QuadExt::integer(i), QuadExt::integer(j), {}});
    }
  }
  return PointSet(std::move(points), 1, 1);
}

std::vector<long> primes_above(long floor, std::size_t count) {
  std::vector<long> out;
  out.reserve(count);
  for (long m = std::max(2L, floor + 1); out.size() < count; ++m)
    if (is_small_prime(m)) out.push_back(m);
  return out;
}

mpz_class crt_solve(const std::vector<mpz_class>& residues,
                    const std::vector<mpz_class>& moduli) {
  if (residues.size() != moduli.size())
    throw Error(ErrorCode::kInvalidArgument, "residue/modulus count mismatch");
  mpz_class x = 0;
  mpz_class modulus = 1;
  mpz_class target, inv, t;
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    const mpz_class& m = moduli[k];
    // x + modulus * t ≡ r (mod m)  =>  t ≡ (r - x) * modulus^{-1} (mod m)
    target = residues[k] - x;
    mpz_fdiv_r(target.get_mpz_t(), target.get_mpz_t(), m.get_mpz_t());
    if (mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), m.get_mpz_t()) == 0)
      throw Error(ErrorCode::kInvalidArgument, "moduli are not pairwise coprime");
    t = target * inv;
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
    x += modulus * t;
    modulus *= m;
  }
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return x;
}

mpz_class HoleCertificate::row_modulus(long i) const {
  mpz_class q = 1;
  for (long p : primes.at(static_cast<std::size_t>(i - 1))) q *= p;
  return q;
}

mpz_class HoleCertificate::column_modulus(long j) const {
  mpz_class q = 1;
  for (const auto& row : primes) q *= row.at(static_cast<std::size_t>(j - 1));
  return q;
}

double estimated_certificate_digits(long max_gcd, double radius) {
  const long n = static_cast<long>(std::floor(2 * radius)) + 1;
  if (n > 400) return std::numeric_limits<double>::infinity();
  double digits = 0;
  for (long p : primes_above(max_gcd, static_cast<std::size_t>(n * n)))
    digits += std::log10(static_cast<double>(p));
  return 2 * digits;
}

HoleCertificate crt_hole(long max_gcd, double radius) {
  if (max_gcd < 1) throw Error(ErrorCode::kInvalidArgument, "max_gcd must be >= 1");
  if (!(radius > 0)) throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  HoleCertificate cert;
  cert.max_gcd = max_gcd;
  cert.radius = radius;
  cert.n = static_cast<long>(std::floor(2 * radius)) + 1;
  const auto n = static_cast<std::size_t>(cert.n);
  const auto flat = primes_above(max_gcd, n * n);
  cert.primes.assign(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cert.primes[i][j] = flat[i * n + j];

  std::vector<mpz_class> rx, mx, ry, my;
  for (long k = 1; k <= cert.n; ++k) {
    rx.emplace_back(-k);
    mx.push_back(cert.row_modulus(k));
    ry.emplace_back(-k);
    my.push_back(cert.column_modulus(k));
  }
  cert.x = crt_solve(rx, mx);
  cert.y = crt_solve(ry, my);
  return cert;
}

HoleReport verify_hole(const HoleCertificate& cert) {
  auto malformed = [](const std::string& why) {
    throw Error(ErrorCode::kMalformedCertificate, "malformed certificate: " + why);
  };
  if (cert.max_gcd < 1) malformed("N must be >= 1");
  if (!(cert.radius > 0)) malformed("R must be positive");
  if (cert.n < 1 || !(static_cast<double>(cert.n) > 2 * cert.radius)) malformed("n must exceed 2R");
  if (cert.primes.size() != static_cast<std::size_t>(cert.n)) malformed("prime matrix must have n rows");
  std::set<long> distinct;
  for (const auto& row : cert.primes) {
    if (row.size() != static_cast<std::size_t>(cert.n)) malformed("prime matrix must be n×n");
    for (long p : row) {
      if (p <= cert.max_gcd) malformed("prime " + std::to_string(p) + " does not exceed N");
      if (mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
        malformed(std::to_string(p) + " is not prime");
      if (!distinct.insert(p).second) malformed("prime " + std::to_string(p) + " repeated");
    }
  }

  HoleReport report;
  mpz_class g, px, py;
  auto fail = [&](long i, long j, const std::string& why) {
    report.counterexample = std::make_pair(i, j);
    report.counterexample_gcd = g.get_str();
    report.message = why;
  };

  report.grid_ok = true;
  for (long i = 1; i <= cert.n && report.grid_ok; ++i) {
    px = cert.x + i;
    for (long j = 1; j <= cert.n; ++j) {
      py = cert.y + j;
      ++report.grid_points_checked;
      const long p = cert.primes[i - 1][j - 1];
      mpz_gcd(g.get_mpz_t(), px.get_mpz_t(), py.get_mpz_t());
      if (!mpz_divisible_ui_p(px.get_mpz_t(), static_cast<unsigned long>(p)) ||
          !mpz_divisible_ui_p(py.get_mpz_t(), static_cast<unsigned long>(p))) {
        report.grid_ok = false;
        fail(i, j, "p_{" + std::to_string(i) + "," + std::to_string(j) + "} = " +
                       std::to_string(p) + " does not divide both coordinates");
        break;
      }
    }
  }

  // Open ball of radius R about (x + (n+1)/2, y + (n+1)/2). In doubled
  // coordinates: (2i - n - 1)^2 + (2j - n - 1)^2 < 4 R^2.
  report.ball_ok = true;
  const Rational four_r2 = 4 * rational_from_double(cert.radius) * rational_from_double(cert.radius);
  const double c = cert.center_offset();
  const long lo = static_cast<long>(std::floor(c - cert.radius)) - 1;
  const long hi = static_cast<long>(std::ceil(c + cert.radius)) + 1;
  for (long i = lo; i <= hi && report.ball_ok; ++i) {
    for (long j = lo; j <= hi; ++j) {
      const long di = 2 * i - cert.n - 1;
      const long dj = 2 * j - cert.n - 1;
      if (!(Rational(di * di + dj * dj) < four_r2)) continue;
      ++report.ball_points_checked;
      px = cert.x + i;
      py = cert.y + j;
      mpz_gcd(g.get_mpz_t(), px.get_mpz_t(), py.get_mpz_t());
      if (cmp(g, cert.max_gcd) <= 0) {
        report.ball_ok = false;
        if (report.grid_ok)
          fail(i, j, "point inside the ball has gcd " + g.get_str() + " <= N");
        break;
      }
    }
  }
  report.pass = report.grid_ok && report.ball_ok;
  if (report.pass) report.message = "certificate verified";
  return report;
}

std::string certificate_to_json(const HoleCertificate& cert, int indent) {
  nlohmann::ordered_json doc;
  doc["N"] = cert.max_gcd;
  doc["R"] = cert.radius;
  doc["n"] = cert.n;
  doc["primes"] = cert.primes;
  doc["x"] = cert.x.get_str();
  doc["y"] = cert.y.get_str();
  return doc.dump(indent);
}

HoleCertificate certificate_from_json(const std::string& text) {
  HoleCertificate cert;
  try {
    auto doc = nlohmann::json::parse(text);
    cert.max_gcd = doc.at("N").get<long>();
    cert.radius = doc.at("R").get<double>();
    cert.n = doc.at("n").get<long>();
    cert.primes = doc.at("primes").get<std::vector<std::vector<long>>>();
    cert.x = mpz_class(doc.at("x").get<std::string>());
    cert.y = mpz_class(doc.at("y").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedCertificate, std::string("bad certificate JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kMalformedCertificate, "bad integer in certificate");
  }
  return cert;
}

}  // namespace delone
