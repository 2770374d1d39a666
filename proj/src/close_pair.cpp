#include "delone/close_pair.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "delone/error.hpp"

namespace delone {

namespace {

mpz_class isqrt(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class round_nearest(const QuadExt& u) {
  return quad_floor(u + QuadExt::rational(Rational(1, 2), u.d()));
}

QuadExt abs_value(const QuadExt& u) { return quad_sign(u) < 0 ? -u : u; }

// |u| < eps with eps a double, exactly.
bool below(const QuadExt& u, double eps) {
  return quad_compare(abs_value(u), QuadExt::rational(rational_from_double(eps), u.d())) < 0;
}

}  // namespace

QuadIrrational QuadIrrational::from_value(const QuadExt& value) {
  if (value.is_rational())
    throw Error(ErrorCode::kRatioRational, "value " + to_string(value) + " is rational");
  // value = (A + B sqrt(d)) / L with integers A, B and L = lcm of denominators.
  mpz_class L;
  mpz_lcm(L.get_mpz_t(), value.a().get_den_mpz_t(), value.b().get_den_mpz_t());
  mpz_class A = value.a().get_num() * (L / value.a().get_den());
  mpz_class B = value.b().get_num() * (L / value.b().get_den());
  QuadIrrational out;
  out.D = B * B * value.d();
  if (B > 0) {
    out.P = A;
    out.Q = L;
  } else {
    out.P = -A;
    out.Q = -L;
  }
  mpz_class rem = out.D - out.P * out.P;
  if (!mpz_divisible_p(rem.get_mpz_t(), out.Q.get_mpz_t())) {
    mpz_class aq = abs(out.Q);
    out.P *= aq;
    out.D *= out.Q * out.Q;
    out.Q *= aq;
  }
  return out;
}

QuadExt QuadIrrational::value() const {
  if (D > 1'000'000'000'000L) {
    // sqrt(D) = root * sqrt(core); pull small square factors out first.
    mpz_class root = 1, core = D;
    for (unsigned long p = 2; p * p <= 1'000'000; ++p) {
      mpz_class pp = p * p;
      while (mpz_divisible_p(core.get_mpz_t(), pp.get_mpz_t())) {
        core /= pp;
        root *= p;
      }
    }
    if (!core.fits_slong_p())
      throw Error(ErrorCode::kInvalidArgument, "radicand too large");
    return QuadExt(make_rational(P, Q), make_rational(root, Q), core.get_si());
  }
  return QuadExt(make_rational(P, Q), make_rational(1, Q), D.get_si());
}

const mpz_class& ContinuedFraction::term(std::size_t k) const {
  if (k == 0) return a0;
  std::size_t i = k - 1;
  if (i < preperiod.size()) return preperiod[i];
  i -= preperiod.size();
  return period[i % period.size()];
}

ContinuedFraction cf_expand(const QuadIrrational& x, std::size_t max_terms) {
  if (sgn(x.D) <= 0 || mpz_perfect_square_p(x.D.get_mpz_t()))
    throw Error(ErrorCode::kInvalidArgument, "D must be a positive non-square");
  if (sgn(x.Q) == 0) throw Error(ErrorCode::kInvalidArgument, "Q must be nonzero");
  mpz_class rem = x.D - x.P * x.P;
  if (!mpz_divisible_p(rem.get_mpz_t(), x.Q.get_mpz_t()))
    throw Error(ErrorCode::kInvalidArgument, "Q must divide D - P^2");

  const mpz_class s = isqrt(x.D);
  mpz_class P = x.P, Q = x.Q;
  std::map<std::pair<mpz_class, mpz_class>, std::size_t> seen;
  std::vector<mpz_class> terms;
  while (terms.size() < max_terms) {
    auto [it, fresh] = seen.try_emplace({P, Q}, terms.size());
    if (!fresh) {
      const std::size_t start = it->second;
      ContinuedFraction cf;
      cf.a0 = terms[0];
      if (start == 0) {
        cf.period.assign(terms.begin() + 1, terms.end());
        cf.period.push_back(terms[0]);
      } else {
        cf.preperiod.assign(terms.begin() + 1, terms.begin() + static_cast<long>(start));
        cf.period.assign(terms.begin() + static_cast<long>(start), terms.end());
      }
      return cf;
    }
    // floor((P + sqrt D)/Q): sqrt D lies strictly between s and s + 1.
    mpz_class a = sgn(Q) > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
    terms.push_back(a);
    P = a * Q - P;
    Q = (x.D - P * P) / Q;
  }
  throw Error(ErrorCode::kIncompleteExpansion,
              "period not closed within " + std::to_string(max_terms) + " terms");
}

std::vector<std::pair<mpz_class, mpz_class>> convergents(const ContinuedFraction& cf,
                                                         std::size_t k) {
  std::vector<std::pair<mpz_class, mpz_class>> out;
  mpz_class p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  for (std::size_t i = 0; i <= k; ++i) {
    const mpz_class& a = cf.term(i);
    mpz_class p = a * p_prev + p_prev2;
    mpz_class q = a * q_prev + q_prev2;
    out.emplace_back(p, q);
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }
  return out;
}

InhomSolution inhom_approx(const QuadIrrational& lambda, const Rational& c, double eps) {
  QuadExt value = lambda.value();
  return inhom_approx(value, QuadExt::rational(c, value.d()), eps);
}

InhomSolution inhom_approx(const QuadExt& lambda, const QuadExt& c, double eps) {
  if (!(eps > 0) || !std::isfinite(eps))
    throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  if (lambda.is_rational())
    throw Error(ErrorCode::kRatioRational, "lambda must be irrational");
  const std::int64_t d = common_field(lambda, c);
  const QuadExt lam = lambda.in_field(d);
  auto residual_of = [&](const mpz_class& mp) {
    // c - mp * lambda, whose distance to Z we want below eps.
    return c - QuadExt::rational(Rational(mp), d) * lam;
  };
  auto finish = [&](const mpz_class& mp) {
    const mpz_class m = -round_nearest(residual_of(mp));
    return InhomSolution{m, mp};
  };
  auto satisfies = [&](const InhomSolution& s) {
    return below(c + QuadExt::rational(Rational(s.m), d) - QuadExt::rational(Rational(s.mp), d) * lam,
                 eps);
  };

  const ContinuedFraction cf = cf_expand(QuadIrrational::from_value(lam));
  const Rational target_q = rational_from_double(2.0 / eps);
  std::vector<std::pair<mpz_class, mpz_class>> conv;
  for (std::size_t k = 1;; ++k) {
    conv = convergents(cf, k);
    if (Rational(conv.back().second) >= target_q) break;
  }

  // Greedy reduction by delta_i = q_i lambda - p_i, |delta_i| decreasing.
  QuadExt r = c - QuadExt::rational(Rational(round_nearest(c)), d);
  mpz_class mp = 0;
  for (const auto& [p_i, q_i] : conv) {
    if (below(r, eps)) break;
    QuadExt delta = QuadExt::rational(Rational(q_i), d) * lam - QuadExt::rational(Rational(p_i), d);
    mpz_class b = round_nearest(r / delta);
    r = r - QuadExt::rational(Rational(b), d) * delta;
    mp += b * q_i;
  }
  InhomSolution sol = finish(mp);
  if (satisfies(sol)) return sol;

  const mpz_class limit = 2 * conv.back().second;
  for (mpz_class k = 0; k <= limit; ++k) {
    for (const mpz_class& cand : {k, mpz_class(-k)}) {
      InhomSolution s = finish(cand);
      if (satisfies(s)) return s;
    }
  }
  throw std::logic_error("inhomogeneous approximation failed");
}

Vec2 operator+(const Vec2& u, const Vec2& v) { return {u.x + v.x, u.y + v.y}; }
Vec2 operator-(const Vec2& u, const Vec2& v) { return {u.x - v.x, u.y - v.y}; }
Vec2 operator*(const QuadExt& s, const Vec2& v) { return {s * v.x, s * v.y}; }
QuadExt dot(const Vec2& u, const Vec2& v) { return u.x * v.x + u.y * v.y; }
QuadExt cross(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }

Decomposition decompose(const Vec2& h, const Vec2& gamma) {
  const QuadExt gg = dot(gamma, gamma);
  if (gg.is_zero()) throw Error(ErrorCode::kInvalidArgument, "direction must be nonzero");
  const QuadExt t = dot(h, gamma) / gg;
  Vec2 along = t * gamma;
  return {along, h - along};
}

std::pair<std::array<double, 2>, std::array<double, 2>> decompose(std::array<double, 2> h,
                                                                  std::array<double, 2> gamma) {
  const double gg = gamma[0] * gamma[0] + gamma[1] * gamma[1];
  if (gg == 0) throw Error(ErrorCode::kInvalidArgument, "direction must be nonzero");
  const double t = (h[0] * gamma[0] + h[1] * gamma[1]) / gg;
  std::array<double, 2> along{t * gamma[0], t * gamma[1]};
  return {along, {h[0] - along[0], h[1] - along[1]}};
}

namespace {

// Upper bound on sqrt(u) for u >= 0 in a quadratic field.
double sqrt_upper(const QuadExt& u) {
  FloatEnclosure enc = to_float(u, 113);
  BigFloat hi(113);
  mpfr_add(hi.raw(), enc.value.raw(), enc.error.raw(), MPFR_RNDU);
  mpfr_sqrt(hi.raw(), hi.raw(), MPFR_RNDU);
  return hi.to_double(MPFR_RNDU);
}

// Enclosure of sqrt(u) as (midpoint, radius).
std::pair<double, double> sqrt_enclosure(const QuadExt& u) {
  FloatEnclosure enc = to_float(u, 113);
  BigFloat lo(113), hi(113);
  mpfr_sub(lo.raw(), enc.value.raw(), enc.error.raw(), MPFR_RNDD);
  if (lo.sign() < 0) mpfr_set_zero(lo.raw(), 1);
  mpfr_sqrt(lo.raw(), lo.raw(), MPFR_RNDD);
  mpfr_add(hi.raw(), enc.value.raw(), enc.error.raw(), MPFR_RNDU);
  mpfr_sqrt(hi.raw(), hi.raw(), MPFR_RNDU);
  const double l = lo.to_double(MPFR_RNDD);
  const double h = hi.to_double(MPFR_RNDU);
  const double mid = l + (h - l) / 2;
  return {mid, std::nextafter(std::max(h - mid, mid - l), INFINITY)};
}

void require_nonzero(const Vec2& v, const char* what) {
  if (v.x.is_zero() && v.y.is_zero())
    throw Error(ErrorCode::kPrecondition, std::string(what) + " must be nonzero");
}

std::int64_t shared_field(std::initializer_list<const QuadExt*> values) {
  std::int64_t d = 1;
  for (const QuadExt* v : values) d = common_field(QuadExt::integer(0, d), *v);
  return d;
}

Vec2 in_field(const Vec2& v, std::int64_t d) { return {v.x.in_field(d), v.y.in_field(d)}; }

}  // namespace

ClosePairResult close_pair(const Cylinder& ci_in, const Cylinder& cj_in, double r) {
  if (!(r > 0) || !std::isfinite(r)) throw Error(ErrorCode::kInvalidArgument, "r must be positive");
  const std::int64_t d =
      shared_field({&ci_in.circumference.x, &ci_in.circumference.y, &ci_in.crossing.x,
                    &ci_in.crossing.y, &cj_in.circumference.x, &cj_in.circumference.y,
                    &cj_in.crossing.x, &cj_in.crossing.y});
  const Vec2 l = in_field(ci_in.circumference, d);
  const Vec2 lp = in_field(cj_in.circumference, d);
  const Vec2 h = in_field(ci_in.crossing, d);
  const Vec2 hp = in_field(cj_in.crossing, d);
  require_nonzero(l, "circumference l");
  require_nonzero(lp, "circumference l'");
  if (!(ci_in.width > 0) || !(cj_in.width > 0))
    throw Error(ErrorCode::kPrecondition, "cylinder widths must be positive");
  if (!cross(l, lp).is_zero())
    throw Error(ErrorCode::kPrecondition, "circumferences are not parallel");

  ClosePairResult out;
  out.lambda = l.x.is_zero() ? lp.y / l.y : lp.x / l.x;
  if (out.lambda.is_rational())
    throw Error(ErrorCode::kRatioRational,
                "ratio rational: l'/l = " + to_string(out.lambda));

  const QuadExt ll = dot(l, l);
  const Decomposition di = decompose(h, l);
  const Decomposition dj = decompose(hp, l);
  const QuadExt a = dot(h, l) / ll;
  const QuadExt b = dot(hp, l) / ll;
  out.c = a - b;

  for (const auto& [dec, width] : {std::pair{di, ci_in.width}, std::pair{dj, cj_in.width}}) {
    const double perp = std::sqrt(to_double(dot(dec.perp, dec.perp)));
    if (std::abs(perp - width) > 1e-9 * std::max(1.0, width))
      throw Error(ErrorCode::kPrecondition,
                  "crossing holonomy does not cross the cylinder once: perpendicular part " +
                      std::to_string(perp) + " vs width " + std::to_string(width));
  }

  out.widths_within_bound = ci_in.width <= r / 4 && cj_in.width <= r / 4;
  const Rational rq = rational_from_double(r);
  const Vec2 offset = di.perp - dj.perp;
  const QuadExt quarter_r2 = QuadExt::rational(rq * rq / 4, d);
  if (quad_compare(dot(offset, offset), quarter_r2) >= 0) {
    throw Error(ErrorCode::kPrecondition,
                out.widths_within_bound
                    ? "perpendicular offset of the crossings reaches r/2"
                    : "cylinder widths exceed r/4 and the crossings are not within r/2 "
                      "perpendicular to the circumference");
  }

  out.eps = std::nextafter(r / (2 * sqrt_upper(ll)), 0.0);
  const InhomSolution sol = inhom_approx(out.lambda, out.c, out.eps);
  out.n0 = sol.m;
  out.n0p = sol.mp;
  out.v1 = h + QuadExt::rational(Rational(out.n0), d) * l;
  out.v2 = hp + QuadExt::rational(Rational(out.n0p), d) * lp;

  const Vec2 gap = out.v1 - out.v2;
  const QuadExt gap2 = dot(gap, gap);
  if (quad_compare(gap2, QuadExt::rational(rq * rq, d)) >= 0)
    throw std::logic_error("close pair verification failed");
  std::tie(out.dist, out.dist_error) = sqrt_enclosure(gap2);
  return out;
}

namespace {

Vec2 vec_from_json(const nlohmann::json& arr) {
  if (!arr.is_array() || arr.size() != 2)
    throw Error(ErrorCode::kParse, "vector must be a two-element array");
  auto coord = [](const nlohmann::json& v) {
    if (v.is_string()) return parse_quad(v.get<std::string>());
    if (v.is_number_integer()) return QuadExt::integer(v.get<long>());
    throw Error(ErrorCode::kParse, "coordinates must be exact-number strings");
  };
  return {coord(arr[0]), coord(arr[1])};
}

Cylinder cylinder_from_json(const nlohmann::json& obj) {
  if (!obj.is_object()) throw Error(ErrorCode::kParse, "cylinder must be an object");
  Cylinder c;
  c.circumference = vec_from_json(obj.at("circumference"));
  c.crossing = vec_from_json(obj.at("crossing"));
  const auto& w = obj.at("width");
  if (w.is_number()) {
    c.width = w.get<double>();
  } else if (w.is_string()) {
    c.width = std::stod(w.get<std::string>());
  } else {
    throw Error(ErrorCode::kParse, "width must be a number");
  }
  return c;
}

nlohmann::ordered_json vec_to_json(const Vec2& v) {
  return nlohmann::ordered_json::array({to_string(v.x), to_string(v.y)});
}

}  // namespace

std::pair<Cylinder, Cylinder> cylinders_from_json(const std::string& text) {
  try {
    auto doc = nlohmann::json::parse(text);
    return {cylinder_from_json(doc.at("ci")), cylinder_from_json(doc.at("cj"))};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad cylinder config: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::kParse, "bad width in cylinder config");
  }
}

std::string close_pair_to_json(const ClosePairResult& res, double r, int indent) {
  nlohmann::ordered_json doc;
  doc["r"] = r;
  doc["lambda"] = to_string(res.lambda);
  doc["c"] = to_string(res.c);
  doc["eps"] = res.eps;
  doc["n0"] = res.n0.get_str();
  doc["n0p"] = res.n0p.get_str();
  doc["v1"] = vec_to_json(res.v1);
  doc["v2"] = vec_to_json(res.v2);
  doc["v1_float"] = {to_double(res.v1.x), to_double(res.v1.y)};
  doc["v2_float"] = {to_double(res.v2.x), to_double(res.v2.y)};
  doc["dist"] = res.dist;
  doc["dist_error"] = res.dist_error;
  doc["widths_within_bound"] = res.widths_within_bound;
  return doc.dump(indent);
}

}  // namespace delone
