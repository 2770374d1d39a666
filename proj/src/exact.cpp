#include "delone/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "delone/error.hpp"

namespace delone {

namespace {

constexpr std::int64_t kMaxRadicand = 1'000'000'000'000;

int sign_of(const Rational& q) { return sgn(q); }

// |x| <= 2^bits for the numerator part; generous magnitude estimate.
std::size_t magnitude_bits(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + 1;
}

Rational parse_rational(std::string_view s) {
  if (s.empty()) throw Error(ErrorCode::kParse, "empty rational");
  std::string text(s);
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::string body = text.substr(pos);
  if (body.empty()) throw Error(ErrorCode::kParse, "bad number '" + text + "'");
  auto all_digits = [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) {
      return std::isdigit(c) != 0;
    });
  };
  Rational out;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(ErrorCode::kParse, "bad fraction '" + text + "'");
    if (mpz_class(den) == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + text + "'");
    out = make_rational(mpz_class(num), mpz_class(den));
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot);
    std::string frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      throw Error(ErrorCode::kParse, "bad decimal '" + text + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    out = make_rational(mpz_class(whole + frac), scale);
  } else {
    if (!all_digits(body))
      throw Error(ErrorCode::kParse, "bad integer '" + text + "'");
    out = Rational(mpz_class(body));
  }
  return negative ? Rational(-out) : out;
}

}  // namespace

Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v))
    throw Error(ErrorCode::kInvalidArgument, "non-finite value");
  return Rational(v);
}

SquarefreeSplit squarefree_split(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "radicand must be >= 1");
  if (n > kMaxRadicand)
    throw Error(ErrorCode::kInvalidArgument, "radicand too large");
  std::int64_t core = 1;
  std::int64_t root = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) root *= p;
    if (e % 2) core *= p;
  }
  core *= n;
  return {core, root};
}

QuadExt::QuadExt(Rational a, Rational b, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  auto split = squarefree_split(d_);
  d_ = split.core;
  if (split.root != 1) b_ *= split.root;
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
}

QuadExt QuadExt::in_field(std::int64_t d) const {
  if (d == d_) return *this;
  if (!is_rational())
    throw Error(ErrorCode::kFieldMismatch,
                "cannot move " + to_string(*this) + " into Q(sqrt(" +
                    std::to_string(d) + "))");
  return QuadExt::rational(a_, d);
}

std::int64_t common_field(const QuadExt& u, const QuadExt& v) {
  if (u.d() == v.d()) return u.d();
  if (u.d() == 1) return v.d();
  if (v.d() == 1) return u.d();
  throw Error(ErrorCode::kFieldMismatch,
              "field mismatch: sqrt(" + std::to_string(u.d()) + ") vs sqrt(" +
                  std::to_string(v.d()) + ")");
}

QuadExt quad_add(const QuadExt& u, const QuadExt& v) {
  std::int64_t d = common_field(u, v);
  return QuadExt(u.a() + v.a(), u.b() + v.b(), d);
}

QuadExt quad_sub(const QuadExt& u, const QuadExt& v) {
  std::int64_t d = common_field(u, v);
  return QuadExt(u.a() - v.a(), u.b() - v.b(), d);
}

QuadExt quad_neg(const QuadExt& u) { return QuadExt(-u.a(), -u.b(), u.d()); }

QuadExt quad_mul(const QuadExt& u, const QuadExt& v) {
  std::int64_t d = common_field(u, v);
  return QuadExt(u.a() * v.a() + u.b() * v.b() * d,
                 u.a() * v.b() + u.b() * v.a(), d);
}

QuadExt quad_div(const QuadExt& u, const QuadExt& v) {
  std::int64_t d = common_field(u, v);
  Rational n = v.norm();
  if (sgn(n) == 0) throw Error(ErrorCode::kInvalidArgument, "division by zero");
  QuadExt num = quad_mul(u, QuadExt(v.a(), -v.b(), v.d()));
  return QuadExt(num.a() / n, num.b() / n, d);
}

int quad_sign(const QuadExt& u) {
  int sa = sign_of(u.a());
  int sb = sign_of(u.b());
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger of a^2 and b^2 d decides.
  int c = cmp(u.a() * u.a(), u.b() * u.b() * u.d());
  if (c > 0) return sa;
  if (c < 0) return sb;
  return 0;
}

int quad_compare(const QuadExt& u, const QuadExt& v) {
  common_field(u, v);
  if (u.b() == v.b()) {
    int c = cmp(u.a(), v.a());
    return (c > 0) - (c < 0);
  }
  return quad_sign(quad_sub(u, v));
}

mpz_class quad_floor(const QuadExt& u) {
  if (u.is_rational()) {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), u.a().get_num_mpz_t(), u.a().get_den_mpz_t());
    return out;
  }
  int bits = static_cast<int>(64 + magnitude_bits(u.a()) + magnitude_bits(u.b()) +
                              64);
  auto enc = to_float(u, bits);
  mpz_class k = enc.value.floor_to_integer();
  while (quad_sign(u - QuadExt::rational(Rational(k), u.d())) < 0) --k;
  while (quad_sign(u - QuadExt::rational(Rational(k + 1), u.d())) >= 0) ++k;
  return k;
}

FloatEnclosure to_float(const QuadExt& u, int precision_bits) {
  if (precision_bits < 24)
    throw Error(ErrorCode::kInvalidArgument, "precision_bits must be >= 24");
  const auto bits = static_cast<mpfr_prec_t>(precision_bits);
  if (u.is_zero()) return {BigFloat(bits), BigFloat(64)};
  SurdSum sum(u);
  mpfr_prec_t work = bits + 16;
  for (;;) {
    FloatEnclosure enc = sum.evaluate(work);
    // Target before final rounding: 2^-bits * (1 + |value|).
    BigFloat target(64);
    mpfr_abs(target.raw(), enc.value.raw(), MPFR_RNDD);
    mpfr_add_ui(target.raw(), target.raw(), 1, MPFR_RNDD);
    mpfr_mul_2si(target.raw(), target.raw(), -bits, MPFR_RNDD);
    if (compare(enc.error, target) <= 0) {
      BigFloat rounded(bits);
      mpfr_set(rounded.raw(), enc.value.raw(), MPFR_RNDN);
      BigFloat delta(work);
      mpfr_sub(delta.raw(), rounded.raw(), enc.value.raw(), MPFR_RNDN);  // exact
      mpfr_abs(delta.raw(), delta.raw(), MPFR_RNDU);
      BigFloat err(64);
      mpfr_add(err.raw(), enc.error.raw(), delta.raw(), MPFR_RNDU);
      return {std::move(rounded), std::move(err)};
    }
    work *= 2;
  }
}

double to_double(const QuadExt& u) {
  if (u.is_rational()) return BigFloat::from_rational(u.a(), 53).to_double();
  return to_float(u, 53).approx();
}

std::string to_string(const QuadExt& u) {
  std::string out = u.a().get_num().get_str() + "/" + u.a().get_den().get_str();
  if (sgn(u.b()) >= 0) out += "+";
  out += u.b().get_num().get_str() + "/" + u.b().get_den().get_str() + "*sqrt(" +
         std::to_string(u.d()) + ")";
  return out;
}

QuadExt parse_quad(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::kParse, "empty number");

  auto root_pos = s.find("sqrt(");
  if (root_pos == std::string::npos) return QuadExt::rational(parse_rational(s));

  auto close = s.find(')', root_pos);
  if (close == std::string::npos || close + 1 != s.size())
    throw Error(ErrorCode::kParse, "bad surd in '" + s + "'");
  std::string radicand = s.substr(root_pos + 5, close - root_pos - 5);
  if (radicand.empty() ||
      !std::all_of(radicand.begin(), radicand.end(),
                   [](unsigned char c) { return std::isdigit(c) != 0; }))
    throw Error(ErrorCode::kParse, "bad radicand in '" + s + "'");
  std::int64_t d = 0;
  try {
    d = std::stoll(radicand);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "bad radicand in '" + s + "'");
  }
  if (d < 1) throw Error(ErrorCode::kParse, "radicand must be positive");

  std::string head = s.substr(0, root_pos);
  Rational coeff(1);
  std::string rational_part;
  if (!head.empty() && head.back() == '*') {
    head.pop_back();
    std::size_t start = head.size();
    while (start > 0 && (std::isdigit(static_cast<unsigned char>(head[start - 1])) ||
                         head[start - 1] == '/' || head[start - 1] == '.'))
      --start;
    if (start > 0 && (head[start - 1] == '+' || head[start - 1] == '-')) --start;
    coeff = parse_rational(head.substr(start));
    rational_part = head.substr(0, start);
    if (!rational_part.empty() && rational_part.back() == '+') rational_part.pop_back();
  } else {
    // Unit coefficient, possibly signed: "sqrt(2)", "-sqrt(2)", "1+sqrt(2)".
    if (!head.empty() && (head.back() == '+' || head.back() == '-')) {
      if (head.back() == '-') coeff = -1;
      head.pop_back();
      if (!head.empty() && head.back() == '+') head.pop_back();
    }
    rational_part = head;
  }
  Rational a = rational_part.empty() ? Rational(0) : parse_rational(rational_part);
  if (d > kMaxRadicand) throw Error(ErrorCode::kParse, "radicand too large");
  return QuadExt(a, coeff, d);
}

// ---------------------------------------------------------------------------
// SurdSum

SurdSum::SurdSum(const QuadExt& u) {
  add_term(u.a(), 1);
  add_term(u.b(), u.d());
}

void SurdSum::add_term(const Rational& coeff, std::int64_t radicand) {
  if (sgn(coeff) == 0) return;
  auto [it, inserted] = terms_.try_emplace(radicand, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

SurdSum& SurdSum::operator+=(const SurdSum& other) {
  for (const auto& [m, c] : other.terms_) add_term(c, m);
  return *this;
}

SurdSum& SurdSum::operator-=(const SurdSum& other) {
  for (const auto& [m, c] : other.terms_) add_term(-c, m);
  return *this;
}

SurdSum SurdSum::product(const QuadExt& u, const QuadExt& v) {
  SurdSum out;
  out.add_term(u.a() * v.a(), 1);
  out.add_term(u.b() * v.a(), u.d());
  out.add_term(u.a() * v.b(), v.d());
  if (!u.is_rational() && !v.is_rational()) {
    // Both radicands squarefree: sqrt(d1 d2) = g * sqrt((d1/g)(d2/g)).
    std::int64_t g = std::gcd(u.d(), v.d());
    __int128 core = static_cast<__int128>(u.d() / g) * (v.d() / g);
    if (core > kMaxRadicand)
      throw Error(ErrorCode::kInvalidArgument, "radicand product too large");
    out.add_term(u.b() * v.b() * g, static_cast<std::int64_t>(core));
  }
  return out;
}

FloatEnclosure SurdSum::evaluate(mpfr_prec_t bits) const {
  BigFloat sum(bits);
  BigFloat err(64);
  BigFloat term(bits);
  BigFloat root(bits);
  BigFloat scratch(64);
  for (const auto& [m, c] : terms_) {
    mpfr_set_q(term.raw(), c.get_mpq_t(), MPFR_RNDN);
    if (m != 1) {
      mpfr_sqrt_ui(root.raw(), static_cast<unsigned long>(m), MPFR_RNDN);
      mpfr_mul(term.raw(), term.raw(), root.raw(), MPFR_RNDN);
    }
    // Three roundings on the term: |error| <= 4 u |term|, u = 2^-bits.
    mpfr_abs(scratch.raw(), term.raw(), MPFR_RNDU);
    mpfr_mul_2si(scratch.raw(), scratch.raw(), 2 - bits, MPFR_RNDU);
    mpfr_add(err.raw(), err.raw(), scratch.raw(), MPFR_RNDU);
    mpfr_add(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
    // One rounding on the running sum: u |sum|.
    mpfr_abs(scratch.raw(), sum.raw(), MPFR_RNDU);
    mpfr_mul_2si(scratch.raw(), scratch.raw(), -bits, MPFR_RNDU);
    mpfr_add(err.raw(), err.raw(), scratch.raw(), MPFR_RNDU);
  }
  return {std::move(sum), std::move(err)};
}

int SurdSum::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sgn(terms_.begin()->second);
  if (terms_.size() == 2 && terms_.begin()->first == 1) {
    auto second = std::next(terms_.begin());
    return quad_sign(QuadExt(terms_.begin()->second, second->second, second->first));
  }
  for (mpfr_prec_t bits = 64; bits <= 4096; bits *= 2) {
    FloatEnclosure enc = evaluate(bits);
    BigFloat mag(bits);
    mpfr_abs(mag.raw(), enc.value.raw(), MPFR_RNDD);
    if (compare(mag, enc.error) > 0) return enc.value.sign();
  }
  return 0;
}

double SurdSum::approx() const {
  double out = 0;
  for (const auto& [m, c] : terms_)
    out += c.get_d() * std::sqrt(static_cast<double>(m));
  return out;
}

// ---------------------------------------------------------------------------
// Points

int compare_points(const PlanarPoint& p, const PlanarPoint& q) {
  int c = quad_compare(p.x, q.x);
  if (c != 0) return c;
  return quad_compare(p.y, q.y);
}

SurdSum squared_distance(const PlanarPoint& p, const PlanarPoint& q) {
  QuadExt dx = q.x - p.x;
  QuadExt dy = q.y - p.y;
  SurdSum out = SurdSum::product(dx, dx);
  out += SurdSum::product(dy, dy);
  return out;
}

SurdSum squared_norm(const PlanarPoint& p) {
  SurdSum out = SurdSum::product(p.x, p.x);
  out += SurdSum::product(p.y, p.y);
  return out;
}

int compare_norm(const PlanarPoint& p, double radius) {
  Rational r = rational_from_double(radius);
  SurdSum s = squared_norm(p);
  s.add_term(-(r * r), 1);
  return s.sign();
}

PointSet::PointSet(std::vector<PlanarPoint> points, std::int64_t dx,
                   std::int64_t dy)
    : points_(std::move(points)), dx_(squarefree_split(dx).core),
      dy_(squarefree_split(dy).core) {
  for (auto& p : points_) {
    p.x = p.x.in_field(dx_);
    p.y = p.y.in_field(dy_);
  }
  auto less = [](const PlanarPoint& a, const PlanarPoint& b) {
    return compare_points(a, b) < 0;
  };
  if (!std::is_sorted(points_.begin(), points_.end(), less))
    std::stable_sort(points_.begin(), points_.end(), less);
  auto last = std::unique(points_.begin(), points_.end(),
                          [](const PlanarPoint& a, const PlanarPoint& b) {
                            return compare_points(a, b) == 0;
                          });
  points_.erase(last, points_.end());
}

namespace {

std::int64_t infer_field(const std::vector<PlanarPoint>& points,
                         const QuadExt PlanarPoint::*coord) {
  std::int64_t irrational = 0;
  std::int64_t tagged = 0;
  for (const auto& p : points) {
    const QuadExt& v = p.*coord;
    if (!v.is_rational()) {
      if (irrational != 0 && irrational != v.d())
        throw Error(ErrorCode::kFieldMismatch, "coordinates span several fields");
      irrational = v.d();
    } else if (v.d() != 1) {
      tagged = tagged == 0 || tagged == v.d() ? v.d() : -1;
    }
  }
  if (irrational != 0) return irrational;
  return tagged > 0 ? tagged : 1;
}

}  // namespace

PointSet PointSet::from_points(std::vector<PlanarPoint> points) {
  std::int64_t dx = infer_field(points, &PlanarPoint::x);
  std::int64_t dy = infer_field(points, &PlanarPoint::y);
  return PointSet(std::move(points), dx, dy);
}

const std::string* PointSet::tag_of(const QuadExt& x, const QuadExt& y) const {
  PlanarPoint probe;
  try {
    probe.x = x.in_field(dx_);
    probe.y = y.in_field(dy_);
  } catch (const Error&) {
    return nullptr;
  }
  auto it = std::lower_bound(points_.begin(), points_.end(), probe,
                             [](const PlanarPoint& a, const PlanarPoint& b) {
                               return compare_points(a, b) < 0;
                             });
  if (it == points_.end() || compare_points(*it, probe) != 0) return nullptr;
  return &it->tag;
}

bool PointSet::contains(const QuadExt& x, const QuadExt& y) const {
  return tag_of(x, y) != nullptr;
}

PointSet PointSet::negated() const {
  std::vector<PlanarPoint> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back({-p.x, -p.y, p.tag});
  return PointSet(std::move(out), dx_, dy_);
}

PointSet PointSet::within(double radius) const {
  std::vector<PlanarPoint> out;
  for (const auto& p : points_)
    if (compare_norm(p, radius) <= 0) out.push_back(p);
  return PointSet(std::move(out), dx_, dy_);
}

bool PointSet::same_points(const PointSet& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    try {
      if (compare_points(points_[i], other.points_[i]) != 0) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

bool operator==(const PointSet& a, const PointSet& b) {
  if (!a.same_points(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.points_[i].tag != b.points_[i].tag) return false;
  return true;
}

}  // namespace delone
