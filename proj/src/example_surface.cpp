#include "delone/example_surface.hpp"

#include <cmath>

#include "delone/coprime.hpp"
#include "delone/error.hpp"

namespace delone {

namespace {

bool strictly_inside_unit(const QuadExt& v) {
  return quad_sign(v) > 0 && quad_compare(v, QuadExt::integer(1, v.d())) < 0;
}

PlanarPoint lattice_point(long i, long j, const ShiftVector& t) {
  return {QuadExt::integer(i, t.tx.d()), QuadExt::integer(j, t.ty.d()), {}};
}

PlanarPoint shifted_point(long i, long j, const ShiftVector& t, int sign) {
  QuadExt sx = sign > 0 ? t.tx : -t.tx;
  QuadExt sy = sign > 0 ? t.ty : -t.ty;
  return {QuadExt::integer(i, t.tx.d()) + sx, QuadExt::integer(j, t.ty.d()) + sy, {}};
}

std::int64_t field_x(const BranchConfig& cfg) { return cfg.shift.tx.d(); }
std::int64_t field_y(const BranchConfig& cfg) { return cfg.shift.ty.d(); }

}  // namespace

void ShiftVector::validate() const {
  if (tx.is_rational() || ty.is_rational())
    throw Error(ErrorCode::kInvalidArgument, "shift coordinates must both be irrational");
  if (!strictly_inside_unit(tx) || !strictly_inside_unit(ty))
    throw Error(ErrorCode::kInvalidArgument, "shift must lie strictly inside the unit square");
}

PointSet closed_form(const BranchConfig& cfg, double radius) {
  cfg.shift.validate();
  std::vector<PlanarPoint> points;
  for (const auto& p : coprime_points(radius))
    points.push_back({p.x.in_field(field_x(cfg)), p.y.in_field(field_y(cfg)), "UU"});

  const long extent = static_cast<long>(std::floor(radius)) + 1;
  for (int sign : {1, -1}) {
    for (long i = -extent; i <= extent; ++i) {
      for (long j = -extent; j <= extent; ++j) {
        PlanarPoint p = shifted_point(i, j, cfg.shift, sign);
        if (compare_norm(p, radius) > 0) continue;
        p.tag = sign > 0 ? "UV" : "VU";
        points.push_back(std::move(p));
      }
    }
  }
  return PointSet(std::move(points), field_x(cfg), field_y(cfg));
}

bool on_open_segment(const PlanarPoint& from, const PlanarPoint& to,
                     const PlanarPoint& w) {
  const QuadExt dx = to.x - from.x;
  const QuadExt dy = to.y - from.y;
  const QuadExt wx = w.x - from.x;
  const QuadExt wy = w.y - from.y;
  SurdSum cross = SurdSum::product(wx, dy);
  cross -= SurdSum::product(wy, dx);
  if (!cross.is_zero()) return false;
  // Collinear: the parameter along the segment must lie in (0, 1).
  const QuadExt& along = dx.is_zero() ? wy : wx;
  const QuadExt& total = dx.is_zero() ? dy : dx;
  const int s = quad_sign(total);
  if (quad_sign(along) != s) return false;
  return quad_compare(s > 0 ? along : -along, s > 0 ? total : -total) < 0;
}

PointSet geometric_oracle(const BranchConfig& cfg, double radius) {
  cfg.shift.validate();
  const ShiftVector& t = cfg.shift;
  const double tx = to_double(t.tx);
  const double ty = to_double(t.ty);

  // Every W point lying in the closed box [lo, hi] (with a unit margin).
  auto box_points = [&](double xlo, double xhi, double ylo, double yhi) {
    std::vector<std::pair<PlanarPoint, bool>> out;  // (point, is_v)
    for (long i = static_cast<long>(std::floor(xlo)) - 1; i <= static_cast<long>(std::ceil(xhi)) + 1; ++i)
      for (long j = static_cast<long>(std::floor(ylo)) - 1; j <= static_cast<long>(std::ceil(yhi)) + 1; ++j) {
        out.emplace_back(lattice_point(i, j, t), false);
        out.emplace_back(shifted_point(i, j, t, 1), true);
      }
    return out;
  };

  const PlanarPoint sources[2] = {lattice_point(0, 0, t), shifted_point(0, 0, t, 1)};
  std::vector<PlanarPoint> holonomies;
  for (int s = 0; s < 2; ++s) {
    const PlanarPoint& src = sources[s];
    const double sx = s == 0 ? 0.0 : tx;
    const double sy = s == 0 ? 0.0 : ty;
    for (auto& [target, target_is_v] :
         box_points(sx - radius, sx + radius, sy - radius, sy + radius)) {
      if (compare_points(target, src) == 0) continue;
      if (squared_distance(src, target).approx() > radius * radius + 1) continue;
      SurdSum excess = squared_distance(src, target);
      const Rational r = rational_from_double(radius);
      excess.add_term(-(r * r), 1);
      if (excess.sign() > 0) continue;

      const double ex = to_double(target.x);
      const double ey = to_double(target.y);
      bool blocked = false;
      for (const auto& [w, w_is_v] :
           box_points(std::min(sx, ex), std::max(sx, ex), std::min(sy, ey), std::max(sy, ey))) {
        if (on_open_segment(src, target, w)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      const bool src_is_v = s == 1;
      std::string tag = !src_is_v ? (target_is_v ? "UV" : "UU") : (target_is_v ? "VV" : "VU");
      holonomies.push_back({target.x - src.x, target.y - src.y, std::move(tag)});
    }
  }
  // Identical holonomies from U and V sources collapse onto the U-sourced tag.
  return PointSet(std::move(holonomies), field_x(cfg), field_y(cfg));
}

SlopeClass slope_class(const PlanarPoint& p1, const PlanarPoint& p2) {
  const QuadExt dx = p2.x - p1.x;
  const QuadExt dy = p2.y - p1.y;
  if (dx.is_zero() && dy.is_zero())
    throw Error(ErrorCode::kInvalidArgument, "slope of a degenerate segment");
  if (dx.is_zero()) return SlopeClass::kInfinite;
  if (dy.is_zero()) return SlopeClass::kRational;
  // dy = rho * dx for rational rho iff the surd expansions are proportional.
  const SurdSum ex(dx);
  const SurdSum ey(dy);
  if (ex.terms().size() != ey.terms().size()) return SlopeClass::kIrrational;
  Rational rho = 0;
  bool first = true;
  auto ix = ex.terms().begin();
  for (auto iy = ey.terms().begin(); iy != ey.terms().end(); ++iy, ++ix) {
    if (ix->first != iy->first) return SlopeClass::kIrrational;
    Rational ratio = iy->second / ix->second;
    if (first) {
      rho = ratio;
      first = false;
    } else if (ratio != rho) {
      return SlopeClass::kIrrational;
    }
  }
  return SlopeClass::kRational;
}

}  // namespace delone
