#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "delone/coprime.hpp"
#include "delone/error.hpp"
#include "delone/example_surface.hpp"

using namespace delone;

namespace {

PlanarPoint pt(QuadExt x, QuadExt y) { return {std::move(x), std::move(y), {}}; }
PlanarPoint ipt(long x, long y) { return pt(QuadExt::integer(x), QuadExt::integer(y)); }

const QuadExt kTx(-1, 1, 2);
const QuadExt kTy(-1, 1, 3);

}  // namespace

TEST(ClosedForm, KnownMembers) {
  const PointSet ps = closed_form({}, 5);
  EXPECT_EQ(ps.dx(), 2);
  EXPECT_EQ(ps.dy(), 3);
  ASSERT_NE(ps.tag_of(QuadExt::integer(1, 2), QuadExt::integer(0, 3)), nullptr);
  EXPECT_EQ(*ps.tag_of(QuadExt::integer(1, 2), QuadExt::integer(0, 3)), "UU");
  ASSERT_NE(ps.tag_of(kTx, kTy), nullptr);
  EXPECT_EQ(*ps.tag_of(kTx, kTy), "UV");
  EXPECT_EQ(*ps.tag_of(-kTx, -kTy), "VU");
  EXPECT_FALSE(ps.contains(QuadExt::integer(2, 2), QuadExt::integer(2, 3)));
}

TEST(ClosedForm, SmallRadiusIsEmpty) {
  EXPECT_TRUE(closed_form({}, 0.2).empty());
  // shortest elements: +-(sqrt2 - 1, sqrt3 - 2), norm ~ 0.49333
  double shortest = 1e9;
  for (long i = -2; i <= 2; ++i)
    for (long j = -2; j <= 2; ++j)
      shortest = std::min(shortest, std::hypot(std::sqrt(2.0) - 1 + i, std::sqrt(3.0) - 1 + j));
  EXPECT_NEAR(shortest, 0.49333, 1e-5);
  EXPECT_TRUE(closed_form({}, shortest - 1e-6).empty());
  const PointSet two = closed_form({}, shortest + 1e-6);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_TRUE(two.contains(kTx, kTy - QuadExt::integer(1, 3)));
}

TEST(ClosedForm, FamiliesAndSymmetry) {
  const PointSet ps = closed_form({}, 12);
  std::vector<PlanarPoint> uu, uv, vu;
  for (const auto& p : ps) {
    if (p.tag == "UU") uu.push_back(p);
    if (p.tag == "UV") uv.push_back(p);
    if (p.tag == "VU") vu.push_back(p);
  }
  EXPECT_EQ(uu.size() + uv.size() + vu.size(), ps.size());
  EXPECT_TRUE(PointSet(uu, 1, 1).same_points(coprime_points(12)));
  EXPECT_TRUE(PointSet(uv, 2, 3).negated().same_points(PointSet(vu, 2, 3)));
  EXPECT_TRUE(ps.negated().same_points(ps));
  for (const auto& p : uv) {
    EXPECT_EQ(p.x.b(), 1);
    EXPECT_EQ(p.y.b(), 1);
  }
}

TEST(Oracle, EqualsClosedForm) {
  for (double r : {1.0, 3.0, 5.0}) {
    const PointSet a = closed_form({}, r);
    const PointSet b = geometric_oracle({}, r);
    EXPECT_EQ(a, b) << "R=" << r << " sizes " << a.size() << " vs " << b.size();
  }
}

TEST(Oracle, RejectsDependentShift) {
  // t = (s, s) with s = sqrt2 - 1: the segment from 0 to (1, 1) + t = (sqrt2, sqrt2)
  // runs through (1, 1), so the closed form overcounts.
  BranchConfig cfg;
  cfg.shift.ty = kTx;
  const PointSet closed = closed_form(cfg, 3);
  const PointSet oracle = geometric_oracle(cfg, 3);
  const QuadExt r2 = QuadExt::sqrt_of(2);
  EXPECT_TRUE(closed.contains(r2, r2));
  EXPECT_FALSE(oracle.contains(r2, r2));
  EXPECT_FALSE(closed.same_points(oracle));
}

TEST(Oracle, AlternativeIndependentShiftAgrees) {
  BranchConfig cfg;
  cfg.shift.tx = QuadExt(Rational(-1, 2), Rational(1, 2), 5);  // (sqrt5 - 1)/2
  cfg.shift.ty = QuadExt(-2, 1, 7);                            // sqrt7 - 2
  EXPECT_EQ(closed_form(cfg, 4), geometric_oracle(cfg, 4));
}

TEST(Shift, Validation) {
  BranchConfig cfg;
  cfg.shift.tx = QuadExt::rational(Rational(1, 2), 2);
  EXPECT_THROW(closed_form(cfg, 3), Error);
  cfg.shift.tx = QuadExt(0, 1, 2);  // sqrt2 > 1
  EXPECT_THROW(closed_form(cfg, 3), Error);
  cfg.shift.tx = QuadExt(1, -1, 2);  // 1 - sqrt2 < 0
  EXPECT_THROW(geometric_oracle(cfg, 3), Error);
  EXPECT_NO_THROW(ShiftVector{}.validate());
}

TEST(Segment, InteriorTest) {
  EXPECT_TRUE(on_open_segment(ipt(0, 0), ipt(2, 0), ipt(1, 0)));
  EXPECT_FALSE(on_open_segment(ipt(0, 0), ipt(2, 0), ipt(2, 0)));
  EXPECT_FALSE(on_open_segment(ipt(0, 0), ipt(2, 0), ipt(0, 0)));
  EXPECT_FALSE(on_open_segment(ipt(0, 0), ipt(2, 0), ipt(3, 0)));
  EXPECT_FALSE(on_open_segment(ipt(0, 0), ipt(2, 2), ipt(1, 0)));
  EXPECT_TRUE(on_open_segment(ipt(0, 0), ipt(0, -3), ipt(0, -1)));
  // irrational slope misses every other point of W
  const PlanarPoint t = pt(kTx, kTy);
  for (long i = -2; i <= 2; ++i)
    for (long j = -2; j <= 2; ++j) {
      EXPECT_FALSE(on_open_segment(ipt(0, 0), t, ipt(i, j)));
      EXPECT_FALSE(on_open_segment(ipt(0, 0), t, pt(kTx + QuadExt::integer(i), kTy + QuadExt::integer(j))));
    }
  // a segment from U to V passing through another V point
  const PlanarPoint far = pt(kTx + kTx + QuadExt::integer(0, 2), kTy + kTy);
  EXPECT_TRUE(on_open_segment(pt(QuadExt::integer(0, 2), QuadExt::integer(0, 3)), far, t));
}

TEST(Slope, Classes) {
  EXPECT_EQ(slope_class(ipt(0, 0), ipt(2, 3)), SlopeClass::kRational);
  EXPECT_EQ(slope_class(ipt(0, 0), ipt(0, 5)), SlopeClass::kInfinite);
  EXPECT_EQ(slope_class(ipt(0, 0), pt(kTx, kTy)), SlopeClass::kIrrational);
  EXPECT_EQ(slope_class(ipt(0, 0), ipt(4, 0)), SlopeClass::kRational);
  // (sqrt2, 3 sqrt2) has slope 3
  const QuadExt r2 = QuadExt::sqrt_of(2);
  EXPECT_EQ(slope_class(ipt(0, 0), pt(r2, QuadExt(0, 3, 2))), SlopeClass::kRational);
  EXPECT_EQ(slope_class(ipt(0, 0), pt(r2, QuadExt(1, 3, 2))), SlopeClass::kIrrational);
  EXPECT_THROW(slope_class(ipt(1, 1), ipt(1, 1)), Error);
}
