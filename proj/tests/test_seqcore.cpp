#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "relconvex/diagnostics.hpp"
#include "relconvex/oracles.hpp"
#include "relconvex/seqcore.hpp"

using namespace relconvex;
namespace br = relconvex::oracles::brute;

namespace {

std::vector<double> range_map(int lo, int hi, double (*f)(double)) {
  std::vector<double> v;
  for (int i = lo; i <= hi; ++i) v.push_back(f(static_cast<double>(i)));
  return v;
}

double lnln(double x) { return std::log(std::log(x)); }
double ln(double x) { return std::log(x); }

void expect_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(ForwardDiff, SmallCases) {
  EXPECT_EQ(forward_diff(RealSeq{1, 2, 4}), (std::vector<double>{1, 2}));
  EXPECT_EQ(forward_diff(RealSeq{7.5, 7.5, 7.5}), (std::vector<double>{0, 0}));
}

TEST(ForwardDiff, MatchesElementwiseOracle) {
  const RealSeq a{4, 1, 0, 2, 6};
  const auto d = forward_diff(a);
  EXPECT_EQ(d, br::diff(a.span()));
  EXPECT_EQ(d, (std::vector<double>{-3, -1, 2, 4}));
}

TEST(ForwardDiff, RejectsShortInput) {
  expect_kind(ErrorKind::LengthError, [] { RealSeq{1.0}; });
  const std::vector<double> one{1.0};
  expect_kind(ErrorKind::LengthError, [&] { forward_diff(std::span<const double>(one)); });
  expect_kind(ErrorKind::InvalidValue, [] { RealSeq{1.0, NAN}; });
}

TEST(IsConvex, LogarithmIsNotConvex) {
  const auto r = is_convex(RealSeq(range_map(3, 10, ln)));
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.first_violation.has_value());
  EXPECT_EQ(*r.first_violation, 2u);
  EXPECT_LT(r.margin, r.threshold);
}

TEST(IsConvex, ArithmeticHasZeroMargin) {
  const auto r = is_convex(RealSeq{0, 0.5, 1.0, 1.5});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.margin, 0.0);
}

TEST(IsConvex, DifferencesNonDecreasing) {
  const RealSeq a{4, 1, 0, 2, 6};
  EXPECT_TRUE(is_convex(a).holds);
  // Margin is the smallest (a_{i-1} + a_{i+1}) / 2 - a_i.
  double best = 1e300;
  for (std::size_t i = 1; i + 1 < a.size(); ++i)
    best = std::min(best, 0.5 * (a[i - 1] + a[i + 1]) - a[i]);
  EXPECT_DOUBLE_EQ(is_convex(a).margin, best);
}

TEST(IsConvex, LengthTwoIsVacuous) {
  const auto r = is_convex(RealSeq{5, -3});
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.first_violation);
  EXPECT_TRUE(is_convex_wrt(RealSeq{5, -3}, Witness{0, 1}).holds);
  EXPECT_TRUE(is_relative_convex(RealSeq{5, -3}));
}

TEST(IsConvexWrt, LogAgainstLogLog) {
  const RealSeq a(range_map(3, 100, ln));
  const Witness t(range_map(3, 100, lnln));
  const auto r = is_convex_wrt(a, t);
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.margin, 0.0);
}

TEST(IsConvexWrt, UnitStepsMatchPlainConvexity) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    oracles::Rng rng({seed});
    std::vector<double> v(2 + rng.below(10));
    for (auto& x : v) x = rng.uniform(-3, 3);
    const RealSeq a(v);
    const auto plain = is_convex(a);
    const auto rel = is_convex_wrt(a, Witness::arithmetic(a.size()));
    EXPECT_EQ(plain.holds, rel.holds) << seed;
    EXPECT_EQ(plain.first_violation, rel.first_violation) << seed;
  }
}

TEST(IsConvexWrt, SquareAtRandomAbscissae) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = oracles::gen_abscissae(3 + seed % 20, {seed});
    std::vector<double> a;
    for (double x : t) a.push_back(x * x);
    EXPECT_TRUE(is_convex_wrt(RealSeq(a), Witness(t)).holds) << seed;
    // Ratio oracle: (x_{i+1}^2 - x_i^2) / (x_{i+1} - x_i) = x_i + x_{i+1}.
    const auto r = chord_slopes(RealSeq(a), Witness(t));
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r[i], t[i] + t[i + 1], 1e-12);
  }
}

TEST(IsConvexWrt, Errors) {
  expect_kind(ErrorKind::LengthMismatch, [] { is_convex_wrt(RealSeq{1, 2, 3}, Witness{1, 2}); });
  expect_kind(ErrorKind::WitnessNotIncreasing, [] { Witness{1, 1, 2}; });
  expect_kind(ErrorKind::WitnessNotIncreasing,
              [] { is_convex_wrt(RealSeq{1, 2, 3}, Witness{0, 1e-12, 1}); });
}

TEST(IsConvexWrt, AffineRescaleOfWitness) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto [a, t] = oracles::gen_relative_convex_pair(6, {seed});
    const auto bad = oracles::gen_perturbed_negative(a, t, {seed + 1});
    std::vector<double> moved;
    for (double x : t) moved.push_back(2.5 * x - 7.0);
    const Witness t2(moved);
    EXPECT_EQ(is_convex_wrt(a, t).holds, is_convex_wrt(a, t2).holds);
    EXPECT_EQ(is_convex_wrt(bad, t).holds, is_convex_wrt(bad, t2).holds);
  }
}

TEST(ClassifyShape, SquareRootDistance) {
  std::vector<double> v;
  for (int n = 1; n <= 12; ++n) v.push_back(std::sqrt(std::abs(n - 3.0)));
  const auto c = classify_shape(RealSeq(v));
  EXPECT_EQ(c.variant, ShapeVariant::DecThenInc);
  ASSERT_TRUE(c.breakpoints);
  EXPECT_EQ(c.breakpoints->m, 3u);
  // Direct scan: the minimum 0 sits at n = 3.
  EXPECT_EQ(std::min_element(v.begin(), v.end()) - v.begin(), 2);
}

TEST(ClassifyShape, SumOfTwoVShapesIsNot) {
  std::vector<double> u, w, sum;
  for (int n = 1; n <= 12; ++n) {
    u.push_back(std::sqrt(std::abs(n - 3.0)));
    w.push_back(std::sqrt(std::abs(n - 9.0)));
    sum.push_back(u.back() + w.back());
  }
  EXPECT_TRUE(is_relative_convex(RealSeq(u)));
  EXPECT_TRUE(is_relative_convex(RealSeq(w)));
  EXPECT_EQ(classify_shape(RealSeq(sum)).variant, ShapeVariant::NotStrictlyVShaped);
}

TEST(ClassifyShape, PlateauThenRise) {
  const auto c = classify_shape(RealSeq{0, 0, 0, 1, 3});
  EXPECT_EQ(c.variant, ShapeVariant::ConstThenInc);
  EXPECT_EQ(c.breakpoints->plateau, 2u);
}

TEST(ClassifyShape, AllVariants) {
  EXPECT_EQ(classify_shape(RealSeq{1, 2, 5}).variant, ShapeVariant::StrictlyIncreasing);
  EXPECT_EQ(classify_shape(RealSeq{5, 2, 1}).variant, ShapeVariant::StrictlyDecreasing);
  EXPECT_EQ(classify_shape(RealSeq{5, 2, 2}).variant, ShapeVariant::DecThenConst);
  EXPECT_EQ(classify_shape(RealSeq{5, 2, 4}).variant, ShapeVariant::DecThenInc);
  EXPECT_EQ(classify_shape(RealSeq{5, 3, 1, 1, 2, 4}).variant, ShapeVariant::DecConstInc);
  EXPECT_EQ(classify_shape(RealSeq{2, 2, 2}).variant, ShapeVariant::Constant);
  EXPECT_EQ(classify_shape(RealSeq{1, 2, 1}).variant, ShapeVariant::NotStrictlyVShaped);
  EXPECT_EQ(classify_shape(RealSeq{1, 1, 0}).variant, ShapeVariant::NotStrictlyVShaped);
}

TEST(ClassifyShape, ToleranceDecidesTies) {
  EXPECT_EQ(classify_shape(RealSeq{1, 1 + 1e-12, 2}).variant, ShapeVariant::ConstThenInc);
  EXPECT_EQ(classify_shape(RealSeq{1, 1 + 1e-12, 2}, Tolerance::exact()).variant,
            ShapeVariant::StrictlyIncreasing);
}

TEST(IsRelativeConvex, Arctangent) {
  EXPECT_TRUE(is_relative_convex(RealSeq(range_map(1, 50, [](double x) { return std::atan(x); }))));
}

TEST(IsRelativeConvex, DecreasePlateauIncrease) {
  EXPECT_TRUE(is_relative_convex(RealSeq{5, 3, 1, 1, 2, 4}));
}

TEST(IsRelativeConvex, DescentAfterPlateauHasNoWitness) {
  const RealSeq a{3, 2, 2, 1};
  EXPECT_FALSE(is_relative_convex(a));
  // Any increasing t gives slopes (-1/dt1, 0, -1/dt3): the last step drops.
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Witness t(oracles::gen_abscissae(4, {seed}));
    const auto r = is_convex_wrt(a, t);
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(*r.first_violation, 3u);
  }
}

TEST(ConstructWitness, IncreasingRecursion) {
  const std::vector<double> s{1, 2};
  const auto t = construct_witness(RealSeq{1, 2, 4}, s, 0.0);
  EXPECT_EQ(t, (Witness{0, 1, 2}));
}

TEST(ConstructWitness, DecreasingRecursion) {
  const std::vector<double> s{-2, -1};
  EXPECT_EQ(construct_witness(RealSeq{4, 2, 1}, s, 0.0), (Witness{0, 1, 2}));
}

TEST(ConstructWitness, ConstantUsesPlateauStep) {
  EXPECT_EQ(construct_witness(RealSeq{3, 3, 3}, {}, 4.0, 1.0), (Witness{4, 5, 6}));
  EXPECT_EQ(construct_witness(RealSeq{3, 3, 3}, {}, 0.0, 0.25), (Witness{0, 0.25, 0.5}));
}

TEST(ConstructWitness, SlopesBecomeChordSlopes) {
  const RealSeq a{5, 3, 1, 1, 2, 4};
  const std::vector<double> s{-3, -0.5, 0.25, 4};
  const auto t = construct_witness(a, s, -1.0, 0.5);
  const auto r = chord_slopes(a, t);
  EXPECT_DOUBLE_EQ(r[0], -3);
  EXPECT_DOUBLE_EQ(r[1], -0.5);
  EXPECT_DOUBLE_EQ(r[2], 0);
  EXPECT_DOUBLE_EQ(r[3], 0.25);
  EXPECT_DOUBLE_EQ(r[4], 4);
  EXPECT_NEAR(t[3] - t[2], 0.5, 1e-12);
}

TEST(ConstructWitness, Errors) {
  const std::vector<double> ok{1, 2}, flipped{-1, 2}, unsorted{2, 1}, short_s{1};
  expect_kind(ErrorKind::ShapeError, [&] { construct_witness(RealSeq{1, 2, 1}, ok, 0.0); });
  expect_kind(ErrorKind::SignError, [&] { construct_witness(RealSeq{1, 2, 4}, flipped, 0.0); });
  expect_kind(ErrorKind::MonotoneError, [&] { construct_witness(RealSeq{1, 2, 4}, unsorted, 0.0); });
  expect_kind(ErrorKind::LengthMismatch, [&] { construct_witness(RealSeq{1, 2, 4}, short_s, 0.0); });
  expect_kind(ErrorKind::InvalidValue, [&] { construct_witness(RealSeq{1, 2, 4}, ok, 0.0, 0.0); });
}

TEST(ConstructWitness, RoundTripOverShapes) {
  for (const auto shape : kAllShapeVariants) {
    if (shape == ShapeVariant::NotStrictlyVShaped) continue;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto a = oracles::gen_shape(shape, 4 + seed % 9, {seed});
      const auto s = oracles::gen_slope_schedule(a, {seed + 1000});
      const auto t = construct_witness(a, s, -2.0, 0.75);
      const auto r = is_convex_wrt(a, t);
      EXPECT_TRUE(r.holds) << to_string(shape) << " seed " << seed;
      EXPECT_GE(r.margin, -1e-9);
      const auto canon = construct_witness(a, canonical_slopes(a), 0.0);
      EXPECT_TRUE(is_convex_wrt(a, canon).holds);
    }
  }
}

TEST(ConstructWitnessOnInterval, IncreasingFollowsMidpointRule) {
  const RealSeq a{0, 1, 3};
  const auto t = construct_witness_on_interval(a, 0.0, 1.0);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 1.0);
  // s_1 = (3 - 0) / (1 - 0) / 2 = 1.5, so t_2 = 1 / 1.5.
  EXPECT_NEAR(t[1], 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(is_convex_wrt(a, t).holds);
}

TEST(ConstructWitnessOnInterval, Decreasing) {
  const RealSeq a{3, 1, 0};
  const auto t = construct_witness_on_interval(a, 0.0, 1.0);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 1.0);
  const auto r = chord_slopes(a, t);
  EXPECT_LT(r[0], r[1]);
  EXPECT_LT(r[1], 0.0);
}

TEST(ConstructWitnessOnInterval, SymmetricV) {
  EXPECT_EQ(construct_witness_on_interval(RealSeq{2, 0, 2}, 0.0, 2.0), (Witness{0, 1, 2}));
}

TEST(ConstructWitnessOnInterval, EndpointsAreExact) {
  for (const auto shape : kAllShapeVariants) {
    if (shape == ShapeVariant::NotStrictlyVShaped) continue;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      oracles::Rng rng({seed});
      const double alpha = rng.uniform(-10, 10);
      const double beta = alpha + rng.uniform(1e-3, 20);
      const auto a = oracles::gen_shape(shape, 4 + seed % 13, {seed});
      const auto t = construct_witness_on_interval(a, alpha, beta);
      EXPECT_EQ(t.front(), alpha);
      EXPECT_EQ(t.back(), beta);
      EXPECT_TRUE(is_convex_wrt(a, t).holds) << to_string(shape) << " seed " << seed;
    }
  }
}

TEST(ConstructWitnessOnInterval, Errors) {
  expect_kind(ErrorKind::ShapeError,
              [] { construct_witness_on_interval(RealSeq{3, 2, 2, 1}, 0.0, 1.0); });
  expect_kind(ErrorKind::IntervalError,
              [] { construct_witness_on_interval(RealSeq{1, 2, 3}, 1.0, 1.0); });
}

TEST(Properties, WitnessCompositionIsInherited) {
  // b convex w.r.t. strictly increasing a, and a convex w.r.t. s => b convex w.r.t. s.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = oracles::gen_abscissae(8, {seed});
    std::vector<double> a, b;
    for (double x : s) a.push_back(std::exp(x));           // convex, increasing in s
    for (double x : a) b.push_back(x * x + x);             // convex, increasing in a
    const RealSeq as(a), bs(b);
    ASSERT_TRUE(is_convex_wrt(bs, Witness(a)).holds);
    ASSERT_TRUE(is_convex_wrt(as, Witness(s)).holds);
    EXPECT_TRUE(is_convex_wrt(bs, Witness(s)).holds) << seed;
  }
}

TEST(Properties, DefinitionalEquivalence) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto [a, t] = oracles::gen_relative_convex_pair(3 + seed % 10, {seed});
    for (const auto& x : {a, oracles::gen_perturbed_negative(a, t, {seed + 7})}) {
      const bool v = is_convex_wrt(x, t).holds;
      EXPECT_EQ(determinant_all_triples(x, t).holds, v);
      EXPECT_EQ(slope_from_all_anchors(x, t).holds, v);
    }
  }
}
