#include <gtest/gtest.h>

#include "senslab/analysis.hpp"

namespace senslab {
namespace {

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }
GroupElement t(std::int64_t k) { return GroupElement::integer(k); }

// Two points, both fixed by Z, at distance 1.
class FixedPairSystem {
 public:
  using Point = int;
  using Scalar = Rational;
  std::string name() const { return "fixed-pair"; }
  const GroupSpec& group() const { return group_; }
  Point act(const GroupElement&, const Point& p) const { return p; }
  Scalar distance(const Point& p, const Point& q) const { return p == q ? R(0) : R(1); }
  std::vector<Point> ball_sample(const Point& p, const Scalar&, std::size_t n) const {
    return n == 0 ? std::vector<Point>{} : std::vector<Point>{p};
  }
  std::vector<Point> dense_sample(std::size_t) const { return {0, 1}; }
  Scalar diameter() const { return R(1); }
  Point random_point(Rng& rng) const { return rng.coin() ? 1 : 0; }
  std::string describe(const Point& p) const { return std::to_string(p); }

 private:
  GroupSpec group_ = GroupSpec::integers();
};
static_assert(MetricSystem<FixedPairSystem>);

Resolution shift_resolution() {
  Resolution res;
  res.L_sweep = {2, 4, 8, 10};
  res.eps = {R(1, 2), R(1, 4), R(1, 8), R(1, 16)};
  res.transitivity_eps = R(1, 8);
  res.density_eps = R(1, 8);
  return res;
}

Resolution rotation_resolution() {
  Resolution res;
  res.L_sweep = {8, 16, 32, 64};
  res.eps = {R(1, 10), R(1, 20), R(1, 40)};
  res.transitivity_eps = R(1, 20);
  res.density_eps = R(1, 20);
  res.centers = 20;
  return res;
}

Resolution onepoint_resolution() {
  Resolution res;
  res.L_sweep = {2, 4, 8, 16};
  res.eps = {R(1, 2), R(1, 4), R(1, 8)};
  res.transitivity_eps = R(1, 4);
  res.density_eps = R(1, 4);
  res.centers = 6;
  return res;
}

OnePointSystem dihedral() { return OnePointSystem(GroupSpec::semidirect({"a", "ab"})); }

TEST(ResolutionTest, Validation) {
  Resolution res;
  EXPECT_NO_THROW(res.validate());
  res.eps = {R(1, 4), R(1, 2)};
  EXPECT_THROW(res.validate(), InvalidArgument);
  res = Resolution{};
  res.L_sweep = {4, 4};
  EXPECT_THROW(res.validate(), InvalidArgument);
  res = Resolution{};
  res.minimality_windows = {16};
  EXPECT_THROW(res.validate(), InvalidArgument);
}

TEST(DinfTest, Examples) {
  const RotationSystem rot;
  for (const std::size_t L : {1u, 5u, 20u}) EXPECT_NEAR(dinf_approx(rot, 0.1, 0.3, L), 0.2, 1e-12);
  const ShiftSystem shift;
  const auto p = ShiftPoint::periodic("0");
  const ShiftPoint q{"0", "000001", "0", 0};
  EXPECT_EQ(shift.distance(p, q), R(1, 32));
  EXPECT_EQ(dinf_approx(shift, p, q, 5), R(1));
  EXPECT_EQ(dinf_approx(shift, p, q, 4), R(1, 2));
  EXPECT_EQ(dinf_approx(shift, p, p, 5), R(0));
}

TEST(DinfTest, NondecreasingAndDominatesMetric) {
  const ShiftSystem shift;
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto p = shift.random_point(rng, 6), q = shift.random_point(rng, 6);
    Rational prev = shift.distance(p, q);
    for (std::size_t L = 0; L <= 8; ++L) {
      const auto d = dinf_approx(shift, p, q, L);
      EXPECT_GE(d, prev);
      prev = d;
    }
  }
}

TEST(SensitivityTest, ShiftIsSensitiveEverywhere) {
  const ShiftSystem shift;
  const auto res = shift_resolution();
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const auto rep = sensitivity_estimate(shift, shift.random_point(rng, 8), res, 5);
    EXPECT_EQ(rep.s_est, R(1));
    EXPECT_TRUE(rep.sensitive);
  }
  // At L = 4 the ball B_{1/16} (agreement on |i| <= 4) is not yet pulled apart.
  EXPECT_LT(sensitivity_estimate(shift, ShiftPoint::periodic("0"), res, 4).s_est, R(1));
}

TEST(SensitivityTest, RotationStaysWithinTwoEps) {
  const RotationSystem rot;
  const auto res = rotation_resolution();
  Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    const auto rep = sensitivity_estimate(rot, rot.random_point(rng), res, 16);
    for (const auto& row : rep.rows) EXPECT_LE(row.diameter, 2 * to_double(row.eps));
    EXPECT_FALSE(rep.sensitive);
  }
}

TEST(SensitivityTest, OnePointOnlyInfinityIsSensitive) {
  const auto sys = dihedral();
  const auto res = onepoint_resolution();
  for (const auto& p : sys.ball_points(6)) {
    const auto rep = sensitivity_estimate(sys, p, res, 8);
    if (p.is_infinity()) {
      EXPECT_GE(rep.s_est, R(1, 2));
      EXPECT_TRUE(rep.sensitive);
    } else {
      EXPECT_EQ(rep.s_est, R(0)) << sys.describe(p);
      EXPECT_FALSE(rep.sensitive);
    }
  }
}

TEST(SensitivityTest, RunningInfimumIsMonotone) {
  const auto sys = dihedral();
  const auto rep = sensitivity_estimate(sys, OnePoint::infinity(), onepoint_resolution(), 4);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) EXPECT_LE(rep.rows[i].running, rep.rows[i - 1].running);
  EXPECT_LE(rep.s_est, sys.diameter());
}

TEST(EquicontinuityTest, MatchesSensitivityVerdict) {
  const RotationSystem rot;
  for (const double x : {0.0, 0.3, 0.77}) EXPECT_TRUE(equicontinuity_test(rot, x, rotation_resolution(), 32));
  const ShiftSystem shift;
  for (const auto& p : shift.dense_sample(8)) {
    EXPECT_FALSE(equicontinuity_test(shift, p, shift_resolution(), 8));
    EXPECT_TRUE(sensitivity_estimate(shift, p, shift_resolution(), 8).sensitive);
  }
  const auto sys = dihedral();
  for (const auto& p : sys.ball_points(4)) {
    const bool eq = equicontinuity_test(sys, p, onepoint_resolution(), 16);
    EXPECT_EQ(eq, !p.is_infinity());
    EXPECT_EQ(eq, !sensitivity_estimate(sys, p, onepoint_resolution(), 16).sensitive);
  }
}

TEST(TransitivityTest, Examples) {
  const RotationSystem rot;
  auto rres = rotation_resolution();
  rres.centers = 8;
  EXPECT_TRUE(transitivity_probe(rot, rres, 40).transitive);
  const ShiftSystem shift;
  EXPECT_TRUE(transitivity_probe(shift, shift_resolution(), 7).transitive);
  const auto stub = transitivity_probe(FixedPairSystem{}, Resolution{}, 16);
  EXPECT_FALSE(stub.transitive);
  ASSERT_TRUE(stub.counterexample.has_value());
  EXPECT_NE(stub.counterexample->first, stub.counterexample->second);
  EXPECT_TRUE(transitivity_probe(dihedral(), onepoint_resolution(), 8).transitive);
}

TEST(OrbitDensityTest, Examples) {
  EXPECT_TRUE(orbit_density_probe(RotationSystem{}, rotation_resolution(), 64).minimal);
  EXPECT_FALSE(orbit_density_probe(ShiftSystem{}, shift_resolution(), 10).minimal);
  const auto op = orbit_density_probe(dihedral(), onepoint_resolution(), 16);
  EXPECT_FALSE(op.minimal);
  EXPECT_EQ(op.dense.size(), 5u);  // every center but ∞
}

TEST(ReturnSetTest, ShiftPeriodicReturns) {
  const ShiftSystem shift;
  const auto p = ShiftPoint::periodic("001");
  const auto r = return_set(shift, p, cylinder_target("001"), t(1), 7);
  EXPECT_EQ(r.exponents, (std::vector<std::int64_t>{-6, -3, 0, 3, 6}));
  const auto ball_r = return_elements(shift, p, ball_target(shift, p, R(1, 2)), 4);
  EXPECT_EQ(ball_r, (std::vector<GroupElement>{t(0), t(-3), t(3)}));
}

TEST(MinimalityTest, RotationEveryPointMinimal) {
  const RotationSystem rot;
  auto res = rotation_resolution();
  res.eps = {R(1, 8)};
  const auto rep = minimality_probe(rot, t(1), res, rot.dense_sample(20));
  EXPECT_EQ(rep.flagged().size(), 20u);
  EXPECT_DOUBLE_EQ(rep.density, 1.0);
}

TEST(MinimalityTest, ShiftPeriodicPointHasGapPeriod) {
  const ShiftSystem shift;
  const auto rep = minimality_probe(shift, t(1), shift_resolution(), {ShiftPoint::periodic("00101")});
  ASSERT_EQ(rep.points.size(), 1u);
  EXPECT_TRUE(rep.points[0].minimal);
  EXPECT_EQ(rep.points[0].windows.back().max_gap, 5);
}

TEST(MinimalityTest, OnePointOnlyInfinityUnderCommutator) {
  const auto sys = dihedral();
  const auto pts = sys.ball_points(6);
  const auto rep = minimality_probe(sys, parse_semidirect("[a,ab]"), onepoint_resolution(), pts);
  EXPECT_EQ(rep.flagged(), std::vector<std::size_t>{pts.size() - 1});
  EXPECT_TRUE(pts.back().is_infinity());
}

TEST(DeltaStarTest, Examples) {
  std::vector<std::int64_t> evens;
  for (std::int64_t i = -100; i <= 100; i += 2) evens.push_back(i);
  const auto e = delta_star_falsifier(evens, 100, 3);
  EXPECT_FALSE(e.found);
  EXPECT_EQ(e.set.size(), 2u);
  const auto ones = delta_star_falsifier({-1, 1}, 100, 10);
  EXPECT_TRUE(ones.found);
  EXPECT_EQ(ones.set, (std::vector<std::int64_t>{0, 2, 4, 6, 8, 10, 12, 14, 16, 18}));
  EXPECT_THROW(delta_star_falsifier({1}, 10, 3), InvalidArgument);
  EXPECT_THROW(delta_star_falsifier({-20, 20}, 10, 3), InvalidArgument);
}

TEST(DeltaStarTest, FactorialSublevelSetIsNotDeltaStar) {
  const auto lz = sublevel_exponents(PhiTable::factorial(), R(1, 3), 5040).symmetrized();
  const auto r = delta_star_falsifier(lz, 5040, 20);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.set.size(), 20u);
  EXPECT_TRUE(differences_avoid(r.set, lz));
  EXPECT_FALSE(differences_avoid({0, 6}, lz));
}

TEST(ReturnDifferenceTest, RotationBallTarget) {
  const RotationSystem rot;
  Rng rng(12);
  std::vector<double> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(rot.random_point(rng));
  const auto rep = lemma10_window_test(rot, xs, ball_target(rot, 0.0, 0.1), 10000, 100, rng);
  EXPECT_DOUBLE_EQ(rep.pass_rate, 1.0);
  for (const auto& row : rep.rows) EXPECT_GT(row.returns, 3000u);
}

TEST(ReturnDifferenceTest, ShiftCylinderTarget) {
  const ShiftSystem shift;
  Rng rng(13);
  std::vector<ShiftPoint> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(shift.random_point(rng, 10002));
  const auto rep = lemma10_window_test(shift, xs, cylinder_target("01"), 10000, 100, rng);
  EXPECT_DOUBLE_EQ(rep.pass_rate, 1.0);
}

TEST(ReturnDifferenceTest, NoReturnsIsAnError) {
  const ShiftSystem shift;
  Rng rng(14);
  EXPECT_THROW(lemma10_window_test(shift, {ShiftPoint::periodic("0")}, cylinder_target("11"), 100, 10, rng),
               InvalidArgument);
}

TEST(ClassifyTest, CombineVerdicts) {
  EXPECT_EQ(combine_verdicts(true, true, true, true, true), SystemClass::sensitive);
  EXPECT_EQ(combine_verdicts(true, true, true, false, true), SystemClass::minimal_equicontinuous);
  EXPECT_EQ(combine_verdicts(true, false, false, false, true), SystemClass::almost_equicontinuous_nonminimal);
  EXPECT_EQ(combine_verdicts(false, false, false, false, true), SystemClass::inconclusive);
  EXPECT_EQ(combine_verdicts(true, false, false, false, false), SystemClass::inconclusive);
  EXPECT_EQ(to_string(SystemClass::almost_equicontinuous_nonminimal), "almost-equicontinuous-nonminimal");
}

TEST(ClassifyTest, Shift) {
  const ShiftSystem shift;
  const auto rep = classify(shift, shift.dense_sample(16), HypothesisFlags{true, false}, shift_resolution());
  EXPECT_EQ(rep.cls, SystemClass::sensitive);
  EXPECT_TRUE(rep.stable);
  EXPECT_FALSE(rep.inconsistent);
  EXPECT_TRUE(rep.top().transitive);
  for (const auto& s : rep.top().sensitivity) EXPECT_GE(s.s_est, R(99, 100));
}

TEST(ClassifyTest, Rotation) {
  const RotationSystem rot;
  Rng rng(15);
  std::vector<double> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(rot.random_point(rng));
  const auto rep = classify(rot, pts, HypothesisFlags{true, false}, rotation_resolution());
  EXPECT_EQ(rep.cls, SystemClass::minimal_equicontinuous);
  EXPECT_TRUE(rep.stable);
  EXPECT_FALSE(rep.inconsistent);
  for (const auto& s : rep.top().sensitivity)
    for (const auto& row : s.rows) EXPECT_LE(row.diameter, 2 * to_double(row.eps));
}

TEST(ClassifyTest, OnePointCounterexample) {
  const auto sys = dihedral();
  const auto pts = sys.ball_points(6);
  const auto rep = classify(sys, pts, HypothesisFlags{}, onepoint_resolution());
  EXPECT_EQ(rep.cls, SystemClass::almost_equicontinuous_nonminimal);
  EXPECT_TRUE(rep.stable);
  EXPECT_FALSE(rep.inconsistent);
  EXPECT_EQ(rep.top().sensitive_points(), std::vector<std::size_t>{pts.size() - 1});
  EXPECT_TRUE(rep.top().transitive);
  EXPECT_FALSE(rep.top().minimal);
  // The same verdicts under a dichotomy hypothesis would be a contradiction.
  EXPECT_TRUE(classify(sys, pts, HypothesisFlags{false, true}, onepoint_resolution()).inconsistent);
}

TEST(ClassifyTest, StubIsInconclusive) {
  const auto rep = classify(FixedPairSystem{}, {0, 1}, HypothesisFlags{true, true}, Resolution{});
  EXPECT_EQ(rep.cls, SystemClass::inconclusive);
  EXPECT_FALSE(rep.inconsistent);
  EXPECT_THROW(classify(FixedPairSystem{}, {}, HypothesisFlags{}, Resolution{}), InvalidArgument);
}

TEST(SemicontinuityTest, Probes) {
  const ShiftSystem shift;
  for (const auto& p : shift.dense_sample(4)) EXPECT_TRUE(semicontinuity_probe(shift, p, shift_resolution(), 8).holds);
  const RotationSystem rot;
  for (const double x : {0.1, 0.5}) EXPECT_TRUE(semicontinuity_probe(rot, x, rotation_resolution(), 16).holds);
  const auto sys = dihedral();
  for (const auto& p : sys.ball_points(2)) EXPECT_TRUE(semicontinuity_probe(sys, p, onepoint_resolution(), 8).holds);
}

TEST(TransitivePointTest, EquicontinuityAgreesOnTransitivePoints) {
  const auto sys = dihedral();
  const auto rep = transitive_point_agreement(sys, sys.ball_points(3), onepoint_resolution(), 16);
  EXPECT_FALSE(rep.transitive_points.empty());
  EXPECT_TRUE(rep.agree);
  const RotationSystem rot;
  EXPECT_TRUE(transitive_point_agreement(rot, rot.dense_sample(10), rotation_resolution(), 64).agree);
}

}  // namespace
}  // namespace senslab
