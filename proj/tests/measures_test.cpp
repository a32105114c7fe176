#include <gtest/gtest.h>

#include "senslab/analysis.hpp"
#include "senslab/measures.hpp"

namespace senslab {
namespace {

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

TEST(OrbitMeasureTest, ShiftPeriodicPoints) {
  const ShiftSystem shift;
  const auto fixed = orbit_measure(shift, ShiftPoint::periodic("0"));
  ASSERT_EQ(fixed.atoms.size(), 1u);
  EXPECT_EQ(fixed.atom_mass(), R(1));
  const auto two = orbit_measure(shift, ShiftPoint::periodic("01"));
  ASSERT_EQ(two.atoms.size(), 2u);
  EXPECT_EQ(two.atom_mass(), R(1, 2));
  EXPECT_EQ(orbit_measure(shift, ShiftPoint::periodic("00101")).atoms.size(), 5u);
  // a word that is a power collapses to its primitive period
  EXPECT_EQ(orbit_measure(shift, ShiftPoint::periodic("0101")).atoms.size(), 2u);
}

TEST(OrbitMeasureTest, ExactlyInvariant) {
  const ShiftSystem shift;
  for (const auto& p : periodic_orbit_representatives(5))
    EXPECT_EQ(orbit_discrepancy(shift, orbit_measure(shift, p)), R(0)) << shift.describe(p);
  PeriodicOrbitMeasure<ShiftPoint> broken{{ShiftPoint::periodic("01")}, R(1)};
  EXPECT_EQ(orbit_discrepancy(shift, broken), R(1));
}

TEST(OrbitMeasureTest, RotationHasNoFiniteOrbit) {
  EXPECT_THROW(orbit_measure(RotationSystem{}, 0.25, 2000), CapExceeded);
  const RotationSystem quarter(0.25L);
  EXPECT_EQ(orbit_measure(quarter, 0.0).atoms.size(), 4u);
}

TEST(OrbitMeasureTest, NonPeriodicShiftPointHitsCap) {
  EXPECT_THROW(orbit_measure(ShiftSystem{}, ShiftPoint{"0", "1", "0", 0}, 50), CapExceeded);
}

TEST(PeriodicOrbitsTest, LyndonRepresentatives) {
  std::vector<std::string> words;
  for (const auto& p : periodic_orbit_representatives(3)) words.push_back(p.window(0, p.right.size()));
  EXPECT_EQ(words, (std::vector<std::string>{"0", "1", "01", "001", "011"}));
  // number of binary necklaces of primitive period <= 6: 2 + 1 + 2 + 3 + 6 + 9
  EXPECT_EQ(periodic_orbit_representatives(6).size(), 23u);
}

TEST(MixtureTest, PeriodsUpToThreeCoverLengthThreeCylinders) {
  const ShiftSystem shift;
  const auto mu = periodic_mixture(shift, 3, 3);
  EXPECT_EQ(mu.total(), R(1));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_GT(mu.mass[i], R(0)) << mu.cell_name(i);
  // "000": the fixed point, plus 1/3 of the orbit of ...001001...
  EXPECT_EQ(mu.mass[0], R(1, 5));
  EXPECT_EQ(mu.mass[5], R(1, 10) + R(1, 15));  // "101": half of ...0101..., a third of ...011011...
}

TEST(MixtureTest, SingleAndErrors) {
  const auto a = point_cylinder("01");
  EXPECT_EQ(mixture({a}, {R(1)}), a);
  EXPECT_THROW(mixture(std::vector<CylinderMeasure>{}, {}), InvalidArgument);
  EXPECT_THROW(mixture({a, a}, {R(1)}), InvalidArgument);
  EXPECT_THROW(mixture({a, a}, {R(1, 2), R(1, 3)}), InvalidArgument);
  EXPECT_THROW(mixture({a, a}, {R(3, 2), R(-1, 2)}), InvalidArgument);
  EXPECT_THROW(mixture({a, point_cylinder("011")}, {R(1, 2), R(1, 2)}), InvalidArgument);
  const auto l = lebesgue_arcs(10);
  EXPECT_EQ(mixture({l, l}, {0.25, 0.75}).mass, l.mass);
}

TEST(InvarianceTest, Shift) {
  const ShiftSystem shift;
  for (const std::size_t l : {2u, 3u, 4u, 6u}) {
    const auto rep = invariance_check(shift, periodic_mixture(shift, 3, l));
    EXPECT_EQ(rep.discrepancy, R(0));
    EXPECT_TRUE(rep.invariant(0));
  }
  const auto bad = invariance_check(shift, point_cylinder("01"));
  EXPECT_EQ(bad.discrepancy, R(1));
  EXPECT_FALSE(bad.invariant(0));
}

TEST(InvarianceTest, MixturePreservesInvariance) {
  const ShiftSystem shift;
  const auto inv = periodic_mixture(shift, 2, 3);
  auto bad = point_cylinder("011");
  const auto d_bad = invariance_check(shift, bad).discrepancy;
  const auto d_mix = invariance_check(shift, mixture({inv, bad}, {R(3, 4), R(1, 4)})).discrepancy;
  EXPECT_LE(d_mix, d_bad);
  EXPECT_GT(d_mix, R(0));
}

TEST(InvarianceTest, RotationArcs) {
  const RotationSystem rot;
  for (const std::size_t m : {10u, 64u, 1000u}) {
    const auto rep = invariance_check(rot, lebesgue_arcs(m));
    EXPECT_LE(rep.discrepancy, 1e-12);
    EXPECT_DOUBLE_EQ(rep.bound, 2.0 / static_cast<double>(m));
    EXPECT_TRUE(rep.invariant(1e-9));
  }
  ArcMeasure lumpy = lebesgue_arcs(10);
  lumpy.mass[0] += 0.05;
  lumpy.mass[5] -= 0.05;
  EXPECT_GT(invariance_check(rot, lumpy).discrepancy, 0.0);
}

TEST(FullSupportTest, Shift) {
  const ShiftSystem shift;
  EXPECT_EQ(support_length(R(1, 4)), 3u);
  EXPECT_EQ(support_length(R(1, 3)), 3u);
  EXPECT_EQ(support_length(R(1)), 1u);
  EXPECT_EQ(support_length(R(2)), 0u);
  for (const std::size_t l : {2u, 3u, 4u}) {
    const Rational eps(1, std::int64_t{1} << (l - 1));
    EXPECT_TRUE(full_support_check(periodic_mixture(shift, l, l), eps)) << l;
    EXPECT_TRUE(full_support_check(periodic_mixture(shift, l, l + 2), eps)) << l;
  }
  EXPECT_FALSE(full_support_check(periodic_mixture(shift, 2, 3), R(1, 4)));
  EXPECT_FALSE(full_support_check(discretize(orbit_measure(shift, ShiftPoint::periodic("0")), 4), R(1, 4)));
  EXPECT_TRUE(full_support_check(discretize(orbit_measure(shift, ShiftPoint::periodic("0")), 4), R(2)));
  EXPECT_THROW(full_support_check(periodic_mixture(shift, 3, 3), R(1, 8)), InvalidArgument);
}

TEST(FullSupportTest, Rotation) {
  EXPECT_TRUE(full_support_check(lebesgue_arcs(100), 0.05));
  const RotationSystem quarter(0.25L);
  EXPECT_FALSE(full_support_check(discretize(orbit_measure(quarter, 0.0), 100), 0.05));
  EXPECT_THROW(full_support_check(lebesgue_arcs(10), 0.05), InvalidArgument);
}

TEST(MeasureCheckTest, FeedsClassifier) {
  const ShiftSystem shift;
  const auto check = check_measure(shift, periodic_mixture(shift, 3, 3), R(1, 4));
  EXPECT_TRUE(check.holds());
  EXPECT_EQ(check.discrepancy, 0.0);
  EXPECT_FALSE(check_measure(shift, point_cylinder("011"), R(1, 4)).holds());
  EXPECT_TRUE(check_measure(RotationSystem{}, lebesgue_arcs(100), 0.05).holds());

  Resolution res;
  res.L_sweep = {2, 4, 8, 10};
  res.eps = {R(1, 2), R(1, 4), R(1, 8), R(1, 16)};
  res.transitivity_eps = R(1, 8);
  res.density_eps = R(1, 8);
  const auto rep = classify(shift, shift.dense_sample(16), HypothesisFlags{check.holds(), false}, res);
  EXPECT_EQ(rep.cls, SystemClass::sensitive);
  EXPECT_FALSE(rep.inconsistent);
}

TEST(MeasureJsonTest, RoundTrip) {
  const auto mu = periodic_mixture(ShiftSystem{}, 3, 3);
  const nlohmann::json j = mu;
  EXPECT_EQ(j.at("cells").at("000"), "1/5");
  EXPECT_EQ(j.at("cells").size(), 8u);
  EXPECT_EQ(j.get<CylinderMeasure>(), mu);
  const auto arcs = lebesgue_arcs(4);
  const nlohmann::json ja = arcs;
  EXPECT_EQ(ja.at("partition"), "arc");
  EXPECT_EQ(ja.get<ArcMeasure>(), arcs);
  EXPECT_THROW(nlohmann::json(mu).get<ArcMeasure>(), InvalidArgument);
}

}  // namespace
}  // namespace senslab
