#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "senslab/errors.hpp"
#include "senslab/systems.hpp"

namespace senslab {

/// Uniform measure of total mass `weight` on a finite orbit.
template <class Point>
struct PeriodicOrbitMeasure {
  std::vector<Point> atoms;
  Rational weight{1};

  Rational atom_mass() const { return weight / static_cast<std::int64_t>(atoms.size()); }
};

/// Orbit of p under the group generators and their inverses, found by BFS
/// with exact point equality (distance 0). Throws CapExceeded when more than
/// `cap` distinct points turn up.
template <MetricSystem S>
PeriodicOrbitMeasure<typename S::Point> orbit_measure(const S& sys, const typename S::Point& p,
                                                      std::size_t cap = 10000) {
  using Scalar = typename S::Scalar;
  std::vector<GroupElement> moves;
  for (const auto& g : sys.group().generators()) {
    moves.push_back(g);
    moves.push_back(inverse(g));
  }
  PeriodicOrbitMeasure<typename S::Point> mu;
  const auto known = [&](const typename S::Point& q) {
    for (const auto& a : mu.atoms)
      if (sys.distance(a, q) == Scalar(0)) return true;
    return false;
  };
  mu.atoms.push_back(p);
  std::deque<typename S::Point> frontier{p};
  while (!frontier.empty()) {
    const auto x = frontier.front();
    frontier.pop_front();
    for (const auto& g : moves) {
      auto y = sys.act(g, x);
      if (known(y)) continue;
      if (mu.atoms.size() >= cap)
        throw CapExceeded("orbit of " + sys.describe(p) + " has more than " + std::to_string(cap) + " points");
      mu.atoms.push_back(y);
      frontier.push_back(std::move(y));
    }
  }
  return mu;
}

/// Max over generators g (and inverses) and atoms a of |mu({a}) - mu(g^-1.{a})|.
/// Zero exactly when the action permutes the atoms.
template <MetricSystem S>
Rational orbit_discrepancy(const S& sys, const PeriodicOrbitMeasure<typename S::Point>& mu) {
  using Scalar = typename S::Scalar;
  Rational worst(0);
  for (const auto& g0 : sys.group().generators())
    for (const auto& g : {g0, inverse(g0)})
      for (const auto& a : mu.atoms) {
        std::int64_t pre = 0;
        for (const auto& b : mu.atoms)
          if (sys.distance(sys.act(g, b), a) == Scalar(0)) ++pre;
        const Rational diff = mu.atom_mass() * (1 - pre);
        worst = std::max(worst, diff < Rational(0) ? -diff : diff);
      }
  return worst;
}

// ---------------------------------------------------------------------------

enum class PartitionKind { cylinder, arc };

/// Cell masses on a finite partition: the 2^l cylinders [w] = {x : x_0..x_{l-1} = w}
/// of the shift, indexed by w read as a binary number, or the m arcs
/// [i/m, (i+1)/m) of the circle.
template <class Mass>
struct DiscretizedMeasure {
  PartitionKind kind = PartitionKind::cylinder;
  std::size_t resolution = 0;
  std::vector<Mass> mass;

  std::string cell_name(std::size_t i) const;
  Mass total() const {
    Mass s(0);
    for (const auto& m : mass) s += m;
    return s;
  }
  bool operator==(const DiscretizedMeasure&) const = default;
};

using CylinderMeasure = DiscretizedMeasure<Rational>;
using ArcMeasure = DiscretizedMeasure<double>;

template <class Mass>
std::string DiscretizedMeasure<Mass>::cell_name(std::size_t i) const {
  if (kind == PartitionKind::arc) return std::to_string(i);
  std::string w(resolution, '0');
  for (std::size_t k = 0; k < resolution; ++k)
    if ((i >> (resolution - 1 - k)) & 1) w[k] = '1';
  return w;
}

/// Throws InvalidArgument for l = 0 or l > 20.
CylinderMeasure empty_cylinders(std::size_t l);
/// Mass 1 on the single cylinder [word].
CylinderMeasure point_cylinder(const std::string& word);
/// Cell masses of an orbit measure on the length-l cylinders.
CylinderMeasure discretize(const PeriodicOrbitMeasure<ShiftPoint>& mu, std::size_t l);

ArcMeasure lebesgue_arcs(std::size_t m);
ArcMeasure discretize(const PeriodicOrbitMeasure<double>& mu, std::size_t m);

/// Weighted sum. Weights must be positive and sum to 1 (exactly for
/// cylinders, within 1e-12 for arcs); all partitions must match.
CylinderMeasure mixture(const std::vector<CylinderMeasure>& measures, const std::vector<Rational>& weights);
ArcMeasure mixture(const std::vector<ArcMeasure>& measures, const std::vector<double>& weights);

/// One periodic point per shift orbit of minimal period <= max_period
/// (Lyndon words, in length-lexicographic order).
std::vector<ShiftPoint> periodic_orbit_representatives(std::size_t max_period);

/// Equal-weight mixture of the counting measures on every orbit of period
/// <= max_period, on cylinders of length l.
CylinderMeasure periodic_mixture(const ShiftSystem& sys, std::size_t max_period, std::size_t l);

template <class Mass>
struct InvarianceReport {
  /// max over cells A and generators g of |mu(A) - mu(g^-1.A)|
  Mass discrepancy{};
  /// Accounting error allowed on top of the discrepancy (0 when exact).
  Mass bound{};
  bool invariant(double tol) const;
};

/// Shift by +-1. The preimage of a length-(l-1) cylinder is resolved exactly
/// on the length-l partition, so this compares sum_b mu(wb) with sum_b mu(bw).
InvarianceReport<Rational> invariance_check(const ShiftSystem& sys, const CylinderMeasure& mu);
/// Rotation by each generator. Preimage arcs straddle two cells and take a
/// proportional share of each; the report's bound is 2 * max cell mass.
InvarianceReport<double> invariance_check(const RotationSystem& sys, const ArcMeasure& mu);

/// Cylinder length that stands in for an eps-ball: ceil(log2(1/eps)) + 1.
std::size_t support_length(const Rational& eps);

/// Every eps-ball around the dense_sample points has positive mass at the
/// partition's resolution. For cylinders the ball is the forward cylinder
/// of length support_length(eps); for arcs it is the union of arcs inside
/// (x - eps, x + eps) for x = i/m. Throws InvalidArgument when the partition
/// is coarser than eps.
bool full_support_check(const CylinderMeasure& mu, const Rational& eps);
bool full_support_check(const ArcMeasure& mu, double eps);

/// Invariance and full support together: the measure hypothesis of the
/// classifier.
struct MeasureCheck {
  std::string label;
  double discrepancy = 0;
  double bound = 0;
  bool invariant = false;
  bool full_support = false;
  bool holds() const { return invariant && full_support; }
};

MeasureCheck check_measure(const ShiftSystem& sys, const CylinderMeasure& mu, const Rational& eps);
MeasureCheck check_measure(const RotationSystem& sys, const ArcMeasure& mu, double eps, double tol = 1e-9);

/// {"partition": "cylinder"|"arc", "resolution": n, "cells": {name: mass}};
/// cylinder masses are "p/q" strings, arc masses numbers.
void to_json(nlohmann::json& j, const CylinderMeasure& mu);
void to_json(nlohmann::json& j, const ArcMeasure& mu);
void from_json(const nlohmann::json& j, CylinderMeasure& mu);
void from_json(const nlohmann::json& j, ArcMeasure& mu);

}  // namespace senslab
