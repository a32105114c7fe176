#pragma once

// Symmetric norms on Z = <t> induced by a cost function φ:
//   ‖h‖ = inf { φ(h1) + ... + φ(hn) : h1 ··· hn = h }
// together with sublevel-set and syndeticity diagnostics.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "senslab/group.hpp"
#include "senslab/rational.hpp"

namespace senslab {

/// Symmetric cost function on Z. Listed exponents k carry an explicit cost
/// (mirrored to -k); every other nonzero exponent costs `default_cost`.
class PhiTable {
 public:
  /// Constant cost 1 off the identity.
  PhiTable() : default_cost_(1) {}
  PhiTable(std::map<std::int64_t, Rational> entries, Rational default_cost);

  /// φ(t^{n!}) = φ(t^{-n!}) = 1/(n+1) for 1 <= n <= n_max, φ(t^0) = 0, φ = 1 elsewhere.
  static PhiTable factorial(int n_max = 7);
  /// φ = 1 off the identity.
  static PhiTable constant_one();

  Rational operator()(std::int64_t k) const;
  const Rational& default_cost() const { return default_cost_; }
  /// Positive listed exponents with their costs.
  const std::map<std::int64_t, Rational>& entries() const { return entries_; }

  friend void to_json(nlohmann::json& j, const PhiTable& phi);
  friend void from_json(const nlohmann::json& j, PhiTable& phi);

 private:
  std::map<std::int64_t, Rational> entries_;
  Rational default_cost_;
};

/// φ(g) for g ∈ Z. Throws KindMismatch for other groups.
Rational phi_eval(const PhiTable& phi, const GroupElement& g);

struct NormValue {
  Rational value;
  /// Factors (as exponents of t) whose φ-costs sum to `value`; empty for the
  /// identity, a single factor m when the default cost wins.
  std::vector<std::int64_t> witness;
  /// False when the infimum was searched only inside a window [-W, W]
  /// (supported by the interval analysis, not proved); true for the identity
  /// and for tables with no step cheaper than the default cost.
  bool exact = false;
};

/// Smallest window that norm_eval accepts for |m|: 2·s where s is the least
/// listed step >= |m| (2·K! for the factorial table), or 2|m| if none.
std::int64_t required_window(const PhiTable& phi, std::int64_t m);

/// ‖t^m‖ via least-cost search over steps ±k (listed k) with exact rational
/// costs, restricted to [-W, W], then capped by the default cost. Ties are
/// broken by fewer steps, then the lexicographically smaller witness.
/// Throws WindowTooSmall when W < required_window(phi, m).
NormValue norm_eval(const PhiTable& phi, std::int64_t m, std::int64_t window);
NormValue norm_eval(const PhiTable& phi, std::int64_t m);

/// Brute force: minimum of Σφ over all factorizations of m into at most
/// `max_factors` listed steps, capped by the default cost.
Rational norm_oracle(const PhiTable& phi, std::int64_t m, int max_factors);

/// Precomputed norms for every exponent with |m| <= range, each evaluated in
/// its own required window (identical to calling norm_eval per exponent).
class NormTable {
 public:
  NormTable(const PhiTable& phi, std::int64_t range);
  std::int64_t range() const { return range_; }
  const NormValue& at(std::int64_t m) const;
  const PhiTable& phi() const { return phi_; }

 private:
  PhiTable phi_;
  std::int64_t range_;
  std::vector<NormValue> values_;  // index m + range
};

/// d(t^a, t^b) = ‖t^(b-a)‖
Rational invariant_metric(const NormTable& norms, std::int64_t a, std::int64_t b);

struct SublevelSet {
  Rational eps;
  std::int64_t window = 0;
  /// i in (0, W] with ‖t^i‖ < eps, ascending.
  std::vector<std::int64_t> exponents;

  /// {i : i ∈ I or -i ∈ I}, ascending.
  std::vector<std::int64_t> symmetrized() const;
};

SublevelSet sublevel_exponents(const PhiTable& phi, const Rational& eps, std::int64_t window);

struct ContainmentReport {
  int n = 0;
  std::int64_t window = 0;
  std::size_t checked = 0;
  std::vector<std::int64_t> violations;
  bool contained() const { return violations.empty(); }
};

/// Checks that every i with ‖t^i‖ < 1/n, 0 < i <= W, lies in
/// ⋃_{k>=n} ⋃_{a=1}^{k+1} [k!(a - 1/n), k!(a + 1/n)]  (factorial φ).
ContainmentReport interval_containment_check(int n, std::int64_t window, const PhiTable& phi = PhiTable::factorial());
/// Same, for an already computed sublevel set with eps = 1/n.
ContainmentReport interval_containment_check(int n, const SublevelSet& set);

struct WindowSetReport {
  std::int64_t window = 0;
  std::size_t size = 0;
  /// Largest distance between consecutive members, with -W-1 and W+1
  /// counted as members so that empty stretches at the edges show up.
  std::int64_t max_gap = 0;
  /// Point after which the largest gap opens (may be -W-1).
  std::int64_t gap_start = 0;
};

/// Gap statistics for a subset of [-W, W]. Throws InvalidArgument when the
/// set is empty or leaves the window.
WindowSetReport syndetic_window(const std::vector<std::int64_t>& set, std::int64_t window);

enum class GapTrend { bounded, growing };

struct SyndeticTrend {
  std::vector<WindowSetReport> windows;
  GapTrend trend = GapTrend::bounded;
  /// "syndetic at scale W with gap bound b" or "gap >= b, unbounded trend"
  std::string verdict;
};

/// Compares max gaps across nested windows; the set is restricted to each
/// window in turn. Growing iff the max gap strictly increases at the last step.
SyndeticTrend syndetic_trend(const std::vector<std::int64_t>& set, const std::vector<std::int64_t>& windows);

struct RecurrenceWitness {
  std::int64_t exponent = 0;
  NormValue norm;
};

struct RecurrenceReport {
  /// Record lows of ‖t^m‖ for m = 1, 2, ...: strictly increasing m,
  /// strictly decreasing norm, each below the default cost.
  std::vector<RecurrenceWitness> witnesses;
  bool decreasing_trend() const { return witnesses.size() >= 2; }
};

/// Scans m = 1 .. n_max! for record-low norms.
RecurrenceReport detect_recurrence(const PhiTable& phi, int n_max);

enum class CompactnessVerdict { compact_consistent, non_compact_consistent };

std::string to_string(CompactnessVerdict v);

struct CompactnessReport {
  Rational eps;
  SyndeticTrend trend;
  CompactnessVerdict verdict = CompactnessVerdict::compact_consistent;
};

/// Syndeticity of the symmetrized sublevel set {‖t^i‖ < eps} across
/// increasing windows.
CompactnessReport compactness_diagnostic(const PhiTable& phi, const Rational& eps,
                                         const std::vector<std::int64_t>& windows);

std::int64_t factorial(int n);

}  // namespace senslab
