#pragma once
// Compact metric G-systems with exact (or double precision) points: the
// irrational rotation, the two-sided binary shift on eventually periodic
// sequences, the one-point compactification of a finitely generated group,
// and an integer orbit inside a norm completion.
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "senslab/group.hpp"
#include "senslab/norms.hpp"
#include "senslab/rational.hpp"
#include "senslab/rng.hpp"

namespace senslab {

/// Requirements shared by every system the analyzers accept. Scalar is the
/// distance type: double for the rotation, Rational elsewhere.
template <class S>
concept MetricSystem = requires(const S& s, const typename S::Point& p, const GroupElement& g,
                                const typename S::Scalar& eps, std::size_t n, Rng& rng) {
  typename S::Point;
  typename S::Scalar;
  { s.name() } -> std::convertible_to<std::string>;
  { s.group() } -> std::convertible_to<const GroupSpec&>;
  { s.act(g, p) } -> std::same_as<typename S::Point>;
  { s.distance(p, p) } -> std::same_as<typename S::Scalar>;
  { s.ball_sample(p, eps, n) } -> std::same_as<std::vector<typename S::Point>>;
  { s.dense_sample(n) } -> std::same_as<std::vector<typename S::Point>>;
  { s.diameter() } -> std::same_as<typename S::Scalar>;
  { s.random_point(rng) } -> std::same_as<typename S::Point>;
  { s.describe(p) } -> std::same_as<std::string>;
};

/// Systems that can build extra points of B_eps(v) whose orbit reaches
/// B_eps(u) (used by the transitivity probe).
template <class S>
concept BridgingSystem = MetricSystem<S> && requires(const S& s, const typename S::Point& p,
                                                     const typename S::Scalar& eps) {
  { s.bridge_points(p, p, eps) } -> std::same_as<std::vector<typename S::Point>>;
};

template <class T>
T scalar_from(const Rational& r) {
  if constexpr (std::is_same_v<T, double>)
    return to_double(r);
  else
    return r;
}

inline double scalar_to_double(double x) { return x; }
inline double scalar_to_double(const Rational& x) { return to_double(x); }

/// Verdict tolerance: the configured value for double systems, exact otherwise.
template <class T>
T scalar_tolerance(double tol) {
  if constexpr (std::is_same_v<T, double>)
    return tol;
  else
    return T(0);
}

// ---------------------------------------------------------------------------

/// x ↦ x + nα on R/Z.
class RotationSystem {
 public:
  using Point = double;
  using Scalar = double;

  /// (sqrt 5 - 1) / 2
  static long double golden();

  explicit RotationSystem(long double alpha = golden());

  std::string name() const { return "rotation"; }
  const GroupSpec& group() const { return group_; }
  long double alpha() const { return alpha_; }

  Point act(const GroupElement& g, const Point& x) const;
  Scalar distance(const Point& x, const Point& y) const;
  /// p, then p ± eps·k/(m+1) alternately for k = 1..m.
  std::vector<Point> ball_sample(const Point& p, const Scalar& eps, std::size_t n) const;
  /// {i/n : 0 <= i < n}
  std::vector<Point> dense_sample(std::size_t n) const;
  Scalar diameter() const { return 0.5; }
  Point random_point(Rng& rng) const { return rng.uniform01(); }
  std::string describe(const Point& x) const;

 private:
  long double alpha_;
  GroupSpec group_;
};

// ---------------------------------------------------------------------------

/// Eventually periodic bi-infinite binary sequence: `left` repeats to the
/// left of `offset`, `center` occupies [offset, offset + |center|), `right`
/// repeats after it. Words hold the characters '0' and '1'.
struct ShiftPoint {
  std::string left = "0";
  std::string center;
  std::string right = "0";
  std::int64_t offset = 0;

  /// Purely periodic point with x_i = word[i mod |word|].
  static ShiftPoint periodic(const std::string& word);

  int at(std::int64_t i) const;
  /// x_i ... x_{i+len-1}
  std::string window(std::int64_t i, std::size_t len) const;
};

/// Two-sided full shift with (n.x)_i = x_{i+n} and d(x, y) = 2^-min{|i| : x_i != y_i}.
class ShiftSystem {
 public:
  using Point = ShiftPoint;
  using Scalar = Rational;

  /// complexity: longest tail period used by ball_sample; sample_radius:
  /// half-width of the random block drawn by random_point.
  explicit ShiftSystem(std::size_t complexity = 2, std::int64_t sample_radius = 32);

  std::string name() const { return "shift"; }
  const GroupSpec& group() const { return group_; }

  Point act(const GroupElement& g, const Point& x) const;
  /// Throws CapExceeded when the first disagreement lies beyond |i| = 62.
  Scalar distance(const Point& x, const Point& y) const;
  /// Distinct points of the open ball: p first, then p's central block with
  /// every pair of tails of period <= complexity.
  std::vector<Point> ball_sample(const Point& p, const Scalar& eps, std::size_t n) const;
  /// The 2^k periodic points of period k aligned at 0, 2^k <= n maximal
  /// (the zero sequence when n < 2).
  std::vector<Point> dense_sample(std::size_t n) const;
  Scalar diameter() const { return Scalar(1); }
  Point random_point(Rng& rng) const { return random_point(rng, sample_radius_); }
  /// Fair coin flips on [-radius, radius], periodic tails of period one.
  Point random_point(Rng& rng, std::int64_t radius) const;
  std::string describe(const Point& x) const;

  /// A point of B_eps(v) that agrees with u's central block after the shift
  /// by 2r+1, where B_eps is agreement on |i| <= r.
  std::vector<Point> bridge_points(const Point& u, const Point& v, const Scalar& eps) const;

  /// r with B_eps(x) = {y : y_i = x_i for |i| <= r}; -1 when the ball is everything.
  static std::int64_t agreement_radius(const Scalar& eps);

 private:
  std::size_t complexity_;
  std::int64_t sample_radius_;
  GroupSpec group_;
};

bool same_sequence(const ShiftPoint& x, const ShiftPoint& y);

// ---------------------------------------------------------------------------

/// A group element or the point at infinity.
struct OnePoint {
  std::optional<GroupElement> element;

  static OnePoint infinity() { return {}; }
  static OnePoint at(const GroupElement& g) { return {g}; }
  bool is_infinity() const { return !element.has_value(); }
  bool operator==(const OnePoint&) const = default;
};

/// G ∪ {∞} with ψ(g) = 1/(1 + |g|_S), d(g, h) = ψ(g) + ψ(h) for g != h,
/// d(g, ∞) = ψ(g). G acts by left multiplication and fixes ∞.
class OnePointSystem {
 public:
  using Point = OnePoint;
  using Scalar = Rational;

  /// Word lengths are known up to `cutoff`; anything beyond throws CapExceeded.
  explicit OnePointSystem(GroupSpec spec, std::size_t cutoff = 256, std::size_t sample_radius = 6);

  std::string name() const { return "onepoint"; }
  const GroupSpec& group() const { return spec_; }
  const WordLengthTable& lengths() const { return lengths_; }

  Scalar psi(const Point& p) const;
  Point act(const GroupElement& g, const Point& p) const;
  Scalar distance(const Point& p, const Point& q) const;
  /// p, then ∞ and group elements in breadth-first order that lie within eps.
  std::vector<Point> ball_sample(const Point& p, const Scalar& eps, std::size_t n) const;
  /// The first n-1 elements in breadth-first order, then ∞.
  std::vector<Point> dense_sample(std::size_t n) const;
  /// ball(radius) in breadth-first order, then ∞.
  std::vector<Point> ball_points(std::size_t radius) const;
  Scalar diameter() const { return Scalar(2); }
  /// Uniform over ball(sample_radius) ∪ {∞}.
  Point random_point(Rng& rng) const;
  std::string describe(const Point& p) const;

 private:
  GroupSpec spec_;
  WordLengthTable lengths_;
  std::size_t sample_radius_;
};

// ---------------------------------------------------------------------------

/// The orbit of t^0 inside the completion of Z under a φ-induced invariant
/// metric. Points are exponents; the completion itself stays implicit.
class NormCompletionSystem {
 public:
  using Point = std::int64_t;
  using Scalar = Rational;

  /// Distances are tabulated for exponent differences up to `range`.
  NormCompletionSystem(const PhiTable& phi, std::int64_t range);

  std::string name() const { return "normcompletion"; }
  const GroupSpec& group() const { return group_; }
  const NormTable& norms() const { return table_; }
  static constexpr bool completion_is_implicit() { return true; }

  Point act(const GroupElement& g, const Point& m) const;
  Scalar distance(const Point& a, const Point& b) const;
  std::vector<Point> ball_sample(const Point& p, const Scalar& eps, std::size_t n) const;
  /// 0, 1, -1, 2, -2, ...
  std::vector<Point> dense_sample(std::size_t n) const;
  Scalar diameter() const;
  Point random_point(Rng& rng) const;
  std::string describe(const Point& m) const { return "t^" + std::to_string(m); }

 private:
  NormTable table_;
  GroupSpec group_;
};

static_assert(MetricSystem<RotationSystem>);
static_assert(BridgingSystem<ShiftSystem>);
static_assert(MetricSystem<OnePointSystem>);
static_assert(MetricSystem<NormCompletionSystem>);

}  // namespace senslab
