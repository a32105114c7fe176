#pragma once
// Finite-resolution analyzers. Every "for all g ∈ G" is truncated to the
// word ball of radius L; open sets are replaced by the finite samples that
// each system's ball_sample returns.
#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "senslab/errors.hpp"
#include "senslab/group.hpp"
#include "senslab/norms.hpp"
#include "senslab/rational.hpp"
#include "senslab/rng.hpp"
#include "senslab/systems.hpp"

namespace senslab {

struct Resolution {
  /// Word-ball radii, strictly increasing.
  std::vector<std::size_t> L_sweep{2, 4, 8, 16};
  /// Strictly decreasing, positive.
  std::vector<Rational> eps{Rational(1, 2), Rational(1, 4), Rational(1, 8)};
  /// δ candidates for the equicontinuity test; empty means reuse eps.
  std::vector<Rational> delta;
  /// Points drawn from each ball.
  std::size_t samples = 16;
  /// Tie tolerance for double-valued systems.
  double tolerance = 1e-9;
  Rational transitivity_eps{1, 4};
  Rational density_eps{1, 4};
  /// dense_sample size used as ball centers and as the density net.
  std::size_t centers = 8;
  /// Nested windows for the return-time gap test, strictly increasing.
  std::vector<std::int64_t> minimality_windows{16, 32, 64};

  const std::vector<Rational>& delta_grid() const { return delta.empty() ? eps : delta; }
  /// Throws InvalidArgument on an empty or unordered grid.
  void validate() const;
};

inline std::string to_string_scalar(const Rational& r) { return to_string(r); }
std::string to_string_scalar(double x);

template <class P>
struct Target {
  std::function<bool(const P&)> contains;
  std::string description;
};

/// The open ball B_radius(center).
template <MetricSystem S>
Target<typename S::Point> ball_target(const S& sys, const typename S::Point& center, const typename S::Scalar& radius) {
  return {[&sys, center, radius](const typename S::Point& y) { return sys.distance(center, y) < radius; },
          "B(" + sys.describe(center) + ", " + to_string_scalar(radius) + ")"};
}

/// {x : x_start ... x_{start+|word|-1} = word}
Target<ShiftPoint> cylinder_target(const std::string& word, std::int64_t start = 0);

// ---------------------------------------------------------------------------

namespace detail {

template <MetricSystem S>
typename S::Scalar sampled_diameter(const S& sys, const std::vector<typename S::Point>& pts) {
  typename S::Scalar best(0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, sys.distance(pts[i], pts[j]));
  return best;
}

template <MetricSystem S>
std::vector<typename S::Point> translate(const S& sys, const GroupElement& g, const std::vector<typename S::Point>& pts) {
  std::vector<typename S::Point> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(sys.act(g, p));
  return out;
}

}  // namespace detail

/// max over g ∈ ball(L) of d(g.p, g.q)
template <MetricSystem S>
typename S::Scalar dinf_approx(const S& sys, const typename S::Point& p, const typename S::Point& q, std::size_t L) {
  typename S::Scalar best(0);
  for (const auto& g : ball(sys.group(), L)) best = std::max(best, sys.distance(sys.act(g, p), sys.act(g, q)));
  return best;
}

template <class Scalar>
struct EpsilonRow {
  Rational eps;
  /// max over g of the sampled diameter of g.B_eps(p)
  Scalar diameter;
  /// Infimum of `diameter` over this and all larger eps.
  Scalar running;
};

template <class Scalar>
struct SensitivityReport {
  std::size_t L = 0;
  std::vector<EpsilonRow<Scalar>> rows;
  /// Running infimum at the smallest eps.
  Scalar s_est{};
  /// s_est > 2·eps_min + tolerance: no isometric spreading of B_eps accounts for it.
  bool sensitive = false;
};

namespace detail {

template <MetricSystem S>
SensitivityReport<typename S::Scalar> sensitivity_on(const S& sys, const typename S::Point& p, const Resolution& res,
                                                     std::size_t L, const std::vector<GroupElement>& gs) {
  using Scalar = typename S::Scalar;
  SensitivityReport<Scalar> rep;
  rep.L = L;
  for (const auto& e : res.eps) {
    const auto sample = sys.ball_sample(p, scalar_from<Scalar>(e), res.samples);
    Scalar diam(0);
    for (const auto& g : gs) diam = std::max(diam, sampled_diameter(sys, translate(sys, g, sample)));
    const Scalar running = rep.rows.empty() ? diam : std::min(diam, rep.rows.back().running);
    rep.rows.push_back({e, diam, running});
  }
  rep.s_est = rep.rows.back().running;
  const Scalar threshold = scalar_from<Scalar>(Rational(2) * res.eps.back()) + scalar_tolerance<Scalar>(res.tolerance);
  rep.sensitive = rep.s_est > threshold;
  return rep;
}

template <MetricSystem S>
bool equicontinuous_on(const S& sys, const typename S::Point& p, const Resolution& res,
                       const std::vector<GroupElement>& gs) {
  using Scalar = typename S::Scalar;
  for (const auto& e : res.eps) {
    const Scalar eps = scalar_from<Scalar>(e);
    bool found = false;
    for (const auto& d : res.delta_grid()) {
      bool ok = true;
      const auto sample = sys.ball_sample(p, scalar_from<Scalar>(d), res.samples);
      for (std::size_t gi = 0; gi < gs.size() && ok; ++gi) {
        const auto gp = sys.act(gs[gi], p);
        for (const auto& y : sample)
          if (!(sys.distance(gp, sys.act(gs[gi], y)) < eps)) {
            ok = false;
            break;
          }
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

template <MetricSystem S>
bool orbit_dense_on(const S& sys, const typename S::Point& x, const std::vector<typename S::Point>& net,
                    const typename S::Scalar& eps, const std::vector<GroupElement>& gs) {
  std::vector<typename S::Point> orbit;
  orbit.reserve(gs.size());
  for (const auto& g : gs) orbit.push_back(sys.act(g, x));
  for (const auto& z : net) {
    const bool hit = std::any_of(orbit.begin(), orbit.end(), [&](const auto& y) { return sys.distance(y, z) < eps; });
    if (!hit) return false;
  }
  return true;
}

}  // namespace detail

/// Sampled sensitivity constant of p at word radius L.
template <MetricSystem S>
SensitivityReport<typename S::Scalar> sensitivity_estimate(const S& sys, const typename S::Point& p,
                                                           const Resolution& res, std::size_t L) {
  res.validate();
  return detail::sensitivity_on(sys, p, res, L, ball(sys.group(), L));
}

/// For every eps some δ keeps d(g.p, g.y) < eps for all g ∈ ball(L) and all
/// sampled y ∈ B_δ(p).
template <MetricSystem S>
bool equicontinuity_test(const S& sys, const typename S::Point& p, const Resolution& res, std::size_t L) {
  res.validate();
  return detail::equicontinuous_on(sys, p, res, ball(sys.group(), L));
}

struct TransitivityReport {
  std::size_t L = 0;
  bool transitive = false;
  std::size_t pairs = 0;
  /// Indices (u, v) into the center list for the first pair with no
  /// g ∈ ball(L) carrying a sampled point of B(v) into B(u).
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
};

namespace detail {

template <MetricSystem S>
TransitivityReport transitivity_on(const S& sys, const Resolution& res, std::size_t L,
                                   const std::vector<GroupElement>& gs) {
  using Scalar = typename S::Scalar;
  const Scalar eps = scalar_from<Scalar>(res.transitivity_eps);
  const auto centers = sys.dense_sample(res.centers);
  TransitivityReport rep;
  rep.L = L;
  rep.transitive = true;
  for (std::size_t ui = 0; ui < centers.size(); ++ui)
    for (std::size_t vi = 0; vi < centers.size(); ++vi) {
      ++rep.pairs;
      auto vs = sys.ball_sample(centers[vi], eps, res.samples);
      if constexpr (BridgingSystem<S>) {
        for (auto& y : sys.bridge_points(centers[ui], centers[vi], eps)) vs.push_back(std::move(y));
      }
      bool hit = false;
      for (std::size_t gi = 0; gi < gs.size() && !hit; ++gi)
        for (const auto& y : vs)
          if (sys.distance(sys.act(gs[gi], y), centers[ui]) < eps) {
            hit = true;
            break;
          }
      if (!hit) {
        rep.transitive = false;
        rep.counterexample = {ui, vi};
        return rep;
      }
    }
  return rep;
}

}  // namespace detail

/// Over all ordered pairs of dense_sample centers (u, v): some g ∈ ball(L)
/// maps a sampled point of B(v) into B(u), at scale transitivity_eps.
template <MetricSystem S>
TransitivityReport transitivity_probe(const S& sys, const Resolution& res, std::size_t L) {
  res.validate();
  return detail::transitivity_on(sys, res, L, ball(sys.group(), L));
}

struct OrbitDensityReport {
  std::size_t L = 0;
  /// Every sampled orbit is density_eps-dense against the dense_sample net.
  bool minimal = false;
  /// Indices of centers whose orbit is dense.
  std::vector<std::size_t> dense;
};

/// Orbit density of every dense_sample center under ball(L).
template <MetricSystem S>
OrbitDensityReport orbit_density_probe(const S& sys, const Resolution& res, std::size_t L) {
  res.validate();
  using Scalar = typename S::Scalar;
  const auto gs = ball(sys.group(), L);
  const auto net = sys.dense_sample(res.centers);
  OrbitDensityReport rep;
  rep.L = L;
  for (std::size_t i = 0; i < net.size(); ++i)
    if (detail::orbit_dense_on(sys, net[i], net, scalar_from<Scalar>(res.density_eps), gs)) rep.dense.push_back(i);
  rep.minimal = !net.empty() && rep.dense.size() == net.size();
  return rep;
}

// ---------------------------------------------------------------------------

/// {n ∈ [-W, W] : g0^n.x ∈ A}
struct ReturnSet {
  std::string target;
  std::int64_t window = 0;
  std::vector<std::int64_t> exponents;
};

template <MetricSystem S>
ReturnSet return_set(const S& sys, const typename S::Point& x, const Target<typename S::Point>& target,
                     const GroupElement& g0, std::int64_t window) {
  if (window < 0) throw InvalidArgument("return window must be nonnegative");
  ReturnSet r{target.description, window, {}};
  for (std::int64_t n = -window; n <= window; ++n)
    if (target.contains(sys.act(power(g0, n), x))) r.exponents.push_back(n);
  return r;
}

/// {g ∈ ball(L) : g.x ∈ A}
template <MetricSystem S>
std::vector<GroupElement> return_elements(const S& sys, const typename S::Point& x,
                                          const Target<typename S::Point>& target, std::size_t L) {
  std::vector<GroupElement> out;
  for (const auto& g : ball(sys.group(), L))
    if (target.contains(sys.act(g, x))) out.push_back(g);
  return out;
}

struct PointMinimality {
  std::size_t index = 0;
  std::string point;
  /// Gap statistics of the return times per nested window.
  std::vector<WindowSetReport> windows;
  bool minimal = false;
};

struct MinimalityReport {
  std::string generator;
  Rational eps;
  std::vector<PointMinimality> points;
  /// Fraction of points flagged minimal.
  double density = 0;

  std::vector<std::size_t> flagged() const;
};

/// x is minimal for <g0> at resolution when the largest return-time gap to
/// B_eps(x), window edges included, does not grow between the last two
/// windows. eps is the smallest grid value.
template <MetricSystem S>
MinimalityReport minimality_probe(const S& sys, const GroupElement& g0, const Resolution& res,
                                  const std::vector<typename S::Point>& points) {
  res.validate();
  using Scalar = typename S::Scalar;
  MinimalityReport rep;
  rep.generator = to_string(g0);
  rep.eps = res.eps.back();
  const std::int64_t wmax = res.minimality_windows.back();
  for (std::size_t i = 0; i < points.size(); ++i) {
    PointMinimality pm;
    pm.index = i;
    pm.point = sys.describe(points[i]);
    const auto r = return_set(sys, points[i], ball_target(sys, points[i], scalar_from<Scalar>(rep.eps)), g0, wmax);
    for (const auto w : res.minimality_windows) {
      std::vector<std::int64_t> inside;
      for (const auto n : r.exponents)
        if (n >= -w && n <= w) inside.push_back(n);
      pm.windows.push_back(syndetic_window(inside, w));
    }
    const auto& last = pm.windows.back();
    const auto& prev = pm.windows[pm.windows.size() - 2];
    pm.minimal = last.max_gap <= prev.max_gap;
    rep.points.push_back(std::move(pm));
  }
  const auto flagged = rep.flagged().size();
  rep.density = points.empty() ? 0.0 : static_cast<double>(flagged) / static_cast<double>(points.size());
  return rep;
}

// ---------------------------------------------------------------------------

struct DeltaStarResult {
  bool found = false;
  /// Greedy set {0 = g_0 < g_1 < ...} with pairwise differences outside LZ.
  std::vector<std::int64_t> set;
  std::int64_t window = 0;
};

/// Greedy search over 0, 1, ..., W for k integers whose differences avoid
/// the symmetric set LZ ⊆ [-W, W]. Throws InvalidArgument if LZ is not
/// symmetric or leaves the window.
DeltaStarResult delta_star_falsifier(const std::vector<std::int64_t>& lz, std::int64_t window, std::size_t k);

/// Exhaustive check that s - t ∉ LZ for all distinct s, t ∈ S.
bool differences_avoid(const std::vector<std::int64_t>& set, const std::vector<std::int64_t>& lz);

struct Lemma10Row {
  std::size_t point = 0;
  std::size_t returns = 0;
  std::size_t trials = 0;
  std::size_t passes = 0;
};

struct Lemma10Report {
  std::string target;
  std::int64_t window = 0;
  std::size_t set_size = 0;
  std::vector<Lemma10Row> rows;
  double pass_rate = 0;
};

namespace detail {
/// Fraction of random S ⊆ [-W, W], |S| = set_size, with some s != t and
/// s - t ∈ R - R.
Lemma10Row lemma10_trials(const std::vector<std::int64_t>& returns, std::int64_t window, std::size_t trials,
                          std::size_t set_size, Rng& rng);
}  // namespace detail

/// For each x, R = return_set(x, A) under the first generator on [-W, W],
/// then `trials` random S of size set_size are tested for
/// SS^-1 ∩ RR^-1 != ∅ off the diagonal. Throws InvalidArgument when some x
/// has no returns.
template <MetricSystem S>
Lemma10Report lemma10_window_test(const S& sys, const std::vector<typename S::Point>& xs,
                                  const Target<typename S::Point>& target, std::int64_t window, std::size_t trials,
                                  Rng& rng, std::size_t set_size = 10) {
  if (set_size < 2) throw InvalidArgument("difference sets need at least two elements");
  if (static_cast<std::int64_t>(set_size) > 2 * window + 1) throw InvalidArgument("window too small for the set size");
  Lemma10Report rep;
  rep.target = target.description;
  rep.window = window;
  rep.set_size = set_size;
  const GroupElement g0 = sys.group().generators().at(0);
  std::size_t passes = 0, total = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto r = return_set(sys, xs[i], target, g0, window);
    if (r.exponents.empty())
      throw InvalidArgument("no returns to " + target.description + " within window " + std::to_string(window));
    auto row = detail::lemma10_trials(r.exponents, window, trials, set_size, rng);
    row.point = i;
    passes += row.passes;
    total += row.trials;
    rep.rows.push_back(row);
  }
  rep.pass_rate = total == 0 ? 0.0 : static_cast<double>(passes) / static_cast<double>(total);
  return rep;
}

// ---------------------------------------------------------------------------

enum class SystemClass { sensitive, minimal_equicontinuous, almost_equicontinuous_nonminimal, inconclusive };
std::string_view to_string(SystemClass c);

struct HypothesisFlags {
  /// An invariant measure of full support was supplied and checked.
  bool invariant_measure = false;
  /// Nice generating set with dense minimal points for each generator.
  bool dense_minimal_points = false;

  bool any() const { return invariant_measure || dense_minimal_points; }
};

template <class Scalar>
struct LevelVerdicts {
  std::size_t L = 0;
  bool transitive = false;
  bool minimal = false;
  bool equicontinuous = false;
  bool sensitive = false;
  SystemClass cls = SystemClass::inconclusive;
  std::vector<SensitivityReport<Scalar>> sensitivity;  // per point
  std::vector<bool> equicontinuous_points;             // per point
  TransitivityReport transitivity;
  OrbitDensityReport density;

  std::vector<std::size_t> sensitive_points() const;
  bool same_verdicts(const LevelVerdicts& o) const {
    return transitive == o.transitive && minimal == o.minimal && equicontinuous == o.equicontinuous &&
           sensitive == o.sensitive && cls == o.cls;
  }
};

template <class Scalar>
std::vector<std::size_t> LevelVerdicts<Scalar>::sensitive_points() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sensitivity.size(); ++i)
    if (sensitivity[i].sensitive) out.push_back(i);
  return out;
}

template <class Scalar>
struct ClassificationReport {
  std::vector<std::string> points;
  std::vector<LevelVerdicts<Scalar>> levels;
  HypothesisFlags flags;
  /// Class at the largest L.
  SystemClass cls = SystemClass::inconclusive;
  /// All verdicts agree at the two largest L.
  bool stable = false;
  /// A hypothesis flag holds, the system is transitive, and it is neither
  /// minimal-equicontinuous nor sensitive.
  bool inconsistent = false;

  const LevelVerdicts<Scalar>& top() const { return levels.back(); }
};

SystemClass combine_verdicts(bool transitive, bool minimal, bool equicontinuous, bool sensitive,
                             bool some_equicontinuous_point);

/// Runs every probe at each L of the sweep on the given sample points.
template <MetricSystem S>
ClassificationReport<typename S::Scalar> classify(const S& sys, const std::vector<typename S::Point>& points,
                                                  const HypothesisFlags& flags, const Resolution& res) {
  res.validate();
  if (points.empty()) throw InvalidArgument("classification needs at least one sample point");
  using Scalar = typename S::Scalar;
  ClassificationReport<Scalar> rep;
  rep.flags = flags;
  for (const auto& p : points) rep.points.push_back(sys.describe(p));
  for (const auto L : res.L_sweep) {
    const auto gs = ball(sys.group(), L);
    LevelVerdicts<Scalar> lv;
    lv.L = L;
    for (const auto& p : points) {
      lv.sensitivity.push_back(detail::sensitivity_on(sys, p, res, L, gs));
      lv.equicontinuous_points.push_back(detail::equicontinuous_on(sys, p, res, gs));
    }
    lv.sensitive = std::all_of(lv.sensitivity.begin(), lv.sensitivity.end(), [](const auto& s) { return s.sensitive; });
    lv.equicontinuous =
        std::all_of(lv.equicontinuous_points.begin(), lv.equicontinuous_points.end(), [](bool b) { return b; });
    const bool some_eq =
        std::any_of(lv.equicontinuous_points.begin(), lv.equicontinuous_points.end(), [](bool b) { return b; });
    lv.transitivity = detail::transitivity_on(sys, res, L, gs);
    lv.transitive = lv.transitivity.transitive;
    lv.density = orbit_density_probe(sys, res, L);
    lv.minimal = lv.density.minimal;
    lv.cls = combine_verdicts(lv.transitive, lv.minimal, lv.equicontinuous, lv.sensitive, some_eq);
    rep.levels.push_back(std::move(lv));
  }
  const auto& top = rep.levels.back();
  rep.cls = top.cls;
  rep.stable = rep.levels.size() >= 2 && top.same_verdicts(rep.levels[rep.levels.size() - 2]);
  rep.inconsistent = flags.any() && top.transitive && top.cls != SystemClass::minimal_equicontinuous && !top.sensitive;
  return rep;
}

// ---------------------------------------------------------------------------

template <class Scalar>
struct SemicontinuityReport {
  Scalar at_point{};
  /// s_est at the nearest sampled neighbour, for each eps that has one.
  std::vector<Scalar> nearby;
  /// max over neighbours found in the finer half of the eps grid <= at_point + tolerance
  bool holds = true;
};

/// Upper semicontinuity of the sampled sensitivity constant along q -> p.
template <MetricSystem S>
SemicontinuityReport<typename S::Scalar> semicontinuity_probe(const S& sys, const typename S::Point& p,
                                                              const Resolution& res, std::size_t L) {
  using Scalar = typename S::Scalar;
  const auto gs = ball(sys.group(), L);
  SemicontinuityReport<Scalar> rep;
  rep.at_point = detail::sensitivity_on(sys, p, res, L, gs).s_est;
  // Only the finer half of the grid counts toward the limsup; a point that is
  // isolated at those scales satisfies the inequality trivially.
  std::optional<Scalar> limsup;
  for (std::size_t i = 0; i < res.eps.size(); ++i) {
    const auto near = sys.ball_sample(p, scalar_from<Scalar>(res.eps[i]), 2);
    if (near.size() < 2) continue;
    const auto s = detail::sensitivity_on(sys, near[1], res, L, gs).s_est;
    rep.nearby.push_back(s);
    if (i >= res.eps.size() / 2 && (!limsup || *limsup < s)) limsup = s;
  }
  if (limsup) rep.holds = *limsup <= rep.at_point + scalar_tolerance<Scalar>(res.tolerance);
  return rep;
}

struct TransitivePointReport {
  /// Points whose orbit is density_eps-dense against the dense_sample net.
  std::vector<std::size_t> transitive_points;
  std::vector<bool> equicontinuous;
  /// All transitive points share one equicontinuity verdict.
  bool agree = true;
};

template <MetricSystem S>
TransitivePointReport transitive_point_agreement(const S& sys, const std::vector<typename S::Point>& points,
                                                 const Resolution& res, std::size_t L) {
  using Scalar = typename S::Scalar;
  const auto gs = ball(sys.group(), L);
  const auto net = sys.dense_sample(res.centers);
  TransitivePointReport rep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!detail::orbit_dense_on(sys, points[i], net, scalar_from<Scalar>(res.density_eps), gs)) continue;
    rep.transitive_points.push_back(i);
    rep.equicontinuous.push_back(detail::equicontinuous_on(sys, points[i], res, gs));
  }
  rep.agree = std::adjacent_find(rep.equicontinuous.begin(), rep.equicontinuous.end(), std::not_equal_to<>()) ==
              rep.equicontinuous.end();
  return rep;
}

}  // namespace senslab
