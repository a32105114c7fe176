#include "senslab/analysis.hpp"

#include <cstdio>
#include <set>

namespace senslab {

void Resolution::validate() const {
  if (L_sweep.empty()) throw InvalidArgument("L sweep is empty");
  for (std::size_t i = 0; i < L_sweep.size(); ++i) {
    if (L_sweep[i] < 1) throw InvalidArgument("L must be at least 1");
    if (i > 0 && L_sweep[i] <= L_sweep[i - 1]) throw InvalidArgument("L sweep must be strictly increasing");
  }
  if (eps.empty()) throw InvalidArgument("eps grid is empty");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] <= Rational(0)) throw InvalidArgument("eps values must be positive");
    if (i > 0 && eps[i] >= eps[i - 1]) throw InvalidArgument("eps grid must be strictly decreasing");
  }
  for (const auto& d : delta)
    if (d <= Rational(0)) throw InvalidArgument("delta values must be positive");
  if (samples < 1) throw InvalidArgument("ball samples must be at least 1");
  if (transitivity_eps <= Rational(0) || density_eps <= Rational(0))
    throw InvalidArgument("probe scales must be positive");
  if (minimality_windows.size() < 2) throw InvalidArgument("minimality needs at least two nested windows");
  for (std::size_t i = 0; i < minimality_windows.size(); ++i) {
    if (minimality_windows[i] < 1) throw InvalidArgument("minimality windows must be positive");
    if (i > 0 && minimality_windows[i] <= minimality_windows[i - 1])
      throw InvalidArgument("minimality windows must be strictly increasing");
  }
}

std::string to_string_scalar(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Target<ShiftPoint> cylinder_target(const std::string& word, std::int64_t start) {
  if (word.empty()) throw InvalidArgument("cylinder word is empty");
  for (const char c : word)
    if (c != '0' && c != '1') throw InvalidArgument("cylinder words use the characters 0 and 1");
  return {[word, start](const ShiftPoint& x) { return x.window(start, word.size()) == word; },
          "[" + word + "]@" + std::to_string(start)};
}

std::vector<std::size_t> MinimalityReport::flagged() const {
  std::vector<std::size_t> out;
  for (const auto& p : points)
    if (p.minimal) out.push_back(p.index);
  return out;
}

namespace {

// Membership table for a subset of [-W, W].
class WindowMask {
 public:
  WindowMask(const std::vector<std::int64_t>& set, std::int64_t window)
      : window_(window), bits_(static_cast<std::size_t>(2 * window + 1), false) {
    for (const auto v : set) {
      if (v < -window || v > window) throw InvalidArgument("set leaves the window");
      bits_[static_cast<std::size_t>(v + window)] = true;
    }
  }
  bool contains(std::int64_t v) const {
    return v >= -window_ && v <= window_ && bits_[static_cast<std::size_t>(v + window_)];
  }

 private:
  std::int64_t window_;
  std::vector<bool> bits_;
};

}  // namespace

DeltaStarResult delta_star_falsifier(const std::vector<std::int64_t>& lz, std::int64_t window, std::size_t k) {
  if (window < 0) throw InvalidArgument("window must be nonnegative");
  const WindowMask mask(lz, window);
  for (const auto v : lz)
    if (!mask.contains(-v)) throw InvalidArgument("LZ is not symmetric at " + std::to_string(v));
  DeltaStarResult r;
  r.window = window;
  if (k == 0) {
    r.found = true;
    return r;
  }
  r.set.push_back(0);
  for (std::int64_t g = 1; g <= window && r.set.size() < k; ++g)
    if (std::none_of(r.set.begin(), r.set.end(), [&](std::int64_t s) { return mask.contains(g - s); }))
      r.set.push_back(g);
  r.found = r.set.size() >= k;
  return r;
}

bool differences_avoid(const std::vector<std::int64_t>& set, const std::vector<std::int64_t>& lz) {
  const std::set<std::int64_t> l(lz.begin(), lz.end());
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = 0; j < set.size(); ++j)
      if (i != j && l.contains(set[i] - set[j])) return false;
  return true;
}

namespace detail {

Lemma10Row lemma10_trials(const std::vector<std::int64_t>& returns, std::int64_t window, std::size_t trials,
                          std::size_t set_size, Rng& rng) {
  // R - R as a mask over [-2W, 2W]
  std::vector<bool> diff(static_cast<std::size_t>(4 * window + 1), false);
  for (const auto a : returns)
    for (const auto b : returns) diff[static_cast<std::size_t>(a - b + 2 * window)] = true;
  Lemma10Row row;
  row.returns = returns.size();
  row.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::int64_t> s;
    while (s.size() < set_size) {
      const auto v = rng.uniform_int(-window, window);
      if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
    }
    bool hit = false;
    for (std::size_t i = 0; i < s.size() && !hit; ++i)
      for (std::size_t j = 0; j < s.size() && !hit; ++j)
        hit = i != j && diff[static_cast<std::size_t>(s[i] - s[j] + 2 * window)];
    if (hit) ++row.passes;
  }
  return row;
}

}  // namespace detail

std::string_view to_string(SystemClass c) {
  switch (c) {
    case SystemClass::sensitive:
      return "sensitive";
    case SystemClass::minimal_equicontinuous:
      return "minimal-equicontinuous";
    case SystemClass::almost_equicontinuous_nonminimal:
      return "almost-equicontinuous-nonminimal";
    case SystemClass::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

SystemClass combine_verdicts(bool transitive, bool minimal, bool equicontinuous, bool sensitive,
                             bool some_equicontinuous_point) {
  if (sensitive) return SystemClass::sensitive;
  if (minimal && equicontinuous) return SystemClass::minimal_equicontinuous;
  // A transitive system with one equicontinuity point is almost equicontinuous.
  if (transitive && some_equicontinuous_point && !minimal) return SystemClass::almost_equicontinuous_nonminimal;
  return SystemClass::inconclusive;
}

}  // namespace senslab
