#include "senslab/norms.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include "senslab/errors.hpp"

namespace senslab {

std::int64_t factorial(int n) {
  if (n < 0 || n > 20) throw InvalidArgument("factorial argument out of range");
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// ---------------------------------------------------------------------------

PhiTable::PhiTable(std::map<std::int64_t, Rational> entries, Rational default_cost)
    : default_cost_(default_cost) {
  if (default_cost_ <= Rational(0)) throw InvalidArgument("default cost must be positive");
  for (const auto& [k, cost] : entries) {
    if (cost < Rational(0)) throw InvalidArgument("costs must be nonnegative");
    if (k == 0) {
      if (cost != Rational(0)) throw InvalidArgument("φ(t^0) must be 0");
      continue;
    }
    if (cost == Rational(0)) throw InvalidArgument("φ vanishes only at the identity");
    const std::int64_t key = k < 0 ? -k : k;
    const auto [it, inserted] = entries_.emplace(key, cost);
    if (!inserted && it->second != cost)
      throw InvalidArgument("φ is not symmetric at ±" + std::to_string(key));
  }
}

PhiTable PhiTable::factorial(int n_max) {
  if (n_max < 1 || n_max > 12) throw InvalidArgument("n_max must be in 1..12");
  std::map<std::int64_t, Rational> entries;
  // n = 0 and n = 1 both name t^1; the n = 1 cost 1/2 is the one kept.
  for (int n = 1; n <= n_max; ++n) entries[senslab::factorial(n)] = Rational(1, n + 1);
  return PhiTable(std::move(entries), Rational(1));
}

PhiTable PhiTable::constant_one() { return PhiTable({}, Rational(1)); }

Rational PhiTable::operator()(std::int64_t k) const {
  if (k == 0) return Rational(0);
  const auto it = entries_.find(k < 0 ? -k : k);
  return it == entries_.end() ? default_cost_ : it->second;
}

void to_json(nlohmann::json& j, const PhiTable& phi) {
  j = nlohmann::json::object();
  j["default"] = to_string(phi.default_cost_);
  auto entries = nlohmann::json::array();
  for (const auto& [k, cost] : phi.entries_) entries.push_back({{"k", k}, {"cost", to_string(cost)}});
  j["entries"] = std::move(entries);
}

void from_json(const nlohmann::json& j, PhiTable& phi) {
  std::map<std::int64_t, Rational> entries;
  for (const auto& e : j.at("entries")) {
    const auto k = e.at("k").get<std::int64_t>();
    const auto cost = parse_rational(e.at("cost").get<std::string>());
    const std::int64_t key = k < 0 ? -k : k;
    const auto [it, inserted] = entries.emplace(key, cost);
    if (!inserted && it->second != cost) throw InvalidArgument("φ is not symmetric at ±" + std::to_string(key));
  }
  phi = PhiTable(std::move(entries), parse_rational(j.at("default").get<std::string>()));
}

Rational phi_eval(const PhiTable& phi, const GroupElement& g) { return phi(g.int_value()); }

// ---------------------------------------------------------------------------

std::int64_t required_window(const PhiTable& phi, std::int64_t m) {
  const std::int64_t a = m < 0 ? -m : m;
  if (a == 0) return 0;
  const auto it = phi.entries().lower_bound(a);
  return 2 * (it == phi.entries().end() ? a : it->first);
}

namespace {

struct Step {
  std::int64_t delta;
  Rational cost;
};

// Listed steps cheaper than the default cost that fit in the window.
std::vector<Step> cheap_steps(const PhiTable& phi, std::int64_t window) {
  std::vector<Step> steps;
  for (const auto& [k, cost] : phi.entries()) {
    if (cost >= phi.default_cost() || k > 2 * window) continue;
    steps.push_back({k, cost});
    steps.push_back({-k, cost});
  }
  return steps;
}

// Canonical witness order: larger |step| first, positive before negative.
bool witness_less(std::int64_t x, std::int64_t y) {
  const auto ax = x < 0 ? -x : x, ay = y < 0 ? -y : y;
  if (ax != ay) return ax > ay;
  return x > y;
}

struct Label {
  Rational cost;
  std::size_t steps = 0;
  std::vector<std::int64_t> witness;
  bool reached = false;
};

bool label_less(const Rational& c1, std::size_t s1, const std::vector<std::int64_t>& w1, const Label& l) {
  if (!l.reached) return true;
  if (c1 != l.cost) return c1 < l.cost;
  if (s1 != l.steps) return s1 < l.steps;
  return w1 < l.witness;
}

// Least-cost search from 0 over [-window, window]. Stops early once `target`
// is settled if one is given.
std::vector<Label> least_cost_field(const PhiTable& phi, std::int64_t window, std::optional<std::int64_t> target) {
  const std::size_t size = static_cast<std::size_t>(2 * window + 1);
  std::vector<Label> labels(size);
  std::vector<bool> settled(size, false);
  const auto index = [window](std::int64_t v) { return static_cast<std::size_t>(v + window); };
  const auto steps = cheap_steps(phi, window);

  using Entry = std::tuple<Rational, std::size_t, std::int64_t>;
  const auto greater = [](const Entry& a, const Entry& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) > std::get<1>(b);
    return std::get<2>(a) > std::get<2>(b);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(greater)> queue(greater);
  labels[index(0)] = {Rational(0), 0, {}, true};
  queue.emplace(Rational(0), 0, 0);

  while (!queue.empty()) {
    const auto [cost, count, node] = queue.top();
    queue.pop();
    auto& here = labels[index(node)];
    if (settled[index(node)] || cost != here.cost || count != here.steps) continue;
    settled[index(node)] = true;
    if (target && node == *target) break;
    for (const auto& step : steps) {
      const std::int64_t next = node + step.delta;
      if (next < -window || next > window || settled[index(next)]) continue;
      const Rational next_cost = cost + step.cost;
      auto& there = labels[index(next)];
      if (there.reached && next_cost > there.cost) continue;
      std::vector<std::int64_t> witness = here.witness;
      witness.insert(std::upper_bound(witness.begin(), witness.end(), step.delta, witness_less), step.delta);
      if (!label_less(next_cost, count + 1, witness, there)) continue;
      const bool push = !there.reached || next_cost != there.cost || count + 1 != there.steps;
      there = {next_cost, count + 1, std::move(witness), true};
      if (push) queue.emplace(next_cost, count + 1, next);
    }
  }
  return labels;
}

NormValue finish(const PhiTable& phi, std::int64_t m, const Label& label) {
  NormValue v;
  v.exact = m == 0 || std::none_of(phi.entries().begin(), phi.entries().end(),
                                   [&](const auto& e) { return e.second < phi.default_cost(); });
  if (m == 0) {
    v.value = 0;
    return v;
  }
  if (label.reached && label.cost < phi.default_cost()) {
    v.value = label.cost;
    v.witness = label.witness;
  } else {
    v.value = phi.default_cost();
    v.witness = {m};
  }
  return v;
}

}  // namespace

NormValue norm_eval(const PhiTable& phi, std::int64_t m, std::int64_t window) {
  const std::int64_t need = required_window(phi, m);
  if (window < need || window < (m < 0 ? -m : m))
    throw WindowTooSmall("window " + std::to_string(window) + " is below the required " + std::to_string(need) +
                         " for exponent " + std::to_string(m));
  if (m == 0) return finish(phi, 0, {});
  const auto labels = least_cost_field(phi, window, m);
  return finish(phi, m, labels[static_cast<std::size_t>(m + window)]);
}

NormValue norm_eval(const PhiTable& phi, std::int64_t m) { return norm_eval(phi, m, required_window(phi, m)); }

Rational norm_oracle(const PhiTable& phi, std::int64_t m, int max_factors) {
  if (max_factors < 0 || max_factors > 6) throw InvalidArgument("oracle factor bound must be in 0..6");
  if (m == 0) return 0;
  std::vector<Step> steps;
  for (const auto& [k, cost] : phi.entries()) {
    steps.push_back({k, cost});
    steps.push_back({-k, cost});
  }
  Rational best = phi.default_cost();
  // Every multiset of at most max_factors steps, as nondecreasing index tuples.
  std::vector<std::size_t> pick;
  const auto visit = [&](auto&& self, std::size_t from, std::int64_t sum, Rational cost) -> void {
    if (sum == m && !pick.empty() && cost < best) best = cost;
    if (static_cast<int>(pick.size()) == max_factors) return;
    for (std::size_t i = from; i < steps.size(); ++i) {
      pick.push_back(i);
      self(self, i, sum + steps[i].delta, cost + steps[i].cost);
      pick.pop_back();
    }
  };
  visit(visit, 0, 0, Rational(0));
  return best;
}

NormTable::NormTable(const PhiTable& phi, std::int64_t range) : phi_(phi), range_(range) {
  if (range < 0) throw InvalidArgument("range must be nonnegative");
  values_.resize(static_cast<std::size_t>(2 * range + 1));
  std::map<std::int64_t, std::vector<std::int64_t>> by_window;
  for (std::int64_t m = -range; m <= range; ++m) by_window[required_window(phi, m)].push_back(m);
  for (const auto& [window, members] : by_window) {
    if (window == 0) {
      for (const auto m : members) values_[static_cast<std::size_t>(m + range)] = finish(phi, m, {});
      continue;
    }
    const auto labels = least_cost_field(phi, window, std::nullopt);
    for (const auto m : members)
      values_[static_cast<std::size_t>(m + range)] = finish(phi, m, labels[static_cast<std::size_t>(m + window)]);
  }
}

const NormValue& NormTable::at(std::int64_t m) const {
  if (m < -range_ || m > range_)
    throw InvalidArgument("exponent " + std::to_string(m) + " outside the table range " + std::to_string(range_));
  return values_[static_cast<std::size_t>(m + range_)];
}

Rational invariant_metric(const NormTable& norms, std::int64_t a, std::int64_t b) { return norms.at(b - a).value; }

// ---------------------------------------------------------------------------

std::vector<std::int64_t> SublevelSet::symmetrized() const {
  std::vector<std::int64_t> out;
  out.reserve(2 * exponents.size());
  for (auto it = exponents.rbegin(); it != exponents.rend(); ++it) out.push_back(-*it);
  out.insert(out.end(), exponents.begin(), exponents.end());
  return out;
}

SublevelSet sublevel_exponents(const PhiTable& phi, const Rational& eps, std::int64_t window) {
  if (window < 1) throw InvalidArgument("window must be positive");
  const NormTable table(phi, window);
  SublevelSet set{eps, window, {}};
  for (std::int64_t i = 1; i <= window; ++i)
    if (table.at(i).value < eps) set.exponents.push_back(i);
  return set;
}

ContainmentReport interval_containment_check(int n, const SublevelSet& set) {
  if (n < 2) throw InvalidArgument("interval containment needs n >= 2");
  ContainmentReport report;
  report.n = n;
  report.window = set.window;
  for (const auto i : set.exponents) {
    ++report.checked;
    bool inside = false;
    // k!(a - 1/n) <= i <= k!(a + 1/n)  <=>  k!(an - 1) <= n i <= k!(an + 1)
    for (int k = n; !inside; ++k) {
      const std::int64_t f = factorial(k);
      if (f * (n - 1) > n * i) break;  // the a = 1 interval already starts past i
      for (std::int64_t a = 1; a <= k + 1 && !inside; ++a)
        inside = f * (a * n - 1) <= n * i && n * i <= f * (a * n + 1);
    }
    if (!inside) report.violations.push_back(i);
  }
  return report;
}

ContainmentReport interval_containment_check(int n, std::int64_t window, const PhiTable& phi) {
  return interval_containment_check(n, sublevel_exponents(phi, Rational(1, n), window));
}

// ---------------------------------------------------------------------------

WindowSetReport syndetic_window(const std::vector<std::int64_t>& set, std::int64_t window) {
  if (set.empty()) throw InvalidArgument("syndeticity of an empty set is undefined");
  std::vector<std::int64_t> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.front() < -window || sorted.back() > window)
    throw InvalidArgument("set leaves the window [-" + std::to_string(window) + ", " + std::to_string(window) + "]");
  WindowSetReport r;
  r.window = window;
  r.size = sorted.size();
  sorted.insert(sorted.begin(), -window - 1);
  sorted.push_back(window + 1);
  r.gap_start = sorted.front();
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] > r.max_gap) {
      r.max_gap = sorted[i] - sorted[i - 1];
      r.gap_start = sorted[i - 1];
    }
  return r;
}

SyndeticTrend syndetic_trend(const std::vector<std::int64_t>& set, const std::vector<std::int64_t>& windows) {
  if (windows.empty()) throw InvalidArgument("no windows given");
  if (!std::is_sorted(windows.begin(), windows.end()) ||
      std::adjacent_find(windows.begin(), windows.end()) != windows.end())
    throw InvalidArgument("windows must be strictly increasing");
  SyndeticTrend t;
  for (const auto w : windows) {
    std::vector<std::int64_t> inside;
    for (const auto x : set)
      if (x >= -w && x <= w) inside.push_back(x);
    if (inside.empty()) {
      // No members: the whole window is one gap.
      t.windows.push_back({w, 0, 2 * w + 2, -w - 1});
    } else {
      t.windows.push_back(syndetic_window(inside, w));
    }
  }
  const bool growing = t.windows.size() >= 2 && t.windows.back().max_gap > t.windows[t.windows.size() - 2].max_gap;
  t.trend = growing ? GapTrend::growing : GapTrend::bounded;
  const auto& last = t.windows.back();
  t.verdict = growing ? "gap >= " + std::to_string(last.max_gap) + ", unbounded trend"
                      : "syndetic at scale " + std::to_string(last.window) + " with gap bound " +
                            std::to_string(last.max_gap);
  return t;
}

RecurrenceReport detect_recurrence(const PhiTable& phi, int n_max) {
  if (n_max < 1 || n_max > 8) throw InvalidArgument("n_max must be in 1..8");
  const std::int64_t limit = factorial(n_max);
  const NormTable table(phi, limit);
  RecurrenceReport report;
  Rational record = phi.default_cost();
  for (std::int64_t m = 1; m <= limit; ++m) {
    const auto& v = table.at(m);
    if (v.value < record) {
      record = v.value;
      report.witnesses.push_back({m, v});
    }
  }
  return report;
}

std::string to_string(CompactnessVerdict v) {
  return v == CompactnessVerdict::compact_consistent ? "completion compact-consistent" : "non-compact-consistent";
}

CompactnessReport compactness_diagnostic(const PhiTable& phi, const Rational& eps,
                                         const std::vector<std::int64_t>& windows) {
  if (windows.empty()) throw InvalidArgument("no windows given");
  const auto set = sublevel_exponents(phi, eps, *std::max_element(windows.begin(), windows.end()));
  CompactnessReport r;
  r.eps = eps;
  // The identity always lies in the sublevel set.
  auto members = set.symmetrized();
  members.insert(std::lower_bound(members.begin(), members.end(), 0), 0);
  r.trend = syndetic_trend(members, windows);
  r.verdict = r.trend.trend == GapTrend::growing ? CompactnessVerdict::non_compact_consistent
                                                 : CompactnessVerdict::compact_consistent;
  return r;
}

}  // namespace senslab
