#include "senslab/measures.hpp"

#include <algorithm>
#include <cmath>

namespace senslab {

namespace {

Rational abs_diff(const Rational& a, const Rational& b) { return a < b ? b - a : a - b; }

std::size_t word_index(const std::string& w) {
  std::size_t i = 0;
  for (const char c : w) i = 2 * i + (c == '1' ? 1 : 0);
  return i;
}

template <class Mass, class W>
DiscretizedMeasure<Mass> mix(const std::vector<DiscretizedMeasure<Mass>>& measures, const std::vector<W>& weights,
                             const W& total_tol) {
  if (measures.empty()) throw InvalidArgument("mixture of no measures");
  if (measures.size() != weights.size())
    throw InvalidArgument("mixture: " + std::to_string(measures.size()) + " measures but " +
                          std::to_string(weights.size()) + " weights");
  W sum(0);
  for (const auto& w : weights) {
    if (!(W(0) < w)) throw InvalidArgument("mixture weights must be positive");
    sum += w;
  }
  const W off = sum < W(1) ? W(1) - sum : sum - W(1);
  if (total_tol < off) throw InvalidArgument("mixture weights must sum to 1");
  DiscretizedMeasure<Mass> out{measures[0].kind, measures[0].resolution,
                               std::vector<Mass>(measures[0].mass.size(), Mass(0))};
  for (std::size_t k = 0; k < measures.size(); ++k) {
    const auto& mu = measures[k];
    if (mu.kind != out.kind || mu.resolution != out.resolution)
      throw InvalidArgument("mixture of measures on different partitions");
    for (std::size_t i = 0; i < mu.mass.size(); ++i) out.mass[i] += weights[k] * mu.mass[i];
  }
  return out;
}

// Binary Lyndon words of length <= max_n, by Duval's successor algorithm.
void lyndon_words(std::size_t max_n, std::vector<std::string>& out) {
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    if (max_n > 0) {
      std::string s;
      for (const int c : w) s += static_cast<char>('0' + c);
      out.push_back(s);
    }
    const std::size_t m = w.size();
    while (w.size() < max_n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == 1) w.pop_back();
  }
}

}  // namespace

CylinderMeasure empty_cylinders(std::size_t l) {
  if (l == 0 || l > 20) throw InvalidArgument("cylinder length must be in [1, 20], got " + std::to_string(l));
  return CylinderMeasure{PartitionKind::cylinder, l, std::vector<Rational>(std::size_t{1} << l, Rational(0))};
}

CylinderMeasure point_cylinder(const std::string& word) {
  auto mu = empty_cylinders(word.size());
  if (word.find_first_not_of("01") != std::string::npos) throw InvalidArgument("not a binary word: " + word);
  mu.mass[word_index(word)] = Rational(1);
  return mu;
}

CylinderMeasure discretize(const PeriodicOrbitMeasure<ShiftPoint>& mu, std::size_t l) {
  auto out = empty_cylinders(l);
  for (const auto& a : mu.atoms) out.mass[word_index(a.window(0, l))] += mu.atom_mass();
  return out;
}

ArcMeasure lebesgue_arcs(std::size_t m) {
  if (m == 0) throw InvalidArgument("arc partition needs m >= 1");
  return ArcMeasure{PartitionKind::arc, m, std::vector<double>(m, 1.0 / static_cast<double>(m))};
}

ArcMeasure discretize(const PeriodicOrbitMeasure<double>& mu, std::size_t m) {
  if (m == 0) throw InvalidArgument("arc partition needs m >= 1");
  ArcMeasure out{PartitionKind::arc, m, std::vector<double>(m, 0.0)};
  for (const double x : mu.atoms) {
    const auto i = std::min(m - 1, static_cast<std::size_t>(x * static_cast<double>(m)));
    out.mass[i] += to_double(mu.atom_mass());
  }
  return out;
}

CylinderMeasure mixture(const std::vector<CylinderMeasure>& measures, const std::vector<Rational>& weights) {
  return mix(measures, weights, Rational(0));
}

ArcMeasure mixture(const std::vector<ArcMeasure>& measures, const std::vector<double>& weights) {
  return mix(measures, weights, 1e-12);
}

std::vector<ShiftPoint> periodic_orbit_representatives(std::size_t max_period) {
  std::vector<std::string> words;
  lyndon_words(max_period, words);
  std::stable_sort(words.begin(), words.end(),
                   [](const std::string& a, const std::string& b) { return a.size() < b.size(); });
  std::vector<ShiftPoint> out;
  for (const auto& w : words) out.push_back(ShiftPoint::periodic(w));
  return out;
}

CylinderMeasure periodic_mixture(const ShiftSystem& sys, std::size_t max_period, std::size_t l) {
  const auto reps = periodic_orbit_representatives(max_period);
  if (reps.empty()) throw InvalidArgument("periodic mixture needs max_period >= 1");
  std::vector<CylinderMeasure> parts;
  for (const auto& p : reps) parts.push_back(discretize(orbit_measure(sys, p), l));
  return mixture(parts, std::vector<Rational>(parts.size(), Rational(1, static_cast<std::int64_t>(parts.size()))));
}

template <class Mass>
bool InvarianceReport<Mass>::invariant(double tol) const {
  if constexpr (std::is_same_v<Mass, Rational>)
    return discrepancy == Rational(0);
  else
    return discrepancy <= bound + tol;
}
template struct InvarianceReport<Rational>;
template struct InvarianceReport<double>;

InvarianceReport<Rational> invariance_check(const ShiftSystem&, const CylinderMeasure& mu) {
  if (mu.kind != PartitionKind::cylinder) throw InvalidArgument("shift invariance needs a cylinder partition");
  InvarianceReport<Rational> rep;
  rep.discrepancy = Rational(0);
  rep.bound = Rational(0);
  if (mu.resolution < 2) return rep;
  // w at [0, l-1) versus w at [1, l): both are unions of length-l cells.
  const std::size_t l = mu.resolution;
  const std::size_t half = std::size_t{1} << (l - 1);
  for (std::size_t w = 0; w < half; ++w) {
    const Rational here = mu.mass[2 * w] + mu.mass[2 * w + 1];
    const Rational shifted = mu.mass[w] + mu.mass[half + w];
    rep.discrepancy = std::max(rep.discrepancy, abs_diff(here, shifted));
  }
  return rep;
}

InvarianceReport<double> invariance_check(const RotationSystem& sys, const ArcMeasure& mu) {
  if (mu.kind != PartitionKind::arc) throw InvalidArgument("rotation invariance needs an arc partition");
  InvarianceReport<double> rep;
  const std::size_t m = mu.resolution;
  const double md = static_cast<double>(m);
  rep.bound = 2 * *std::max_element(mu.mass.begin(), mu.mass.end());
  for (const auto& g0 : sys.group().generators())
    for (const auto& g : {g0, inverse(g0)}) {
      // g^-1.[i/m, (i+1)/m) = [i/m, (i+1)/m) - g.0
      const double shift = sys.act(g, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        double s = static_cast<double>(i) / md - shift;
        s -= std::floor(s);
        const double pos = s * md;
        const auto c = std::min(m - 1, static_cast<std::size_t>(pos));
        const double f = pos - static_cast<double>(c);
        const double pre = (1 - f) * mu.mass[c] + f * mu.mass[(c + 1) % m];
        rep.discrepancy = std::max(rep.discrepancy, std::fabs(mu.mass[i] - pre));
      }
    }
  return rep;
}

std::size_t support_length(const Rational& eps) {
  if (eps <= Rational(0)) throw InvalidArgument("eps must be positive");
  if (Rational(1) < eps) return 0;
  std::size_t k = 0;
  Rational p(1);
  while (eps < p) {
    p /= 2;
    ++k;
  }
  return k + 1;
}

bool full_support_check(const CylinderMeasure& mu, const Rational& eps) {
  if (mu.kind != PartitionKind::cylinder) throw InvalidArgument("cylinder full-support check on an arc partition");
  const std::size_t n = support_length(eps);
  if (n > mu.resolution)
    throw InvalidArgument("partition of length " + std::to_string(mu.resolution) + " is coarser than eps = " +
                          to_string(eps) + " (needs " + std::to_string(n) + ")");
  const std::size_t tail = mu.resolution - n;
  for (const auto& p : ShiftSystem{}.dense_sample(std::size_t{1} << n)) {
    const std::size_t base = word_index(p.window(0, n)) << tail;
    Rational m(0);
    for (std::size_t j = 0; j < (std::size_t{1} << tail); ++j) m += mu.mass[base + j];
    if (m <= Rational(0)) return false;
  }
  return true;
}

bool full_support_check(const ArcMeasure& mu, double eps) {
  if (mu.kind != PartitionKind::arc) throw InvalidArgument("arc full-support check on a cylinder partition");
  const std::size_t m = mu.resolution;
  if (1.0 / static_cast<double>(m) > eps)
    throw InvalidArgument("arcs of width 1/" + std::to_string(m) + " are coarser than eps");
  // The ball around i/m always holds the arc starting at i/m.
  for (const double x : RotationSystem{}.dense_sample(m)) {
    const auto i = std::min(m - 1, static_cast<std::size_t>(std::lround(x * static_cast<double>(m))));
    if (mu.mass[i] <= 0) return false;
  }
  return true;
}

MeasureCheck check_measure(const ShiftSystem& sys, const CylinderMeasure& mu, const Rational& eps) {
  const auto inv = invariance_check(sys, mu);
  MeasureCheck c;
  c.label = "cylinders(" + std::to_string(mu.resolution) + ")";
  c.discrepancy = to_double(inv.discrepancy);
  c.invariant = inv.invariant(0);
  c.full_support = full_support_check(mu, eps);
  return c;
}

MeasureCheck check_measure(const RotationSystem& sys, const ArcMeasure& mu, double eps, double tol) {
  const auto inv = invariance_check(sys, mu);
  MeasureCheck c;
  c.label = "arcs(" + std::to_string(mu.resolution) + ")";
  c.discrepancy = inv.discrepancy;
  c.bound = inv.bound;
  c.invariant = inv.invariant(tol);
  c.full_support = full_support_check(mu, eps);
  return c;
}

// ---------------------------------------------------------------------------

void to_json(nlohmann::json& j, const CylinderMeasure& mu) {
  nlohmann::json cells = nlohmann::json::object();
  for (std::size_t i = 0; i < mu.mass.size(); ++i) cells[mu.cell_name(i)] = to_string(mu.mass[i]);
  j = {{"partition", "cylinder"}, {"resolution", mu.resolution}, {"cells", cells}};
}

void to_json(nlohmann::json& j, const ArcMeasure& mu) {
  nlohmann::json cells = nlohmann::json::object();
  for (std::size_t i = 0; i < mu.mass.size(); ++i) cells[mu.cell_name(i)] = mu.mass[i];
  j = {{"partition", "arc"}, {"resolution", mu.resolution}, {"cells", cells}};
}

void from_json(const nlohmann::json& j, CylinderMeasure& mu) {
  if (j.at("partition") != "cylinder") throw InvalidArgument("expected a cylinder partition");
  mu = empty_cylinders(j.at("resolution").get<std::size_t>());
  for (const auto& [name, value] : j.at("cells").items()) {
    if (name.size() != mu.resolution || name.find_first_not_of("01") != std::string::npos)
      throw InvalidArgument("bad cylinder name: " + name);
    mu.mass[word_index(name)] = parse_rational(value.get<std::string>());
  }
}

void from_json(const nlohmann::json& j, ArcMeasure& mu) {
  if (j.at("partition") != "arc") throw InvalidArgument("expected an arc partition");
  mu = lebesgue_arcs(j.at("resolution").get<std::size_t>());
  std::fill(mu.mass.begin(), mu.mass.end(), 0.0);
  for (const auto& [name, value] : j.at("cells").items()) {
    const auto i = std::stoul(name);
    if (i >= mu.resolution) throw InvalidArgument("arc index out of range: " + name);
    mu.mass[i] = value.get<double>();
  }
}

}  // namespace senslab
