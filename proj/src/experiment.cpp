#include "senslab/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "senslab/measures.hpp"

namespace senslab {

using nlohmann::json;

namespace {

const std::set<std::string> kAnalyses{"classify", "sensitivity", "norm", "sets", "measure", "lemma10"};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw InvalidArgument(where + ": unknown key \"" + key + "\"");
}

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw InvalidArgument("expected a rational as \"p/q\", got " + j.dump());
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void read_rational(const json& j, const char* key, Rational& out) {
  if (j.contains(key)) out = rational_from(j.at(key));
}

json rationals(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

// Independent stream per analysis so that adding one analysis never moves
// another's samples.
Rng stream(std::uint64_t seed, std::uint64_t k) { return Rng(seed + k * 0x9E3779B97F4A7C15ULL); }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { line(header); }
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    line(cells);
  }
  std::string text() const { return out_.str(); }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        out_ << cells[i];
        continue;
      }
      out_ << '"';
      for (const char c : cells[i]) out_ << (c == '"' ? "\"\"" : std::string(1, c));
      out_ << '"';
    }
    out_ << '\n';
  }
  std::size_t width_;
  std::ostringstream out_;
};

std::string str(bool b) { return b ? "true" : "false"; }
template <class T>
std::string str(const T& x) {
  if constexpr (std::is_same_v<T, Rational>)
    return to_string(x);
  else if constexpr (std::is_floating_point_v<T>)
    return to_string_scalar(static_cast<double>(x));
  else
    return std::to_string(x);
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

struct Tables {
  Csv sensitivity{{"system", "L", "point", "eps", "diameter", "running", "s_est", "sensitive"}};
  Csv classification{{"system", "L", "transitive", "minimal", "equicontinuous", "sensitive", "class",
                      "sensitive_points"}};
  Csv norms{{"m", "norm", "exact", "oracle", "match"}};
  Csv sets{{"check", "parameter", "window", "value", "detail"}};
  Csv measures{{"partition", "cell", "mass"}};
  Csv lemma10{{"point", "returns", "trials", "passes"}};
};

// ---------------------------------------------------------------------------
// system-dependent pieces

using AnySystem = std::variant<ShiftSystem, RotationSystem, OnePointSystem>;

AnySystem make_system(const SystemDescriptor& d) {
  if (d.kind == "shift") return ShiftSystem(d.complexity, d.sample_radius);
  if (d.kind == "rotation") return d.alpha ? RotationSystem(static_cast<long double>(*d.alpha)) : RotationSystem();
  if (d.kind == "onepoint") return OnePointSystem(GroupSpec::semidirect(d.generators), d.cutoff);
  throw InvalidArgument("unknown system kind \"" + d.kind + "\"");
}

std::vector<ShiftPoint> sample_points(const ShiftSystem& sys, const ExperimentConfig& c, Rng&) {
  return sys.dense_sample(c.classify.points);
}
std::vector<double> sample_points(const RotationSystem& sys, const ExperimentConfig& c, Rng& rng) {
  std::vector<double> pts;
  for (std::size_t i = 0; i < c.classify.points; ++i) pts.push_back(sys.random_point(rng));
  return pts;
}
std::vector<OnePoint> sample_points(const OnePointSystem& sys, const ExperimentConfig& c, Rng&) {
  return sys.ball_points(c.classify.ball_radius);
}

GroupElement parse_generator(const OnePointSystem&, const std::string& text) { return parse_semidirect(text); }
template <class S>
GroupElement parse_generator(const S&, const std::string& text) {
  std::size_t used = 0;
  const auto k = std::stoll(text, &used);
  if (used != text.size()) throw InvalidArgument("bad integer generator \"" + text + "\"");
  return GroupElement::integer(k);
}

json measure_json(const MeasureCheck& m) {
  return {{"label", m.label},           {"discrepancy", m.discrepancy}, {"bound", m.bound},
          {"invariant", m.invariant},   {"full_support", m.full_support}, {"holds", m.holds()}};
}

template <class Mass>
void measure_rows(const DiscretizedMeasure<Mass>& mu, Csv& t) {
  const std::string kind = mu.kind == PartitionKind::cylinder ? "cylinder" : "arc";
  for (std::size_t i = 0; i < mu.mass.size(); ++i) t.row({kind, mu.cell_name(i), str(mu.mass[i])});
}

MeasureCheck run_measure(const ShiftSystem& sys, const MeasureOptions& o, json& out, Csv& t) {
  CylinderMeasure mu;
  if (o.kind == "periodic-mixture")
    mu = periodic_mixture(sys, o.max_period, o.resolution);
  else if (o.kind == "cylinder")
    mu = point_cylinder(o.word);
  else
    throw InvalidArgument("shift measure must be periodic-mixture or cylinder, got \"" + o.kind + "\"");
  const auto check = check_measure(sys, mu, o.eps);
  out = measure_json(check);
  out["eps"] = to_string(o.eps);
  out["cells"] = mu;
  measure_rows(mu, t);
  return check;
}

MeasureCheck run_measure(const RotationSystem& sys, const MeasureOptions& o, json& out, Csv& t) {
  if (o.kind != "lebesgue") throw InvalidArgument("rotation measure must be lebesgue, got \"" + o.kind + "\"");
  const auto mu = lebesgue_arcs(o.resolution);
  const auto check = check_measure(sys, mu, to_double(o.eps));
  out = measure_json(check);
  out["eps"] = to_string(o.eps);
  out["cells"] = mu;
  measure_rows(mu, t);
  return check;
}

MeasureCheck run_measure(const OnePointSystem&, const MeasureOptions&, json&, Csv&) {
  throw InvalidArgument("no measure sampler for the onepoint system");
}

Lemma10Report run_lemma10(const ShiftSystem& sys, const Lemma10Options& o, Rng& rng) {
  std::vector<ShiftPoint> xs;
  for (std::size_t i = 0; i < o.points; ++i)
    xs.push_back(sys.random_point(rng, o.window + static_cast<std::int64_t>(o.word.size())));
  return lemma10_window_test(sys, xs, cylinder_target(o.word), o.window, o.trials, rng, o.set_size);
}

Lemma10Report run_lemma10(const RotationSystem& sys, const Lemma10Options& o, Rng& rng) {
  const double center = sys.random_point(rng);
  std::vector<double> xs;
  for (std::size_t i = 0; i < o.points; ++i) xs.push_back(sys.random_point(rng));
  return lemma10_window_test(sys, xs, ball_target(sys, center, to_double(o.radius)), o.window, o.trials, rng,
                             o.set_size);
}

Lemma10Report run_lemma10(const OnePointSystem&, const Lemma10Options&, Rng&) {
  throw InvalidArgument("no lemma10 sampler for the onepoint system");
}

template <class Scalar>
void sensitivity_rows(const std::string& name, const SensitivityReport<Scalar>& s, std::size_t point, Csv& t) {
  for (const auto& row : s.rows)
    t.row({name, str(s.L), str(point), str(row.eps), str(row.diameter), str(row.running), str(s.s_est),
           str(s.sensitive)});
}

template <MetricSystem S>
void run_dynamics(const S& sys, const ExperimentConfig& c, Artifacts& a, Tables& t) {
  const auto wants = [&](const char* name) {
    return std::find(c.analyses.begin(), c.analyses.end(), name) != c.analyses.end();
  };
  const std::string name = sys.name();
  Rng point_rng = stream(c.seed, 1);
  const bool need_points = wants("classify") || wants("sensitivity");
  const auto points = need_points ? sample_points(sys, c, point_rng) : std::vector<typename S::Point>{};
  std::optional<MeasureCheck> measure;
  if (wants("measure") || (wants("classify") && c.classify.measure_hypothesis)) {
    json mj;
    measure = run_measure(sys, c.measure, mj, t.measures);
    a.report["measure"] = mj;
  }

  if (wants("classify")) {
    HypothesisFlags flags;
    flags.invariant_measure = c.classify.measure_hypothesis && measure && measure->holds();
    flags.dense_minimal_points = c.classify.dense_minimal_points;
    const auto rep = classify(sys, points, flags, c.resolution);
    json levels = json::array();
    for (const auto& lv : rep.levels) {
      t.classification.row({name, str(lv.L), str(lv.transitive), str(lv.minimal), str(lv.equicontinuous),
                            str(lv.sensitive), std::string(to_string(lv.cls)), join(lv.sensitive_points())});
      json s_est = json::array();
      for (std::size_t i = 0; i < lv.sensitivity.size(); ++i) {
        sensitivity_rows(name, lv.sensitivity[i], i, t.sensitivity);
        s_est.push_back(str(lv.sensitivity[i].s_est));
      }
      levels.push_back({{"L", lv.L},
                        {"transitive", lv.transitive},
                        {"minimal", lv.minimal},
                        {"equicontinuous", lv.equicontinuous},
                        {"sensitive", lv.sensitive},
                        {"class", to_string(lv.cls)},
                        {"sensitive_points", lv.sensitive_points()},
                        {"s_est", s_est}});
    }
    json cj = {{"points", rep.points},
               {"levels", levels},
               {"class", to_string(rep.cls)},
               {"stable", rep.stable},
               {"inconsistent", rep.inconsistent},
               {"flags", {{"invariant_measure", flags.invariant_measure},
                          {"dense_minimal_points", flags.dense_minimal_points}}}};
    if (!c.classify.minimality_generator.empty()) {
      const auto g0 = parse_generator(sys, c.classify.minimality_generator);
      const auto mp = minimality_probe(sys, g0, c.resolution, points);
      json gaps = json::array();
      for (const auto& pm : mp.points) gaps.push_back(pm.windows.back().max_gap);
      cj["minimality"] = {{"generator", mp.generator}, {"eps", to_string(mp.eps)},
                          {"flagged", mp.flagged()}, {"density", mp.density},
                          {"max_gaps", gaps}};
    }
    a.report["classification"] = cj;
    if (rep.inconsistent) a.exit_code = 2;
  } else if (wants("sensitivity")) {
    json per_level = json::array();
    for (const auto L : c.resolution.L_sweep) {
      std::vector<std::size_t> sensitive;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto s = sensitivity_estimate(sys, points[i], c.resolution, L);
        sensitivity_rows(name, s, i, t.sensitivity);
        if (s.sensitive) sensitive.push_back(i);
      }
      per_level.push_back({{"L", L}, {"sensitive_points", sensitive}});
    }
    std::vector<std::string> described;
    for (const auto& p : points) described.push_back(sys.describe(p));
    a.report["sensitivity"] = {{"points", described}, {"levels", per_level}};
  }

  if (wants("lemma10")) {
    Rng rng = stream(c.seed, 2);
    const auto rep = run_lemma10(sys, c.lemma10, rng);
    for (const auto& row : rep.rows)
      t.lemma10.row({str(row.point), str(row.returns), str(row.trials), str(row.passes)});
    a.report["lemma10"] = {{"target", rep.target},     {"window", rep.window},
                           {"set_size", rep.set_size}, {"pass_rate", rep.pass_rate}};
  }
}

// ---------------------------------------------------------------------------
// group-level analyses, independent of the system

void run_norms(const NormOptions& o, Artifacts& a, Csv& t) {
  const NormTable table(o.phi, o.range);
  std::vector<std::int64_t> mismatches;
  for (std::int64_t m = -o.range; m <= o.range; ++m) {
    const auto& v = table.at(m);
    std::string oracle, match;
    if (o.check_oracle) {
      const auto ov = norm_oracle(o.phi, m, o.oracle_factors);
      oracle = to_string(ov);
      match = str(ov == v.value);
      if (ov != v.value) mismatches.push_back(m);
    }
    t.row({str(m), to_string(v.value), str(v.exact), oracle, match});
  }
  json nj = {{"phi", o.phi_name}, {"range", o.range}};
  if (o.check_oracle) {
    nj["oracle_factors"] = o.oracle_factors;
    nj["oracle_equal"] = mismatches.empty();
    nj["mismatches"] = mismatches;
  }
  a.report["norm"] = nj;
}

void run_sets(const NormOptions& n, const SetOptions& o, Artifacts& a, Csv& t) {
  if (o.windows.empty()) throw InvalidArgument("sets: at least one window");
  const auto wmax = *std::max_element(o.windows.begin(), o.windows.end());
  const auto lz = sublevel_exponents(n.phi, o.eps, wmax).symmetrized();
  const auto trend = syndetic_trend(lz, o.windows);
  json gaps = json::array();
  for (const auto& w : trend.windows) {
    t.row({"gap", to_string(o.eps), str(w.window), str(w.max_gap), "start " + str(w.gap_start)});
    gaps.push_back({{"window", w.window}, {"size", w.size}, {"max_gap", w.max_gap}, {"gap_start", w.gap_start}});
  }
  const auto compact = compactness_diagnostic(n.phi, o.eps, o.windows);
  json contain = json::array();
  for (const int k : o.containment) {
    const auto rep = interval_containment_check(k, wmax, n.phi);
    t.row({"containment", "1/" + str(k), str(wmax), str(rep.violations.size()), "checked " + str(rep.checked)});
    contain.push_back({{"n", k}, {"checked", rep.checked}, {"violations", rep.violations}});
  }
  const auto rec = detect_recurrence(n.phi, o.recurrence_n);
  json witnesses = json::array();
  for (std::size_t i = 0; i < rec.witnesses.size(); ++i) {
    const auto& w = rec.witnesses[i];
    t.row({"recurrence", str(i), "", str(w.exponent), to_string(w.norm.value)});
    witnesses.push_back({{"exponent", w.exponent}, {"norm", to_string(w.norm.value)}});
  }
  const auto ds = delta_star_falsifier(lz, wmax, o.delta_star_k);
  t.row({"delta_star", str(o.delta_star_k), str(wmax), str(ds.found), "size " + str(ds.set.size())});
  a.report["sets"] = {{"phi", n.phi_name},
                      {"eps", to_string(o.eps)},
                      {"gaps", gaps},
                      {"verdict", trend.verdict},
                      {"compactness", to_string(compact.verdict)},
                      {"containment", contain},
                      {"recurrence", witnesses},
                      {"delta_star", {{"k", o.delta_star_k}, {"found", ds.found}, {"set", ds.set}}}};
}

PhiTable phi_from(const json& j, std::string& name) {
  if (j.is_string()) {
    name = j.get<std::string>();
    if (name == "factorial") return PhiTable::factorial();
    if (name == "constant") return PhiTable::constant_one();
    throw InvalidArgument("unknown phi \"" + name + "\"");
  }
  name = "custom";
  return j.get<PhiTable>();
}

json phi_to(const NormOptions& o) {
  if (o.phi_name == "custom") return o.phi;
  return o.phi_name;
}

}  // namespace

// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
  for (const auto& a : analyses)
    if (!kAnalyses.count(a)) throw InvalidArgument("unknown analysis \"" + a + "\"");
  if (system.kind != "shift" && system.kind != "rotation" && system.kind != "onepoint")
    throw InvalidArgument("unknown system kind \"" + system.kind + "\"");
  resolution.validate();
  if (norm.range < 0) throw InvalidArgument("norm range must be >= 0");
}

ExperimentConfig preset(const std::string& system_kind) {
  ExperimentConfig c;
  c.system.kind = system_kind;
  auto& r = c.resolution;
  if (system_kind == "shift") {
    r.L_sweep = {2, 4, 8, 10};
    r.eps = {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16)};
    r.transitivity_eps = r.density_eps = Rational(1, 8);
  } else if (system_kind == "rotation") {
    r.L_sweep = {8, 16, 32, 64};
    r.eps = {Rational(1, 10), Rational(1, 20), Rational(1, 40)};
    r.transitivity_eps = r.density_eps = Rational(1, 20);
    r.centers = 20;
    c.classify.points = 50;
    c.measure.kind = "lebesgue";
    c.measure.resolution = 100;
    c.measure.eps = Rational(1, 20);
  } else if (system_kind == "onepoint") {
    r.centers = 6;
    c.classify.minimality_generator = "[a,ab]";
  } else {
    throw InvalidArgument("unknown system kind \"" + system_kind + "\"");
  }
  return c;
}

void to_json(json& j, const Resolution& r) {
  j = {{"L_sweep", r.L_sweep},
       {"eps", rationals(r.eps)},
       {"delta", rationals(r.delta)},
       {"samples", r.samples},
       {"tolerance", r.tolerance},
       {"transitivity_eps", to_string(r.transitivity_eps)},
       {"density_eps", to_string(r.density_eps)},
       {"centers", r.centers},
       {"minimality_windows", r.minimality_windows}};
}

void from_json(const json& j, Resolution& r) {
  check_keys(j,
             {"L_sweep", "eps", "delta", "samples", "tolerance", "transitivity_eps", "density_eps", "centers",
              "minimality_windows"},
             "resolution");
  read(j, "L_sweep", r.L_sweep);
  for (const char* key : {"eps", "delta"})
    if (j.contains(key)) {
      auto& dst = std::string(key) == "eps" ? r.eps : r.delta;
      dst.clear();
      for (const auto& e : j.at(key)) dst.push_back(rational_from(e));
    }
  read(j, "samples", r.samples);
  read(j, "tolerance", r.tolerance);
  read_rational(j, "transitivity_eps", r.transitivity_eps);
  read_rational(j, "density_eps", r.density_eps);
  read(j, "centers", r.centers);
  read(j, "minimality_windows", r.minimality_windows);
}

void to_json(json& j, const ExperimentConfig& c) {
  json sys = {{"kind", c.system.kind},
              {"complexity", c.system.complexity},
              {"sample_radius", c.system.sample_radius},
              {"generators", c.system.generators},
              {"cutoff", c.system.cutoff}};
  if (c.system.alpha) sys["alpha"] = *c.system.alpha;
  j = {{"system", sys},
       {"resolution", c.resolution},
       {"seed", c.seed},
       {"analyses", c.analyses},
       {"classify",
        {{"points", c.classify.points},
         {"ball_radius", c.classify.ball_radius},
         {"measure_hypothesis", c.classify.measure_hypothesis},
         {"dense_minimal_points", c.classify.dense_minimal_points},
         {"minimality_generator", c.classify.minimality_generator}}},
       {"measure",
        {{"kind", c.measure.kind},
         {"max_period", c.measure.max_period},
         {"resolution", c.measure.resolution},
         {"word", c.measure.word},
         {"eps", to_string(c.measure.eps)}}},
       {"norm",
        {{"phi", phi_to(c.norm)},
         {"range", c.norm.range},
         {"check_oracle", c.norm.check_oracle},
         {"oracle_factors", c.norm.oracle_factors}}},
       {"sets",
        {{"eps", to_string(c.sets.eps)},
         {"windows", c.sets.windows},
         {"containment", c.sets.containment},
         {"delta_star_k", c.sets.delta_star_k},
         {"recurrence_n", c.sets.recurrence_n}}},
       {"lemma10",
        {{"points", c.lemma10.points},
         {"window", c.lemma10.window},
         {"trials", c.lemma10.trials},
         {"set_size", c.lemma10.set_size},
         {"radius", to_string(c.lemma10.radius)},
         {"word", c.lemma10.word}}},
       {"output", {{"dir", c.output_dir}}}};
}

void from_json(const json& j, ExperimentConfig& c) {
  check_keys(j, {"system", "resolution", "seed", "analyses", "classify", "measure", "norm", "sets", "lemma10", "output"},
             "config");
  c = ExperimentConfig{};
  if (j.contains("system")) {
    const auto& s = j.at("system");
    check_keys(s, {"kind", "alpha", "complexity", "sample_radius", "generators", "cutoff"}, "system");
    read(s, "kind", c.system.kind);
    if (s.contains("alpha") && !s.at("alpha").is_null()) c.system.alpha = s.at("alpha").get<double>();
    read(s, "complexity", c.system.complexity);
    read(s, "sample_radius", c.system.sample_radius);
    read(s, "generators", c.system.generators);
    read(s, "cutoff", c.system.cutoff);
  }
  read(j, "resolution", c.resolution);
  read(j, "seed", c.seed);
  read(j, "analyses", c.analyses);
  if (j.contains("classify")) {
    const auto& s = j.at("classify");
    check_keys(s, {"points", "ball_radius", "measure_hypothesis", "dense_minimal_points", "minimality_generator"},
               "classify");
    read(s, "points", c.classify.points);
    read(s, "ball_radius", c.classify.ball_radius);
    read(s, "measure_hypothesis", c.classify.measure_hypothesis);
    read(s, "dense_minimal_points", c.classify.dense_minimal_points);
    read(s, "minimality_generator", c.classify.minimality_generator);
  }
  if (j.contains("measure")) {
    const auto& s = j.at("measure");
    check_keys(s, {"kind", "max_period", "resolution", "word", "eps"}, "measure");
    read(s, "kind", c.measure.kind);
    read(s, "max_period", c.measure.max_period);
    read(s, "resolution", c.measure.resolution);
    read(s, "word", c.measure.word);
    read_rational(s, "eps", c.measure.eps);
  }
  if (j.contains("norm")) {
    const auto& s = j.at("norm");
    check_keys(s, {"phi", "range", "check_oracle", "oracle_factors"}, "norm");
    if (s.contains("phi")) c.norm.phi = phi_from(s.at("phi"), c.norm.phi_name);
    read(s, "range", c.norm.range);
    read(s, "check_oracle", c.norm.check_oracle);
    read(s, "oracle_factors", c.norm.oracle_factors);
  }
  if (j.contains("sets")) {
    const auto& s = j.at("sets");
    check_keys(s, {"eps", "windows", "containment", "delta_star_k", "recurrence_n"}, "sets");
    read_rational(s, "eps", c.sets.eps);
    read(s, "windows", c.sets.windows);
    read(s, "containment", c.sets.containment);
    read(s, "delta_star_k", c.sets.delta_star_k);
    read(s, "recurrence_n", c.sets.recurrence_n);
  }
  if (j.contains("lemma10")) {
    const auto& s = j.at("lemma10");
    check_keys(s, {"points", "window", "trials", "set_size", "radius", "word"}, "lemma10");
    read(s, "points", c.lemma10.points);
    read(s, "window", c.lemma10.window);
    read(s, "trials", c.lemma10.trials);
    read(s, "set_size", c.lemma10.set_size);
    read_rational(s, "radius", c.lemma10.radius);
    read(s, "word", c.lemma10.word);
  }
  if (j.contains("output")) {
    check_keys(j.at("output"), {"dir"}, "output");
    read(j.at("output"), "dir", c.output_dir);
  }
  c.validate();
}

ExperimentConfig parse_config(const std::string& text) {
  return json::parse(text, nullptr, true, true).get<ExperimentConfig>();
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Artifacts run(const ExperimentConfig& config) {
  config.validate();
  Artifacts a;
  Tables t;
  a.report = {{"config", config}};
  // where the files land is not part of the experiment
  a.report["config"].erase("output");
  const auto wants = [&](const char* name) {
    return std::find(config.analyses.begin(), config.analyses.end(), name) != config.analyses.end();
  };
  const bool dynamic = wants("classify") || wants("sensitivity") || wants("measure") || wants("lemma10");
  if (dynamic) {
    const auto sys = make_system(config.system);
    a.report["system"] = std::visit([](const auto& s) { return s.name(); }, sys);
    std::visit([&](const auto& s) { run_dynamics(s, config, a, t); }, sys);
  }
  if (wants("norm")) run_norms(config.norm, a, t.norms);
  if (wants("sets")) run_sets(config.norm, config.sets, a, t.sets);
  a.report["exit_code"] = a.exit_code;
  a.csv = {{"sensitivity", t.sensitivity.text()}, {"classification", t.classification.text()},
           {"norms", t.norms.text()},             {"sets", t.sets.text()},
           {"measures", t.measures.text()},       {"lemma10", t.lemma10.text()}};
  return a;
}

void write_artifacts(const Artifacts& artifacts, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto put = [&](const std::string& file, const std::string& text) {
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / file).string());
    out << text;
    if (!out) throw Error("write failed for " + (dir / file).string());
  };
  put("report.json", artifacts.report.dump(2) + "\n");
  for (const auto& name : csv_tables()) put(name + ".csv", artifacts.csv.at(name));
}

}  // namespace senslab
