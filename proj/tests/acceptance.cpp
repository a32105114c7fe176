// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "senslab/analysis.hpp"
#include "senslab/experiment.hpp"
#include "senslab/measures.hpp"
#include "senslab/rewrite.hpp"

using namespace senslab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

std::string list(const std::vector<std::int64_t>& xs, std::size_t max = 8) {
  std::string s;
  for (std::size_t i = 0; i < xs.size() && i < max; ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  if (xs.size() > max) s += " ...";
  return s;
}

Outcome oracle_equivalence(int factors) {
  const auto phi = PhiTable::factorial();
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::int64_t> bad;
  for (std::int64_t m = -720; m <= 720; ++m)
    if (norm_eval(phi, m).value != norm_oracle(phi, m, factors)) bad.push_back(m);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << "B = " << factors << ", " << bad.size() << " mismatches in |m| <= 720";
  if (!bad.empty()) d << " (" << list(bad) << ")";
  d << ", " << secs << " s";
  return {bad.empty() && secs < 60, d.str()};
}

Outcome factorial_values() {
  const auto phi = PhiTable::factorial();
  std::string d;
  bool ok = true;
  for (int n = 1; n <= 6; ++n) {
    const auto v = norm_eval(phi, factorial(n)).value;
    const bool good = v == R(1, n + 1) && norm_oracle(phi, factorial(n), 4) == v;
    ok = ok && good;
    d += (n > 1 ? " " : "") + std::to_string(factorial(n)) + "->" + to_string(v);
  }
  return {ok, d};
}

Outcome interval_containment() {
  std::size_t violations = 0, checked = 0;
  for (int n = 2; n <= 5; ++n) {
    const auto rep = interval_containment_check(n, 5040);
    violations += rep.violations.size();
    checked += rep.checked;
  }
  return {violations == 0, std::to_string(checked) + " exponents checked, " + std::to_string(violations) +
                               " violations"};
}

Outcome non_syndetic_trend() {
  const auto lz = sublevel_exponents(PhiTable::factorial(), R(1, 3), 5040).symmetrized();
  const auto trend = syndetic_trend(lz, {720, 5040});
  const auto g720 = trend.windows[0].max_gap, g5040 = trend.windows[1].max_gap;
  return {g5040 > g720 && g5040 > 240,
          "max gap " + std::to_string(g720) + " at W = 720, " + std::to_string(g5040) + " at W = 5040"};
}

Outcome recurrence() {
  const auto rep = detect_recurrence(PhiTable::factorial(), 6);
  bool ok = rep.witnesses.size() >= 5;
  std::string d;
  for (std::size_t i = 0; i < rep.witnesses.size(); ++i) {
    const auto& w = rep.witnesses[i];
    if (i > 0) {
      ok = ok && w.exponent > rep.witnesses[i - 1].exponent && w.norm.value < rep.witnesses[i - 1].norm.value;
      d += " ";
    }
    d += std::to_string(w.exponent) + ":" + to_string(w.norm.value);
  }
  return {ok, std::to_string(rep.witnesses.size()) + " witnesses " + d};
}

template <class Scalar>
std::string class_line(const ClassificationReport<Scalar>& rep) {
  return std::string(to_string(rep.cls)) + (rep.stable ? " stable" : " unstable");
}

Outcome classification_suite() {
  std::ostringstream d;
  bool ok = true;

  const ShiftSystem shift;
  const auto sc = preset("shift");
  const auto srep = classify(shift, shift.dense_sample(sc.classify.points), HypothesisFlags{}, sc.resolution);
  const bool s_top = srep.top().L == 10 && sc.resolution.eps.back() == R(1, 16);
  Rational s_min(1);
  for (const auto& s : srep.top().sensitivity) s_min = std::min(s_min, s.s_est);
  const bool shift_ok = s_top && srep.cls == SystemClass::sensitive && srep.stable && R(99, 100) <= s_min;
  d << "shift " << class_line(srep) << " min s_est " << to_string(s_min) << "; ";

  const RotationSystem rot;
  const auto rc = preset("rotation");
  Rng rng(rc.seed);
  std::vector<double> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(rot.random_point(rng));
  const auto rrep = classify(rot, pts, HypothesisFlags{}, rc.resolution);
  const double eps_min = to_double(rc.resolution.eps.back());
  double s_max = 0;
  for (const auto& s : rrep.top().sensitivity) s_max = std::max(s_max, s.s_est);
  const bool dense64 = rrep.top().L == 64 && rc.resolution.density_eps == R(1, 20) && rrep.top().minimal;
  const bool rot_ok = rrep.cls == SystemClass::minimal_equicontinuous && rrep.stable && s_max <= 2 * eps_min && dense64;
  d << "rotation " << class_line(rrep) << " max s_est " << s_max << " (2eps " << 2 * eps_min << "); ";

  const auto op = OnePointSystem(GroupSpec::semidirect({"a", "ab"}));
  const auto oc = preset("onepoint");
  const auto opts = op.ball_points(6);
  const auto orep = classify(op, opts, HypothesisFlags{}, oc.resolution);
  const auto sens = orep.top().sensitive_points();
  const bool op_ok = sens.size() == 1 && opts[sens[0]].is_infinity() && orep.top().transitive &&
                     !orep.top().minimal && orep.stable;
  d << "onepoint " << class_line(orep) << " sensitive " << sens.size() << "/" << opts.size()
    << (sens.size() == 1 && opts[sens[0]].is_infinity() ? " (inf)" : "");

  ok = shift_ok && rot_ok && op_ok;
  return {ok, d.str()};
}

Outcome nice_sets() {
  const bool a = is_nice(GroupSpec::semidirect({"a", "ab"}));
  const bool b = is_nice(GroupSpec::semidirect({"a", "ab", "[a,ab]"}));
  return {!a && b, std::string("{a,ab} ") + (a ? "nice" : "not nice") + ", {a,ab,[a,ab]} " + (b ? "nice" : "not nice")};
}

Outcome bounded_rewriting() {
  const auto spec = GroupSpec::semidirect({"a", "ab", "[a,ab]"});
  const auto bound = rewrite_bound(spec);
  const std::size_t gens = spec.generators().size();
  Rng rng(7);
  std::size_t worst = 0, m_seen = 0;
  bool equal = true;
  for (int trial = 0; trial < 1000; ++trial) {
    Word w;
    const auto len = rng.uniform_int(0, 50);
    for (std::int64_t i = 0; i < len; ++i)
      w.blocks.push_back({static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(gens) - 1)),
                          rng.coin() ? 1 : -1});
    const auto r = rewrite_bounded(w, spec);
    equal = equal && evaluate(r.word, spec) == evaluate(w, spec);
    worst = std::max(worst, r.word.size());
    m_seen = std::max(m_seen, r.correction_blocks);
  }
  const bool ok = equal && worst <= bound.blocks && bound.blocks <= gens * (m_seen + 1);
  return {ok, "N(S) = " + std::to_string(bound.blocks) + ", longest " + std::to_string(worst) + " blocks, M = " +
                  std::to_string(m_seen) + ", |S|(M+1) = " + std::to_string(gens * (m_seen + 1)) +
                  (equal ? ", values equal" : ", VALUE MISMATCH")};
}

Outcome minimal_point_hypothesis() {
  const auto op = OnePointSystem(GroupSpec::semidirect({"a", "ab"}));
  const auto pts = op.ball_points(6);
  const auto rep = minimality_probe(op, parse_semidirect("[a,ab]"), preset("onepoint").resolution, pts);
  const auto flagged = rep.flagged();
  const bool ok = flagged.size() == 1 && pts[flagged[0]].is_infinity();
  return {ok, std::to_string(flagged.size()) + " of " + std::to_string(pts.size()) + " flagged" +
                  (ok ? " (inf)" : "")};
}

Outcome lemma10() {
  Rng rng(10);
  const RotationSystem rot;
  const double x0 = rot.random_point(rng);
  std::vector<double> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(rot.random_point(rng));
  const auto r = lemma10_window_test(rot, xs, ball_target(rot, x0, 0.1), 10000, 100, rng);
  const ShiftSystem shift;
  std::vector<ShiftPoint> ys;
  for (int i = 0; i < 3; ++i) ys.push_back(shift.random_point(rng, 10002));
  const auto s = lemma10_window_test(shift, ys, cylinder_target("01"), 10000, 100, rng);
  std::ostringstream d;
  d << "rotation " << r.pass_rate << ", shift " << s.pass_rate;
  return {r.pass_rate == 1.0 && s.pass_rate == 1.0, d.str()};
}

Outcome delta_star() {
  const auto lz = sublevel_exponents(PhiTable::factorial(), R(1, 3), 5040).symmetrized();
  const auto r = delta_star_falsifier(lz, 5040, 20);
  std::vector<std::int64_t> evens;
  for (std::int64_t i = -100; i <= 100; i += 2) evens.push_back(i);
  const auto e = delta_star_falsifier(evens, 100, 3);
  const bool ok = r.found && r.set.size() >= 20 && differences_avoid(r.set, lz) && !e.found;
  return {ok, "factorial: |S| = " + std::to_string(r.set.size()) + (r.found ? " found" : " not found") +
                  "; evens k = 3: " + (e.found ? "found" : "fails")};
}

Outcome measures() {
  const ShiftSystem shift;
  const auto mu = periodic_mixture(shift, 3, 3);
  const auto inv = invariance_check(shift, mu);
  const bool full = full_support_check(mu, R(1, 4));
  const auto rep = classify(shift, shift.dense_sample(16), HypothesisFlags{inv.invariant(0) && full, false},
                            preset("shift").resolution);
  const bool ok = inv.discrepancy == R(0) && full && rep.flags.invariant_measure &&
                  rep.cls == SystemClass::sensitive && !rep.inconsistent;
  return {ok, "discrepancy " + to_string(inv.discrepancy) + ", full support " + (full ? "yes" : "no") + ", class " +
                  std::string(to_string(rep.cls)) + (rep.inconsistent ? ", INCONSISTENT" : ", consistent")};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "senslab_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto c = preset("rotation");
  c.analyses = {"classify", "measure", "lemma10", "norm", "sets"};
  c.classify.measure_hypothesis = true;
  c.seed = 99;
  std::ofstream(dir / "exp.json") << nlohmann::json(c).dump(2);
  for (const char* out : {"a", "b"}) {
    const auto cmd = std::string(SENSLAB_CLI) + " --config " + (dir / "exp.json").string() + " --out " +
                     (dir / out).string() + " >/dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) return {false, "cli run failed"};
  }
  std::size_t same = 0, total = 0;
  std::vector<std::string> files{"report.json"};
  for (const auto& t : csv_tables()) files.push_back(t + ".csv");
  for (const auto& f : files) {
    ++total;
    if (slurp(dir / "a" / f) == slurp(dir / "b" / f) && !slurp(dir / "a" / f).empty()) ++same;
  }
  return {same == total, std::to_string(same) + "/" + std::to_string(total) + " files byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"norm oracle equivalence", [] { return oracle_equivalence(4); }},
      {"factorial values", factorial_values},
      {"interval containment", interval_containment},
      {"non-syndeticity trend", non_syndetic_trend},
      {"recurrence", recurrence},
      {"classification suite", classification_suite},
      {"nice-set checker", nice_sets},
      {"bounded rewriting", bounded_rewriting},
      {"minimal point hypothesis", minimal_point_hypothesis},
      {"return-difference window test", lemma10},
      {"delta* machinery", delta_star},
      {"measures", measures},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << '\n';
    if (i == 0) {
      const auto five = oracle_equivalence(5);
      std::cout << "     companion: " << five.detail << (five.pass ? " (agrees)" : " (disagrees)") << '\n';
    }
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
