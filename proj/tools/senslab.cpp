// senslab: config-driven experiments on group actions.
//
//   senslab --config exp.json [--seed N] [--out DIR]
//   senslab classify --system shift --measure periodic-mixture
//   senslab norm --phi factorial --range 720 --check-oracle
//
// Exit codes: 0 success, 2 a hypothesis flag contradicted by the measured
// class, 1 any error.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "senslab/experiment.hpp"
#include "senslab/rational.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> system;
  std::optional<std::string> measure;
  std::optional<std::size_t> measure_resolution;
  std::optional<std::string> measure_eps;
  std::optional<std::size_t> points;
  bool dense_minimal = false;
  std::optional<std::string> minimality_generator;
  std::optional<std::string> phi;
  std::optional<std::int64_t> range;
  bool check_oracle = false;
  std::optional<int> oracle_factors;
  std::optional<std::string> eps;
  std::optional<std::size_t> trials;
  std::optional<std::int64_t> window;
};

senslab::ExperimentConfig build(const Overrides& o, const std::string& sub) {
  using namespace senslab;
  ExperimentConfig c;
  if (!o.config.empty())
    c = load_config(o.config);
  else if (o.system)
    c = preset(*o.system);
  if (o.system) c.system.kind = *o.system;
  if (!sub.empty()) c.analyses = {sub};
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.output_dir = *o.out;
  if (o.measure) {
    c.measure.kind = *o.measure;
    if (sub == "classify") c.classify.measure_hypothesis = true;
  }
  if (o.measure_resolution) c.measure.resolution = *o.measure_resolution;
  if (o.measure_eps) c.measure.eps = parse_rational(*o.measure_eps);
  if (o.points) c.classify.points = *o.points;
  if (o.dense_minimal) c.classify.dense_minimal_points = true;
  if (o.minimality_generator) c.classify.minimality_generator = *o.minimality_generator;
  if (o.phi) {
    if (*o.phi == "factorial")
      c.norm.phi = PhiTable::factorial();
    else if (*o.phi == "constant")
      c.norm.phi = PhiTable::constant_one();
    else
      throw InvalidArgument("unknown phi \"" + *o.phi + "\"");
    c.norm.phi_name = *o.phi;
  }
  if (o.range) c.norm.range = *o.range;
  if (o.check_oracle) c.norm.check_oracle = true;
  if (o.oracle_factors) c.norm.oracle_factors = *o.oracle_factors;
  if (o.eps) c.sets.eps = parse_rational(*o.eps);
  if (o.trials) c.lemma10.trials = *o.trials;
  if (o.window) c.lemma10.window = *o.window;
  c.validate();
  return c;
}

void summarize(const senslab::Artifacts& a, const std::string& dir) {
  const auto& r = a.report;
  if (r.contains("classification")) {
    const auto& c = r.at("classification");
    std::cout << "class: " << c.at("class").get<std::string>() << (c.at("stable").get<bool>() ? "" : " (unstable)")
              << (c.at("inconsistent").get<bool>() ? " INCONSISTENT" : "") << '\n';
  }
  if (r.contains("measure"))
    std::cout << "measure: invariant " << r.at("measure").at("invariant") << ", full support "
              << r.at("measure").at("full_support") << '\n';
  if (r.contains("norm") && r.at("norm").contains("oracle_equal"))
    std::cout << "norm oracle (B = " << r.at("norm").at("oracle_factors") << "): "
              << r.at("norm").at("mismatches").size() << " mismatches\n";
  if (r.contains("sets")) std::cout << "sets: " << r.at("sets").at("verdict").get<std::string>() << '\n';
  if (r.contains("lemma10")) std::cout << "lemma10 pass rate: " << r.at("lemma10").at("pass_rate") << '\n';
  std::cout << "wrote " << dir << "/report.json\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensitivity and equicontinuity experiments on group actions"};
  app.fallthrough();
  Overrides o;
  app.add_option("--config", o.config, "JSON experiment config (comments allowed)");
  app.add_option("--seed", o.seed, "RNG seed");
  app.add_option("--out", o.out, "output directory");

  auto* classify = app.add_subcommand("classify", "classify a system");
  auto* norm = app.add_subcommand("norm", "norm table, optionally against the brute-force oracle");
  auto* sets = app.add_subcommand("sets", "sublevel sets: gaps, containment, recurrence, Δ* search");
  auto* measure = app.add_subcommand("measure", "invariance and full support of a measure");
  auto* lemma10 = app.add_subcommand("lemma10", "return-time difference test");
  app.require_subcommand(0, 1);

  const std::vector<std::string> systems{"shift", "rotation", "onepoint"};
  for (auto* sub : {classify, measure, lemma10})
    sub->add_option("--system", o.system, "shift | rotation | onepoint")->check(CLI::IsMember(systems));
  for (auto* sub : {classify, measure}) {
    sub->add_option("--measure", o.measure, "periodic-mixture | cylinder | lebesgue");
    sub->add_option("--measure-resolution", o.measure_resolution, "cylinder length or arc count");
    sub->add_option("--measure-eps", o.measure_eps, "full-support radius, p/q");
  }
  classify->add_option("--points", o.points, "number of sample points");
  classify->add_flag("--dense-minimal-points", o.dense_minimal, "assume dense minimal points");
  classify->add_option("--minimality-generator", o.minimality_generator, "e.g. [a,ab]");
  for (auto* sub : {norm, sets}) sub->add_option("--phi", o.phi, "factorial | constant");
  norm->add_option("--range", o.range, "tabulate |m| <= range");
  norm->add_flag("--check-oracle", o.check_oracle, "compare against the oracle");
  norm->add_option("--oracle-factors", o.oracle_factors, "oracle factor bound B");
  sets->add_option("--eps", o.eps, "sublevel threshold, p/q");
  lemma10->add_option("--trials", o.trials, "random sets per point");
  lemma10->add_option("--window", o.window, "window half-width W");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::string sub;
  for (auto* s : app.get_subcommands()) sub = s->get_name();
  try {
    if (sub.empty() && o.config.empty()) throw senslab::InvalidArgument("nothing to do: give --config or a subcommand");
    const auto config = build(o, sub);
    const auto artifacts = senslab::run(config);
    senslab::write_artifacts(artifacts, config.output_dir);
    summarize(artifacts, config.output_dir);
    return artifacts.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
