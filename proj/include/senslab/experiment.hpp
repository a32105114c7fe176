#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "senslab/analysis.hpp"
#include "senslab/norms.hpp"

namespace senslab {

struct SystemDescriptor {
  /// "shift", "rotation" or "onepoint"
  std::string kind = "shift";
  /// rotation angle; golden mean when absent
  std::optional<double> alpha;
  std::size_t complexity = 2;
  std::int64_t sample_radius = 32;
  /// onepoint: Z ⋊ Z/2 generator names and word-length cutoff
  std::vector<std::string> generators{"a", "ab"};
  std::size_t cutoff = 256;
};

struct ClassifyOptions {
  /// shift: dense_sample size; rotation: random points; onepoint: unused
  std::size_t points = 16;
  /// onepoint: classify ball(ball_radius) ∪ {∞}
  std::size_t ball_radius = 6;
  /// Run the configured measure and use "invariant with full support" as a
  /// hypothesis flag.
  bool measure_hypothesis = false;
  /// Hypothesis flag: dense minimal points for every nice generator.
  bool dense_minimal_points = false;
  /// Element for the return-time minimality probe ("" skips it). Integers
  /// for Z, names like "[a,ab]" for Z ⋊ Z/2.
  std::string minimality_generator;
};

struct MeasureOptions {
  /// shift: "periodic-mixture" or "cylinder"; rotation: "lebesgue"
  std::string kind = "periodic-mixture";
  std::size_t max_period = 3;
  /// cylinder length (shift) or arc count (rotation)
  std::size_t resolution = 3;
  std::string word = "01";
  Rational eps{1, 4};
};

struct NormOptions {
  PhiTable phi = PhiTable::factorial();
  std::string phi_name = "factorial";
  std::int64_t range = 720;
  bool check_oracle = false;
  int oracle_factors = 4;
};

struct SetOptions {
  Rational eps{1, 3};
  std::vector<std::int64_t> windows{720, 5040};
  std::vector<int> containment{2, 3, 4, 5};
  std::size_t delta_star_k = 20;
  int recurrence_n = 6;
};

struct Lemma10Options {
  std::size_t points = 3;
  std::int64_t window = 10000;
  std::size_t trials = 100;
  std::size_t set_size = 10;
  /// rotation target: ball of this radius around a random point
  Rational radius{1, 10};
  /// shift target: cylinder at 0
  std::string word = "01";
};

/// Everything that determines an experiment. Equal configs give
/// byte-identical artifacts.
struct ExperimentConfig {
  SystemDescriptor system;
  Resolution resolution;
  std::uint64_t seed = 1;
  /// Any of classify, sensitivity, norm, sets, measure, lemma10.
  std::vector<std::string> analyses;
  ClassifyOptions classify;
  MeasureOptions measure;
  NormOptions norm;
  SetOptions sets;
  Lemma10Options lemma10;
  std::string output_dir = "out";

  /// Throws InvalidArgument on an unknown analysis, system kind or an
  /// invalid resolution.
  void validate() const;
};

/// Resolution, sample sizes and measure tuned for one system kind
/// ("shift", "rotation", "onepoint"); analyses left empty.
ExperimentConfig preset(const std::string& system_kind);

void to_json(nlohmann::json& j, const Resolution& r);
void from_json(const nlohmann::json& j, Resolution& r);
/// Unknown keys are rejected so that typos surface as errors.
void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

/// Parses JSON text, allowing // and /* */ comments.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// The CSV tables written by every run, header first.
inline const std::vector<std::string>& csv_tables() {
  static const std::vector<std::string> names{"sensitivity", "classification", "norms",
                                              "sets",        "measures",       "lemma10"};
  return names;
}

struct Artifacts {
  /// 0 ok, 2 when a hypothesis flag is contradicted by the measured class
  int exit_code = 0;
  nlohmann::json report;
  /// table name -> CSV text
  std::map<std::string, std::string> csv;
};

/// Runs the analyses in order. Throws senslab::Error (or a JSON error) on
/// bad input.
Artifacts run(const ExperimentConfig& config);

/// Writes report.json and <table>.csv into dir, creating it.
void write_artifacts(const Artifacts& artifacts, const std::filesystem::path& dir);

}  // namespace senslab
