#include "senslab/rewrite.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "senslab/errors.hpp"

namespace senslab {

namespace {

// Derived generators: indices of S that lie in G^(1).
std::vector<std::size_t> derived_generator_indices(const GroupSpec& spec) {
  std::vector<std::size_t> out;
  if (spec.derived_length() < 2) return out;
  for (std::size_t i = 0; i < spec.generators().size(); ++i)
    if (spec.in_derived(spec.generators()[i], 1) && !spec.generators()[i].is_identity()) out.push_back(i);
  return out;
}

// G^(1) of the dihedral group is <a^2> ≅ Z; returns j for a^(2j).
std::int64_t derived_coordinate(const GroupElement& g) { return g.as_semi()->k / 2; }

// Coefficients c_i with sum c_i * values_i = gcd(values).
std::vector<std::int64_t> bezout(const std::vector<std::int64_t>& values, std::int64_t& gcd) {
  std::vector<std::int64_t> coeffs(values.size(), 0);
  gcd = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    // extended Euclid on (gcd, values[i])
    std::int64_t old_r = gcd, r = values[i];
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
      const std::int64_t q = old_r / r;
      old_r = std::exchange(r, old_r - q * r);
      old_s = std::exchange(s, old_s - q * s);
      old_t = std::exchange(t, old_t - q * t);
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    for (std::size_t k = 0; k < i; ++k) coeffs[k] *= old_s;
    coeffs[i] = old_t;
    gcd = old_r;
  }
  return coeffs;
}

}  // namespace

void require_generates(const GroupSpec& spec, std::size_t radius) {
  const WordLengthTable table(spec, radius);
  for (const auto& w : spec.generation_witnesses())
    if (!table.find(w))
      throw NotGenerating("generating set does not reach " + to_string(w) + " within radius " +
                          std::to_string(radius));
}

NicenessReport check_nice(const GroupSpec& spec, const NicenessOptions& options) {
  require_generates(spec, options.generation_radius);
  NicenessReport report;
  report.level_generated.push_back(true);
  report.notes.push_back("G^(0) = G is generated by S (ball radius " + std::to_string(options.generation_radius) +
                         ")");
  if (spec.derived_length() >= 2) {
    std::vector<std::int64_t> coords;
    for (const auto i : derived_generator_indices(spec)) coords.push_back(derived_coordinate(spec.generators()[i]));
    std::int64_t g = 0;
    bezout(coords, g);
    const bool ok = g == 1;
    report.level_generated.push_back(ok);
    report.notes.push_back("G^(1) = <a^2>: S ∩ G^(1) has " + std::to_string(coords.size()) +
                           " nontrivial elements, index of generated subgroup " +
                           (coords.empty() ? std::string("infinite") : std::to_string(g)));
  }
  report.level_generated.push_back(true);
  report.notes.push_back("G^(" + std::to_string(spec.derived_length()) + ") is trivial");
  report.nice = std::all_of(report.level_generated.begin(), report.level_generated.end(), [](bool b) { return b; });
  return report;
}

bool is_nice(const GroupSpec& spec, const NicenessOptions& options) { return check_nice(spec, options).nice; }

RewriteBound rewrite_bound(const GroupSpec& spec) {
  RewriteBound b;
  b.correction_blocks = derived_generator_indices(spec).size();
  b.blocks = spec.generators().size() + b.correction_blocks;
  b.derivation = "N(S) = |S| + M with |S| = " + std::to_string(spec.generators().size()) +
                 " collected blocks and M = |S ∩ G^(1)| = " + std::to_string(b.correction_blocks) +
                 " correction blocks; N(S) <= |S|(M + 1) = " +
                 std::to_string(spec.generators().size() * (b.correction_blocks + 1));
  return b;
}

RewriteResult rewrite_bounded(const Word& w, const GroupSpec& spec) {
  if (spec.derived_length() > 2) throw InvalidArgument("solvability degree above 2 is not supported");
  if (!is_nice(spec)) throw InvalidArgument("generating set is not nice");

  const auto& gens = spec.generators();
  const std::size_t n = gens.size();
  std::vector<std::int64_t> collected(n, 0);
  GroupElement correction = spec.identity();

  for (const auto& block : w.blocks) {
    if (block.gen >= n) throw InvalidArgument("generator index " + std::to_string(block.gen) + " out of range");
    const GroupElement step = power(gens[block.gen], block.exp);
    // tail = s_{i+1}^{f_{i+1}} ... s_n^{f_n}; tail·step = step·tail·[tail, step]
    GroupElement tail = spec.identity();
    for (std::size_t j = block.gen + 1; j < n; ++j) tail = tail * power(gens[j], collected[j]);
    correction = commutator(tail, step) * (inverse(step) * correction * step);
    collected[block.gen] += block.exp;
    if (!spec.in_derived(correction, 1)) throw Error("commutator correction left the derived subgroup");
  }

  RewriteResult result;
  for (std::size_t i = 0; i < n; ++i) {
    // reflections have order two
    if (gens[i].kind() == GroupKind::semidirect && gens[i].as_semi()->flip) collected[i] %= 2;
    if (collected[i] != 0) result.word.blocks.push_back({i, collected[i]});
  }

  if (!correction.is_identity()) {
    const auto derived = derived_generator_indices(spec);
    std::vector<std::int64_t> coords;
    for (const auto i : derived) coords.push_back(derived_coordinate(gens[i]));
    std::int64_t g = 0;
    const auto coeffs = bezout(coords, g);
    const std::int64_t target = derived_coordinate(correction);
    for (std::size_t k = 0; k < derived.size(); ++k) {
      const std::int64_t e = coeffs[k] * target;
      if (e == 0) continue;
      if (!result.word.blocks.empty() && result.word.blocks.back().gen == derived[k]) {
        result.word.blocks.back().exp += e;
        if (result.word.blocks.back().exp == 0) result.word.blocks.pop_back();
      } else {
        result.word.blocks.push_back({derived[k], e});
        ++result.correction_blocks;
      }
    }
  }
  return result;
}

}  // namespace senslab
