#pragma once

// Nice generating sets and bounded-block rewriting of words over them.

#include <cstddef>
#include <string>
#include <vector>

#include "senslab/group.hpp"

namespace senslab {

struct NicenessOptions {
  /// Radius of the ball used to confirm that S generates G.
  std::size_t generation_radius = 6;
};

struct NicenessReport {
  bool nice = false;
  /// One entry per derived level: does S ∩ G^(n) generate G^(n)?
  std::vector<bool> level_generated;
  std::vector<std::string> notes;
};

/// Checks that S ∩ G^(n) generates G^(n) for every level of the derived
/// series. Throws NotGenerating when S does not generate G at the configured
/// radius.
NicenessReport check_nice(const GroupSpec& spec, const NicenessOptions& options = {});
bool is_nice(const GroupSpec& spec, const NicenessOptions& options = {});

/// Throws NotGenerating if the ball of the given radius misses a generation witness.
void require_generates(const GroupSpec& spec, std::size_t radius);

struct RewriteBound {
  /// Maximum block count of a rewritten word.
  std::size_t blocks = 0;
  /// Blocks contributed by the derived-subgroup correction (the constant M).
  std::size_t correction_blocks = 0;
  std::string derivation;
};

/// Constructive block bound N(S) = |S| + M, where M = |S ∩ G^(1)| is the
/// number of derived generators the trailing correction can use.
RewriteBound rewrite_bound(const GroupSpec& spec);

struct RewriteResult {
  Word word;
  /// Blocks of `word` that came from the commutator correction.
  std::size_t correction_blocks = 0;
};

/// Rewrites w into s_1^f1 ... s_n^fn followed by a correction in the derived
/// subgroup written over S ∩ G^(1). Blocks are collected left to right; moving
/// a block past the already collected tail introduces a commutator, and the
/// commutators accumulate in the abelian derived subgroup.
///
/// Requires S nice and derived length <= 2. The result evaluates to the same
/// element and has at most rewrite_bound(spec).blocks blocks.
RewriteResult rewrite_bounded(const Word& w, const GroupSpec& spec);

}  // namespace senslab
