#pragma once

#include <cstdint>
#include <vector>

#include "sfsyn/dfa.hpp"

namespace sfsyn {

struct SampleOptions {
  int n = 7;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  int min_letters = 2;
  int max_letters = 4;
  std::size_t max_tries = 2'000'000;
};

struct SampleStats {
  std::size_t tries = 0;
  std::size_t outside_bsf = 0;
  std::size_t not_minimal = 0;
  std::size_t not_suffix_free = 0;
};

/// Random minimal suffix-free DFAs with initial state 0 and empty state n-1.
/// Letters are drawn uniformly from Bsf(n) and finals from the interior (state
/// 1 always final); candidates are kept only if the closure stays in Bsf(n),
/// the DFA is minimal and is_suffix_free accepts it. Deterministic per seed.
/// Requires 4 <= n <= 7.
std::vector<Dfa> sample_minimal_suffix_free(const SampleOptions& options, SampleStats* stats = nullptr);

}  // namespace sfsyn
