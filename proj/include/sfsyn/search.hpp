#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfsyn/dfa.hpp"
#include "sfsyn/semigroup.hpp"

namespace sfsyn {

enum class Symmetry {
  all_states,  // any permutation of Q
  interior,    // permutations fixing 0 and n-1
};

struct CanonicalSemiautomaton {
  Semiautomaton form;       // letters conjugated and sorted
  std::string fingerprint;  // letters as hex digits, '.'-separated

  bool operator==(const CanonicalSemiautomaton& o) const { return fingerprint == o.fingerprint; }
  auto operator<=>(const CanonicalSemiautomaton& o) const { return fingerprint <=> o.fingerprint; }
};

std::string fingerprint(std::span<const Transformation> letters);
std::vector<Transformation> parse_fingerprint(std::string_view text);

/// Lexicographically least sorted letter list over the chosen permutation group.
CanonicalSemiautomaton canonicalize(const Semiautomaton& sa, Symmetry symmetry = Symmetry::all_states);

/// (q) t^pi = pi(t(pi^-1(q))), with perm[q] = pi(q).
Transformation conjugate(const Transformation& t, std::span<const State> perm);

/// Closure-based conflict test: true when the semigroup generated by t and u
/// leaves Bsf(n), focuses one of its own colliding pairs, admits no interior
/// final state with a suffix-free language, or collides or focuses every
/// interior pair.
bool conflict(const Transformation& t, const Transformation& u);

struct ConflictGraph {
  std::vector<Transformation> vertices;  // ascending
  std::vector<std::vector<std::size_t>> neighbours;  // ascending indices
};

ConflictGraph conflict_graph(std::vector<Transformation> vertices);
/// Maximal matching: scan vertices in order, match each free vertex with its
/// least free neighbour.
std::size_t greedy_matching(const ConflictGraph& graph);
long long prune_bound(std::size_t x, std::size_t y, std::size_t matching);

/// Elements t of Bsf(n) outside X such that X with t added stays inside
/// Bsf(n), focuses none of its colliding pairs, still admits a suffix-free
/// interior final state, and neither collides nor focuses every interior pair.
/// X must carry its generators.
std::vector<Transformation> allowed_additions(const TransitionSemigroup& x);

/// Unary semiautomata over non-semiconstant Bsf(n) letters, up to interior relabelling.
std::vector<CanonicalSemiautomaton> first_level(int n);
/// Every one-letter extension by a non-semiconstant Bsf(n) letter whose
/// closure stays in Bsf(n) and whose letters remain irreducible; no pruning.
std::vector<CanonicalSemiautomaton> extend(const std::vector<CanonicalSemiautomaton>& level, int n);

struct SearchOptions {
  int n = 4;
  std::size_t target = 13;
  int max_letters = 10;
  int threads = 1;
  std::optional<std::filesystem::path> checkpoint_dir;
  bool resume = false;
  bool prune = true;  // false: evaluate every admitted node (for validation at tiny n)
  /// Only look for semigroups with a colliding pair, which sharpens the
  /// bound. Defaults to on when target >= |Wsf(n)|, since a semigroup without
  /// colliding pairs lies inside Wsf(n).
  std::optional<bool> require_collision;
  std::function<void(const std::string&)> log;
};

struct FoundSemigroup {
  std::string fingerprint;  // letters without the semiconstants
  std::size_t size = 0;
  bool realizable = false;  // some final set gives a minimal suffix-free DFA
};

struct LevelStats {
  int letters = 0;
  std::size_t nodes = 0;
  std::size_t pruned = 0;
  std::size_t rejected = 0;   // leaves Bsf, or no suffix-free final state
  std::size_t extremes = 0;   // all pairs colliding or all focused
  std::size_t reducible = 0;
  std::size_t children = 0;
};

struct SearchResult {
  int n = 0;
  std::size_t target = 0;
  std::string reference;  // "Vsf" or "Wsf"
  std::size_t reference_size = 0;
  std::size_t largest_other = 0;  // largest admitted semigroup other than the references
  std::vector<FoundSemigroup> others;
  std::vector<LevelStats> levels;
  std::size_t visited = 0;
  std::size_t semiconstant_rejections = 0;
  bool collision_required = false;
  bool cap_reached = false;
  bool exhausted = false;  // the last level produced no children
  double seconds = 0;

  bool unique() const { return exhausted && others.empty() && reference_size >= target; }
};

/// Requires 4 <= n <= 6.
SearchResult search_max(const SearchOptions& options);
nlohmann::json to_json(const SearchResult& result, bool with_timing = true);

/// Brute force for tiny n: sizes of all semigroups between closure(semiconstants)
/// and Bsf(n) that are generated inside Bsf(n), focus no colliding pair, admit
/// a suffix-free interior final state and are neither all-colliding nor
/// all-focused, one entry per class under interior relabelling. Feasible for n = 4.
std::vector<std::size_t> exhaustive_admissible_sizes(int n, bool require_collision = false);

}  // namespace sfsyn
