#pragma once

#include <bitset>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "sfsyn/semigroup.hpp"
#include "sfsyn/transformation.hpp"

namespace sfsyn {

/// Unordered pairs {p, q} of distinct interior states 1..n-2, packed by pair_index.
inline constexpr int kMaxPairs = 128;
using PairSet = std::bitset<kMaxPairs>;

/// Index of {p, q} among interior pairs, p != q (order irrelevant).
int pair_index(int n, State p, State q);
int pair_count(int n);
std::pair<State, State> pair_at(int n, int index);
PairSet all_pairs(int n);

struct FocusRecord {
  State target = -1;
  Transformation by;
  std::size_t element = 0;  // index into the semigroup
};

struct PairStatus {
  State p = -1, q = -1;  // p < q
  std::optional<Transformation> colliding_by;
  std::size_t colliding_element = 0;
  /// One record per interior target, first witness in element order.
  std::vector<FocusRecord> focused_by;

  bool colliding() const { return colliding_by.has_value(); }
  bool focused() const { return !focused_by.empty(); }
};

/// Bitset summary, cheap enough for search inner loops.
struct CollisionSummary {
  PairSet colliding;
  PairSet focused;
};

/// Pairs collided by t: 0t = p and rt = q for some interior r.
PairSet colliding_pairs_of(const Transformation& t);
/// Pairs sent by t to a common interior state.
PairSet focused_pairs_of(const Transformation& t);
CollisionSummary collision_summary(std::span<const Transformation> elements);

/// Throws StructureError unless every element fixes n-1; requires n >= 4.
std::vector<PairStatus> pair_statuses(const TransitionSemigroup& semigroup);
/// No pair is both colliding and focused.
bool verify_suffix_free_consistency(const TransitionSemigroup& semigroup);

struct NoCollisionBoundReport {
  bool applicable = false;  // false when some pair collides
  std::size_t size = 0;
  unsigned __int128 bound = 0;
  bool within_bound = false;
  std::optional<Transformation> outside_wsf;

  bool passed() const { return applicable && within_bound && !outside_wsf; }
};

/// A semigroup without colliding pairs lies inside Wsf(n) and respects its size.
NoCollisionBoundReport check_no_collision_bound(const TransitionSemigroup& semigroup);

nlohmann::json pair_report_json(const TransitionSemigroup& semigroup, const std::vector<PairStatus>& statuses);

}  // namespace sfsyn
