#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfsyn/collision.hpp"
#include "sfsyn/semigroup.hpp"

namespace sfsyn {

enum class SubCase { none, p_below_r, p_above_r, i, ii };

struct PhiCase {
  int number = 0;  // 1..12
  SubCase sub = SubCase::none;

  bool operator==(const PhiCase&) const = default;
};

std::string to_string(PhiCase c);

/// Colliding pairs of the whole semigroup T, plus T itself when available.
struct PhiContext {
  int n = 0;
  PairSet colliding;
  const TransitionSemigroup* semigroup = nullptr;

  static PhiContext from(const TransitionSemigroup& semigroup);
  bool collides(State a, State b) const;
};

struct PhiOutcome {
  Transformation input;
  PhiCase kase;
  Transformation image;
  std::optional<Transformation> reconstruction;  // absent when the inverse failed
};

/// Throws UnsupportedError for n < 7 and PreconditionError when t cannot occur
/// in the semigroup of a minimal suffix-free DFA (0 has a preimage, n-1 moves,
/// or the 0-path does not run aperiodically into n-1).
PhiCase classify(const Transformation& t, const PhiContext& ctx);
/// The image under the mapping only, without reconstruction.
Transformation phi_image(const Transformation& t, const PhiContext& ctx);
PhiOutcome phi(const Transformation& t, const PhiContext& ctx);

enum class InverseCheck { direct, brute_force };

/// Rebuilds t from s using only s and the colliding pairs; the candidate is
/// confirmed by mapping it forward again (and by membership when the context
/// carries T). brute_force additionally scans T and throws StructureError if
/// the two answers disagree. Throws NotInImageError when s has no preimage.
Transformation phi_inverse(const Transformation& s, const PhiContext& ctx,
                           InverseCheck check = InverseCheck::direct);
/// Case the inverse used for s (same errors as phi_inverse).
PhiCase inverse_case(const Transformation& s, const PhiContext& ctx);

struct InjectivityReport {
  int n = 0;
  std::size_t size = 0;
  unsigned __int128 bound = 0;
  bool images_in_wsf = true;
  bool images_distinct = true;
  bool round_trip = true;
  bool images_outside_t = true;  // every non-Case-1 image focuses a colliding pair
  std::map<std::string, std::size_t> case_counts;
  std::vector<std::string> counterexamples;  // capped

  bool within_bound() const { return size <= bound; }
  bool passed() const { return images_in_wsf && images_distinct && round_trip && images_outside_t && within_bound(); }
};

InjectivityReport verify_injective(const TransitionSemigroup& semigroup);
nlohmann::json to_json(const InjectivityReport& report);

/// A transformation of Wsf(n) outside the image of T: the first colliding pair
/// {p, r} is focused to the fixed point r and three further states form a
/// 3-cycle; everything else goes to n-1. Empty without colliding pairs.
std::optional<Transformation> strict_bound_witness(const TransitionSemigroup& semigroup);

}  // namespace sfsyn
