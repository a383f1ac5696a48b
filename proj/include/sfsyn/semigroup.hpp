#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfsyn/element_store.hpp"
#include "sfsyn/transformation.hpp"

namespace sfsyn {

/// A finite set of transformations closed under composition, together with
/// the generators it was built from.
///
/// Elements are kept in breadth-first discovery order. When built by closure(),
/// each element carries a shortest generator word; ties between words of equal
/// length go to the word found first when the queue is scanned in order and
/// generators are tried in list order.
class TransitionSemigroup {
 public:
  TransitionSemigroup() = default;

  /// Wraps an already closed element list (no words recorded).
  static TransitionSemigroup from_elements(int n, std::vector<Transformation> elements,
                                           std::vector<Transformation> generators);

  int state_count() const { return n_; }
  std::size_t size() const { return store_.size(); }
  const std::vector<Transformation>& elements() const { return store_.items(); }
  const Transformation& operator[](std::size_t i) const { return store_[i]; }
  const std::vector<Transformation>& generators() const { return generators_; }

  bool contains(const Transformation& t) const { return store_.contains(t); }
  std::optional<std::uint32_t> index_of(const Transformation& t) const { return store_.find(t); }

  bool has_words() const { return !last_generator_.empty(); }
  /// Generator indices spelling element i (requires has_words()).
  std::vector<std::size_t> word(std::size_t i) const;

 private:
  friend TransitionSemigroup closure(std::span<const Transformation> generators);

  int n_ = 0;
  ElementStore store_;
  std::vector<Transformation> generators_;
  std::vector<std::int32_t> parent_;
  std::vector<std::uint16_t> last_generator_;
};

/// Smallest composition-closed set containing the generators.
TransitionSemigroup closure(std::span<const Transformation> generators);

inline TransitionSemigroup closure(std::initializer_list<Transformation> generators) {
  return closure(std::span<const Transformation>(generators.begin(), generators.size()));
}

/// 0 has no preimage, n-1 is fixed, and for each 1 <= j <= n the state 0t^j
/// is n-1 or differs from q t^j for every interior q.
bool in_bsf(const Transformation& t);
bool in_vsf(const Transformation& t);
bool in_wsf(const Transformation& t);

/// a: (0 -> n-1)(1,...,n-2), b: (0 -> n-1)(1,2), c_p: (p -> n-1)(0 -> p) for 1 <= p <= n-2.
/// Duplicates are dropped, so n = 4 yields a, c_1, c_2 (a and b coincide there).
std::vector<Transformation> vsf_generators(int n);

/// Letters a, b, c, d, e of the five-letter witness (b, c, d, e when n = 4):
/// a: (0 -> n-1)(1,...,n-2), b: (0 -> n-1)(1,2), c: (0 -> n-1)(n-2 -> 1),
/// d: ({0,1} -> n-1), e: (Q\{0} -> n-1)(0 -> 1).
std::vector<Transformation> witness_letters(int n);

/// (n-1)^(n-2) + n - 2, with overflow reported as ArithmeticError.
unsigned __int128 wsf_bound(int n);
std::string to_string_u128(unsigned __int128 value);

/// Wsf(n) listed directly: first every map sending 0 and n-1 to n-1 and the
/// interior into Q \ {0} (odometer order), then (Q\{0} -> n-1)(0 -> p) for p = 1..n-2.
TransitionSemigroup enumerate_wsf(int n);

/// (S -> n-1) for every S with 0 in S and n-1 not in S; 2^(n-2) maps.
std::vector<Transformation> semiconstant_family(int n);

bool is_irreducibly_generated(std::span<const Transformation> generators);

/// All n^n transformations in odometer order (state 0 varies slowest).
std::vector<Transformation> all_transformations(int n);
std::vector<Transformation> bsf_elements(int n);

/// "n=<n> size=<k>" followed by one transformation per line.
std::string to_text(const TransitionSemigroup& semigroup);
TransitionSemigroup parse_semigroup_text(std::string_view text);

}  // namespace sfsyn
