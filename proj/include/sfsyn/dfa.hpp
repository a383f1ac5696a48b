#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfsyn/semigroup.hpp"
#include "sfsyn/transformation.hpp"

namespace sfsyn {

using Word = std::vector<std::size_t>;  // letter indices

/// Complete DFA over states {0..n-1}; delta[a] is the transformation of letter a.
struct Dfa {
  int n = 0;
  std::vector<std::string> alphabet;
  std::vector<Transformation> delta;
  State initial = 0;
  StateSet finals;

  /// Throws ArgumentError unless the table is total and consistent.
  void validate() const;
  State run(State from, std::span<const std::size_t> word) const;
  bool accepts(std::span<const std::size_t> word) const { return finals.contains(run(initial, word)); }
  std::string spell(std::span<const std::size_t> word) const;

  bool operator==(const Dfa&) const = default;
};

/// A DFA without initial and final designations.
struct Semiautomaton {
  int n = 0;
  std::vector<Transformation> letters;

  bool operator==(const Semiautomaton&) const = default;
};

/// The five-letter witness over {a,b,c,d,e} (four letters {b,c,d,e} when n = 4),
/// initial 0, finals {1}.
Dfa witness(int n);

/// DFA over letters a, b, c1..c{n-2} generating Vsf(n), initial 0, finals {1}.
Dfa vsf_dfa(int n);

TransitionSemigroup transition_semigroup(const Dfa& dfa);

/// Drops states unreachable from the initial state (breadth-first renumbering).
Dfa trim(const Dfa& dfa);
bool is_minimal(const Dfa& dfa);
/// Quotient DFA; states numbered in breadth-first order from the initial state,
/// letters tried in alphabet order.
Dfa minimize(const Dfa& dfa);

/// Words w = x u (x non-empty) with both w and u accepted.
struct SuffixViolation {
  Word longer;
  Word suffix;
};

/// Searches the product of the automaton with itself: a pair (p, q) starts at
/// (state after a non-empty word, initial) and both coordinates then read the
/// same letters; a pair of final states is a violation.
std::optional<SuffixViolation> find_suffix_violation(const Dfa& dfa);
bool is_suffix_free(const Dfa& dfa);

/// Interior states f for which the letters, read from state 0 with the single
/// final state f, accept a suffix-free language.
StateSet suffix_free_singletons(int n, std::span<const Transformation> letters);

/// The non-final state fixed by every letter (lowest such state), if any.
std::optional<State> empty_state(const Dfa& dfa);

struct SinkStructureReport {
  bool applicable = false;  // the minimized DFA accepts a suffix-free language
  bool minimized_first = false;
  std::string note;
  std::optional<State> empty;  // in the renumbered DFA, i.e. n-1 when present
  std::size_t elements_checked = 0;
  std::optional<Transformation> bad_zero_path;

  bool passed() const { return applicable && empty.has_value() && !bad_zero_path; }
};

/// Checks that a suffix-free DFA has an empty state and that every element of
/// its transition semigroup sends 0 along an aperiodic path into that state.
/// Non-minimal input is minimized first; the report says so.
SinkStructureReport check_sink_structure(const Dfa& dfa);

/// permutation[old] = new.
Dfa relabel(const Dfa& dfa, std::span<const State> permutation);
/// Moves the initial state to 0 and the empty state to n-1; other states keep
/// their relative order.
Dfa renumber_initial_empty(const Dfa& dfa);

/// Line-oriented text:
///   n=<n> letters=<a,b,...> initial=<q> finals=<p,q,...>
///   <letter>: i0 i1 ... i(n-1)
std::string to_text(const Dfa& dfa);
Dfa parse_dfa(std::string_view text);
std::string to_dot(const Dfa& dfa);

}  // namespace sfsyn
