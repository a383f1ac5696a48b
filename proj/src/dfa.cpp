#include "sfsyn/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace sfsyn {

void Dfa::validate() const {
  if (n < 1 || n > kMaxStates) throw ArgumentError("DFA state count out of range: " + std::to_string(n));
  if (alphabet.empty()) throw ArgumentError("DFA needs at least one letter");
  if (alphabet.size() != delta.size()) throw ArgumentError("alphabet and transition table differ in length");
  for (std::size_t a = 0; a < delta.size(); ++a) {
    if (delta[a].size() != n) throw DimensionError("letter " + alphabet[a] + " acts on the wrong number of states");
    if (alphabet[a].empty()) throw ArgumentError("empty letter name");
    for (std::size_t b = 0; b < a; ++b)
      if (alphabet[a] == alphabet[b]) throw ArgumentError("duplicate letter " + alphabet[a]);
  }
  if (initial < 0 || initial >= n) throw ArgumentError("initial state out of range");
  if (finals.bits() >> n) throw ArgumentError("final state out of range");
}

State Dfa::run(State from, std::span<const std::size_t> word) const {
  State q = from;
  for (std::size_t a : word) q = delta.at(a)[q];
  return q;
}

std::string Dfa::spell(std::span<const std::size_t> word) const {
  bool single = std::all_of(alphabet.begin(), alphabet.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0 && !single) out += ' ';
    out += alphabet.at(word[i]);
  }
  return out.empty() ? std::string("ε") : out;
}

Dfa witness(int n) {
  Dfa d;
  d.n = n;
  d.delta = witness_letters(n);
  d.alphabet = n > 4 ? std::vector<std::string>{"a", "b", "c", "d", "e"} : std::vector<std::string>{"b", "c", "d", "e"};
  d.initial = 0;
  d.finals = StateSet{1};
  return d;
}

Dfa vsf_dfa(int n) {
  Dfa d;
  d.n = n;
  d.delta = vsf_generators(n);
  if (n > 4) d.alphabet = {"a", "b"};
  else d.alphabet = {"a"};
  for (State p = 1; p < n - 1; ++p) d.alphabet.push_back("c" + std::to_string(p));
  d.initial = 0;
  d.finals = StateSet{1};
  return d;
}

TransitionSemigroup transition_semigroup(const Dfa& dfa) {
  dfa.validate();
  return closure(dfa.delta);
}

namespace {

// Breadth-first order of the states reachable from the initial state.
std::vector<State> reachable_order(const Dfa& dfa) {
  std::vector<State> order{dfa.initial};
  StateSet seen{dfa.initial};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const Transformation& t : dfa.delta) {
      const State r = t[order[i]];
      if (!seen.contains(r)) {
        seen.insert(r);
        order.push_back(r);
      }
    }
  return order;
}

// Builds the DFA on classes, numbered by breadth-first discovery from the initial class.
Dfa quotient(const Dfa& dfa, const std::vector<int>& cls) {
  std::vector<int> number(static_cast<std::size_t>(dfa.n), -1);
  std::vector<State> rep;
  std::deque<State> queue{dfa.initial};
  number[cls[dfa.initial]] = 0;
  rep.push_back(dfa.initial);
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (const Transformation& t : dfa.delta) {
      const State r = t[q];
      if (number[cls[r]] < 0) {
        number[cls[r]] = static_cast<int>(rep.size());
        rep.push_back(r);
        queue.push_back(r);
      }
    }
  }
  Dfa out;
  out.n = static_cast<int>(rep.size());
  out.alphabet = dfa.alphabet;
  out.initial = 0;
  for (const Transformation& t : dfa.delta) {
    Transformation u = Transformation::identity(out.n);
    for (int i = 0; i < out.n; ++i) u.set(i, number[cls[t[rep[i]]]]);
    out.delta.push_back(u);
  }
  for (int i = 0; i < out.n; ++i)
    if (dfa.finals.contains(rep[i])) out.finals.insert(i);
  return out;
}

// Moore refinement; returns class ids over all states.
std::vector<int> equivalence_classes(const Dfa& dfa) {
  const auto n = static_cast<std::size_t>(dfa.n);
  std::vector<int> cls(n);
  for (State q = 0; q < dfa.n; ++q) cls[q] = dfa.finals.contains(q) ? 1 : 0;
  int count = 0;
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    for (State q = 0; q < dfa.n; ++q) {
      std::vector<int> signature{cls[q]};
      for (const Transformation& t : dfa.delta) signature.push_back(cls[t[q]]);
      next[q] = ids.emplace(std::move(signature), static_cast<int>(ids.size())).first->second;
    }
    const int next_count = static_cast<int>(ids.size());
    cls = std::move(next);
    if (next_count == count) break;
    count = next_count;
  }
  return cls;
}

}  // namespace

Dfa trim(const Dfa& dfa) {
  dfa.validate();
  std::vector<int> cls(static_cast<std::size_t>(dfa.n));
  for (State q = 0; q < dfa.n; ++q) cls[q] = q;
  return quotient(dfa, cls);
}

Dfa minimize(const Dfa& dfa) {
  dfa.validate();
  return quotient(dfa, equivalence_classes(dfa));
}

bool is_minimal(const Dfa& dfa) {
  dfa.validate();
  if (reachable_order(dfa).size() != static_cast<std::size_t>(dfa.n)) return false;
  const std::vector<int> cls = equivalence_classes(dfa);
  return *std::max_element(cls.begin(), cls.end()) == dfa.n - 1;
}

std::optional<SuffixViolation> find_suffix_violation(const Dfa& dfa) {
  dfa.validate();
  const int n = dfa.n;
  const std::size_t letters = dfa.delta.size();

  // Shortest non-empty word reaching each state.
  std::vector<Word> prefix(static_cast<std::size_t>(n));
  std::vector<bool> reached(static_cast<std::size_t>(n), false);
  std::deque<State> queue;
  for (std::size_t a = 0; a < letters; ++a) {
    const State r = dfa.delta[a][dfa.initial];
    if (!reached[r]) {
      reached[r] = true;
      prefix[r] = {a};
      queue.push_back(r);
    }
  }
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < letters; ++a) {
      const State r = dfa.delta[a][q];
      if (!reached[r]) {
        reached[r] = true;
        prefix[r] = prefix[q];
        prefix[r].push_back(a);
        queue.push_back(r);
      }
    }
  }

  // Pair (x-state, u-state): a word x u against its suffix u.
  struct Node {
    int parent;
    std::size_t letter;
    State origin;
  };
  const auto key = [n](State p, State q) { return static_cast<std::size_t>(p * n + q); };
  std::vector<int> node_of(static_cast<std::size_t>(n * n), -1);
  std::vector<Node> nodes;
  std::vector<std::pair<State, State>> pair_of;
  for (State p = 0; p < n; ++p) {
    if (!reached[p] || node_of[key(p, dfa.initial)] >= 0) continue;
    node_of[key(p, dfa.initial)] = static_cast<int>(nodes.size());
    nodes.push_back({-1, 0, p});
    pair_of.emplace_back(p, dfa.initial);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [p, q] = pair_of[i];
    if (dfa.finals.contains(p) && dfa.finals.contains(q)) {
      Word u;
      for (int at = static_cast<int>(i); nodes[at].parent >= 0; at = nodes[at].parent) u.push_back(nodes[at].letter);
      std::reverse(u.begin(), u.end());
      int root = static_cast<int>(i);
      while (nodes[root].parent >= 0) root = nodes[root].parent;
      SuffixViolation v;
      v.longer = prefix[nodes[root].origin];
      v.longer.insert(v.longer.end(), u.begin(), u.end());
      v.suffix = std::move(u);
      return v;
    }
    for (std::size_t a = 0; a < letters; ++a) {
      const State p2 = dfa.delta[a][p], q2 = dfa.delta[a][q];
      if (node_of[key(p2, q2)] >= 0) continue;
      node_of[key(p2, q2)] = static_cast<int>(nodes.size());
      nodes.push_back({static_cast<int>(i), a, -1});
      pair_of.emplace_back(p2, q2);
    }
  }
  return std::nullopt;
}

bool is_suffix_free(const Dfa& dfa) { return !find_suffix_violation(dfa).has_value(); }

std::optional<State> empty_state(const Dfa& dfa) {
  dfa.validate();
  for (State q = 0; q < dfa.n; ++q) {
    if (dfa.finals.contains(q)) continue;
    if (std::all_of(dfa.delta.begin(), dfa.delta.end(), [q](const Transformation& t) { return t[q] == q; })) return q;
  }
  return std::nullopt;
}

Dfa relabel(const Dfa& dfa, std::span<const State> permutation) {
  dfa.validate();
  if (permutation.size() != static_cast<std::size_t>(dfa.n)) throw DimensionError("permutation length mismatch");
  StateSet seen;
  for (State q : permutation) {
    if (q < 0 || q >= dfa.n || seen.contains(q)) throw ArgumentError("relabelling is not a permutation");
    seen.insert(q);
  }
  Dfa out;
  out.n = dfa.n;
  out.alphabet = dfa.alphabet;
  out.initial = permutation[dfa.initial];
  for (State q : dfa.finals.to_vector()) out.finals.insert(permutation[q]);
  for (const Transformation& t : dfa.delta) {
    Transformation u = Transformation::identity(dfa.n);
    for (State q = 0; q < dfa.n; ++q) u.set(permutation[q], permutation[t[q]]);
    out.delta.push_back(u);
  }
  return out;
}

Dfa renumber_initial_empty(const Dfa& dfa) {
  const std::optional<State> empty = empty_state(dfa);
  if (!empty) throw StructureError("DFA has no empty state");
  if (*empty == dfa.initial) {
    if (dfa.n != 1) throw StructureError("initial state is the empty state of a DFA with unreachable states");
    return dfa;
  }
  std::vector<State> permutation(static_cast<std::size_t>(dfa.n));
  permutation[dfa.initial] = 0;
  permutation[*empty] = dfa.n - 1;
  State next = 1;
  for (State q = 0; q < dfa.n; ++q)
    if (q != dfa.initial && q != *empty) permutation[q] = next++;
  return relabel(dfa, permutation);
}

SinkStructureReport check_sink_structure(const Dfa& dfa) {
  SinkStructureReport report;
  Dfa work = dfa;
  if (!is_minimal(dfa)) {
    work = minimize(dfa);
    report.minimized_first = true;
    report.note = "input was not minimal; checked its minimization on " + std::to_string(work.n) + " states";
  }
  if (!is_suffix_free(work)) {
    report.note += report.note.empty() ? "" : "; ";
    report.note += "language is not suffix-free";
    return report;
  }
  report.applicable = true;
  if (!empty_state(work)) {
    report.note += report.note.empty() ? "" : "; ";
    report.note += "no empty state";
    return report;
  }
  work = renumber_initial_empty(work);
  report.empty = work.n - 1;
  const TransitionSemigroup semigroup = closure(work.delta);
  for (const Transformation& t : semigroup.elements()) {
    ++report.elements_checked;
    const ZeroPath path = zero_path(t);
    if (!path.aperiodic() || path.last() != work.n - 1) {
      report.bad_zero_path = t;
      break;
    }
  }
  return report;
}

namespace {

std::string join_states(const StateSet& s) {
  std::string out;
  for (State q : s.to_vector()) {
    if (!out.empty()) out += ',';
    out += std::to_string(q);
  }
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = text.find(sep, start);
    out.emplace_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

int parse_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + ": '" + s + "'");
  }
  if (used != s.size()) throw ParseError(std::string("bad ") + what + ": '" + s + "'");
  return value;
}

}  // namespace

std::string to_text(const Dfa& dfa) {
  dfa.validate();
  std::string out = "n=" + std::to_string(dfa.n) + " letters=";
  for (std::size_t a = 0; a < dfa.alphabet.size(); ++a) {
    if (a > 0) out += ',';
    out += dfa.alphabet[a];
  }
  out += " initial=" + std::to_string(dfa.initial) + " finals=" + join_states(dfa.finals) + "\n";
  for (std::size_t a = 0; a < dfa.delta.size(); ++a) out += dfa.alphabet[a] + ": " + to_string(dfa.delta[a]) + "\n";
  return out;
}

Dfa parse_dfa(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  while (std::getline(in, header) && header.find_first_not_of(" \t\r") == std::string::npos) {
  }
  if (header.empty()) throw ParseError("missing DFA header");

  Dfa dfa;
  bool have_n = false, have_letters = false, have_initial = false, have_finals = false;
  std::istringstream fields(header);
  std::string field;
  while (fields >> field) {
    const std::size_t eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("bad header field '" + field + "'");
    const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "n") {
      dfa.n = parse_int(value, "state count");
      have_n = true;
    } else if (key == "letters") {
      dfa.alphabet = split(value, ',');
      have_letters = true;
    } else if (key == "initial") {
      dfa.initial = parse_int(value, "initial state");
      have_initial = true;
    } else if (key == "finals") {
      if (!value.empty())
        for (const std::string& s : split(value, ',')) {
          const int q = parse_int(s, "final state");
          if (q < 0 || q >= kMaxStates) throw ParseError("final state out of range");
          dfa.finals.insert(q);
        }
      have_finals = true;
    } else {
      throw ParseError("unknown header field '" + key + "'");
    }
  }
  if (!have_n || !have_letters || !have_initial || !have_finals) throw ParseError("DFA header is incomplete");
  if (dfa.n < 1 || dfa.n > kMaxStates) throw ParseError("state count out of range");

  std::vector<std::optional<Transformation>> rows(dfa.alphabet.size());
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("bad transition line '" + line + "'");
    std::string name = line.substr(0, colon);
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    const auto it = std::find(dfa.alphabet.begin(), dfa.alphabet.end(), name);
    if (it == dfa.alphabet.end()) throw ParseError("transition line for unknown letter '" + name + "'");
    auto& row = rows[static_cast<std::size_t>(it - dfa.alphabet.begin())];
    if (row) throw ParseError("letter '" + name + "' defined twice");
    row = parse_transformation(std::string_view(line).substr(colon + 1));
    if (row->size() != dfa.n) throw ParseError("letter '" + name + "' has a partial or oversized table");
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (!rows[a]) throw ParseError("letter '" + dfa.alphabet[a] + "' has no transitions");
    dfa.delta.push_back(*rows[a]);
  }
  try {
    dfa.validate();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return dfa;
}

std::string to_dot(const Dfa& dfa) {
  dfa.validate();
  const std::optional<State> empty = empty_state(dfa);
  std::ostringstream out;
  out << "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n";
  out << "  start -> " << dfa.initial << ";\n";
  for (State q = 0; q < dfa.n; ++q) {
    out << "  " << q << " [";
    out << (dfa.finals.contains(q) ? "shape=doublecircle" : "shape=circle");
    if (empty && *empty == q) out << ", style=dashed, color=gray, fontcolor=gray";
    out << "];\n";
  }
  for (State p = 0; p < dfa.n; ++p)
    for (State q = 0; q < dfa.n; ++q) {
      std::string label;
      for (std::size_t a = 0; a < dfa.delta.size(); ++a)
        if (dfa.delta[a][p] == q) label += (label.empty() ? "" : ",") + dfa.alphabet[a];
      if (label.empty()) continue;
      out << "  " << p << " -> " << q << " [label=\"" << label << "\"";
      if (empty && *empty == q) out << ", color=gray";
      out << "];\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace sfsyn

namespace sfsyn {

StateSet suffix_free_singletons(int n, std::span<const Transformation> letters) {
  // With one final state f, a violation is a reachable pair (f, f).
  std::uint32_t reached = 0;
  std::vector<State> frontier;
  for (const Transformation& t : letters)
    if (!((reached >> t[0]) & 1u)) {
      reached |= 1u << t[0];
      frontier.push_back(t[0]);
    }
  for (std::size_t i = 0; i < frontier.size(); ++i)
    for (const Transformation& t : letters) {
      const State r = t[frontier[i]];
      if (!((reached >> r) & 1u)) {
        reached |= 1u << r;
        frontier.push_back(r);
      }
    }
  std::vector<bool> seen(static_cast<std::size_t>(n * n), false);
  std::vector<std::pair<State, State>> queue;
  for (State p : frontier) {
    seen[static_cast<std::size_t>(p * n)] = true;
    queue.emplace_back(p, 0);
  }
  StateSet out;
  for (State f = 1; f < n - 1; ++f) out.insert(f);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto [p, q] = queue[i];
    if (p == q) out.erase(p);
    for (const Transformation& t : letters) {
      const std::size_t key = static_cast<std::size_t>(t[p] * n + t[q]);
      if (!seen[key]) {
        seen[key] = true;
        queue.emplace_back(t[p], t[q]);
      }
    }
  }
  return out;
}

}  // namespace sfsyn
