#include <doctest.h>

#include "oracles.hpp"
#include "sfsyn/dfa.hpp"
#include "sfsyn/search.hpp"

using namespace sfsyn;

namespace {

Dfa ab_star() { return parse_dfa("n=3 letters=a,b initial=0 finals=1\na: 1 2 2\nb: 2 1 2\n"); }
Dfa a_star() { return parse_dfa("n=1 letters=a initial=0 finals=0\na: 0\n"); }

bool same_language(const Dfa& x, const Dfa& y, int max_len) {
  std::vector<int> word;
  std::function<bool(int)> rec = [&](int len) {
    if (oracle::accepts(x, word) != oracle::accepts(y, word)) return false;
    if (len == max_len) return true;
    for (int a = 0; a < static_cast<int>(x.delta.size()); ++a) {
      word.push_back(a);
      const bool ok = rec(len + 1);
      word.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

}  // namespace

TEST_SUITE("dfa-core") {

TEST_CASE("witness on five states") {
  const Dfa w = witness(5);
  CHECK(to_text(w) ==
        "n=5 letters=a,b,c,d,e initial=0 finals=1\n"
        "a: 4 2 3 1 4\n"
        "b: 4 2 1 3 4\n"
        "c: 4 1 2 1 4\n"
        "d: 4 4 2 3 4\n"
        "e: 1 4 4 4 4\n");
  CHECK(witness(4).alphabet == std::vector<std::string>{"b", "c", "d", "e"});
  CHECK(transition_semigroup(w).size() == 67);
  CHECK(transition_semigroup(witness(6)).size() == 629);
  CHECK_THROWS_AS(witness(3), ArgumentError);
}

TEST_CASE("transition semigroup sizes of small DFAs") {
  CHECK(transition_semigroup(parse_dfa("n=2 letters=a initial=0 finals=0\na: 0 1\n")).size() == 1);
  CHECK(transition_semigroup(ab_star()).size() == 3);
}

TEST_CASE("witness and Vsf DFAs are minimal and suffix-free") {
  for (int n = 4; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(is_minimal(witness(n)));
    CHECK(is_suffix_free(witness(n)));
  }
  for (int n = 4; n <= 7; ++n) {
    CAPTURE(n);
    CHECK(is_minimal(vsf_dfa(n)));
    CHECK(is_suffix_free(vsf_dfa(n)));
    CHECK(transition_semigroup(vsf_dfa(n)).size() == closure(vsf_generators(n)).size());
  }
}

TEST_CASE("minimization") {
  // state 3 duplicates state 1
  const Dfa d = parse_dfa("n=4 letters=a,b initial=0 finals=1,3\na: 1 2 2 2\nb: 3 3 2 1\n");
  CHECK_FALSE(is_minimal(d));
  const Dfa m = minimize(d);
  CHECK(m.n == 3);
  CHECK(is_minimal(m));
  CHECK(minimize(m) == m);
  CHECK(same_language(d, m, 6));
}

TEST_CASE("minimality agrees with a word-based oracle") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 400; ++i) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const Dfa d = oracle::random_dfa(rng, n, 1 + static_cast<int>(rng() % 2));
    CAPTURE(to_text(d));
    CHECK(is_minimal(d) == oracle::minimal_by_words(d));
    const Dfa m = minimize(d);
    CHECK(oracle::minimal_by_words(m));
    CHECK(same_language(d, m, 2 * n));
  }
}

TEST_CASE("suffix-freeness of the standard examples") {
  CHECK(is_suffix_free(ab_star()));
  const std::optional<SuffixViolation> v = find_suffix_violation(a_star());
  REQUIRE(v.has_value());
  CHECK(a_star().spell(v->longer) == "a");
  CHECK(a_star().spell(v->suffix) == "ε");
}

TEST_CASE("suffix-freeness agrees with the word-pair oracle") {
  std::mt19937_64 rng(2024);
  int checked = 0, free_count = 0;
  for (int i = 0; i < 600; ++i) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int letters = n <= 3 ? 1 + static_cast<int>(rng() % 3) : 1 + static_cast<int>(rng() % 2);
    Dfa d = oracle::random_dfa(rng, n, letters);
    if (i % 2 == 0 && n >= 2) {
      // push half the corpus towards suffix-free shapes: nothing enters 0 and
      // n-1 is a non-final sink
      for (Transformation& t : d.delta) {
        for (int q = 0; q < n; ++q)
          if (t[q] == 0) t.set(q, n - 1);
        t.set(n - 1, n - 1);
      }
      d.finals.erase(n - 1);
    }
    CAPTURE(to_text(d));
    const bool lib = is_suffix_free(d);
    CHECK(lib == oracle::suffix_free_by_words(d, 2 * n + 2));
    if (const auto v = find_suffix_violation(d)) {
      // the reported pair is a real violation
      CHECK(d.accepts(v->longer));
      CHECK(d.accepts(v->suffix));
      CHECK(v->longer.size() > v->suffix.size());
      CHECK(std::equal(v->suffix.rbegin(), v->suffix.rend(), v->longer.rbegin()));
    }
    ++checked;
    free_count += lib;
  }
  CHECK(checked >= 500);
  CHECK(free_count >= 50);
}

TEST_CASE("single-final suffix-freeness matches the full decision") {
  std::mt19937_64 rng(77);
  const std::vector<Transformation> bsf = bsf_elements(6);
  for (int i = 0; i < 300; ++i) {
    std::vector<Transformation> letters;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 3); ++k) letters.push_back(bsf[rng() % bsf.size()]);
    const StateSet good = suffix_free_singletons(6, letters);
    for (State f = 1; f <= 4; ++f) {
      Dfa d;
      d.n = 6;
      d.delta = letters;
      for (std::size_t k = 0; k < letters.size(); ++k) d.alphabet.push_back(std::string(1, static_cast<char>('a' + k)));
      d.finals = StateSet{f};
      CHECK(good.contains(f) == is_suffix_free(d));
    }
  }
}

TEST_CASE("empty states and sink structure") {
  const Dfa w = witness(5);
  CHECK(empty_state(w) == 4);
  const SinkStructureReport r = check_sink_structure(w);
  CHECK(r.passed());
  CHECK(r.elements_checked == 67);

  const Dfa all = parse_dfa("n=1 letters=a initial=0 finals=0\na: 0\n");
  CHECK_FALSE(empty_state(all).has_value());
  CHECK_FALSE(is_suffix_free(all));
  CHECK_FALSE(check_sink_structure(all).applicable);

  // non-minimal input is minimized first
  const Dfa padded = parse_dfa("n=4 letters=a,b initial=0 finals=1\na: 1 2 2 2\nb: 3 1 2 2\n");
  const SinkStructureReport p = check_sink_structure(padded);
  CHECK(p.minimized_first);
  CHECK(p.passed());
}

TEST_CASE("sink structure holds across the sampled corpus") {
  std::mt19937_64 rng(8);
  int suffix_free = 0;
  for (int i = 0; i < 400; ++i) {
    const int n = 2 + static_cast<int>(rng() % 4);
    Dfa d = oracle::random_dfa(rng, n, 1 + static_cast<int>(rng() % 2));
    for (Transformation& t : d.delta) {
      for (int q = 0; q < n; ++q)
        if (t[q] == 0) t.set(q, n - 1);
      t.set(n - 1, n - 1);
    }
    d.finals.erase(n - 1);
    if (!is_suffix_free(d) || d.finals.empty()) continue;
    ++suffix_free;
    CAPTURE(to_text(d));
    CHECK(check_sink_structure(d).passed());
  }
  CHECK(suffix_free >= 50);
}

TEST_CASE("relabelling") {
  const Dfa w = witness(5);
  const std::vector<State> id{0, 1, 2, 3, 4};
  CHECK(relabel(w, id) == w);
  const std::vector<State> swap{0, 2, 1, 3, 4};
  const Dfa s = relabel(w, swap);
  CHECK(relabel(s, swap) == w);
  CHECK(same_language(w, s, 8));
  const std::vector<State> bad{0, 0, 1, 3, 4};
  CHECK_THROWS_AS(relabel(w, bad), ArgumentError);

  const Dfa moved = relabel(w, std::vector<State>{2, 0, 4, 1, 3});
  const Dfa back = renumber_initial_empty(moved);
  CHECK(back.initial == 0);
  CHECK(empty_state(back) == 4);
  CHECK(same_language(back, w, 7));
}

TEST_CASE("text format round trip and errors") {
  const Dfa w = witness(6);
  CHECK(parse_dfa(to_text(w)) == w);
  CHECK_THROWS_AS(parse_dfa("n=3 letters=a,b initial=0 finals=1\na: 1 2 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dfa("n=3 letters=a initial=0 finals=1\na: 1 2 2\na: 1 2 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dfa("n=3 letters=a initial=0 finals=1\na: 1 2 7\n"), ParseError);
  const std::string dot = to_dot(w);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("one-letter semiautomata on three states fall into seven classes") {
  std::set<std::string> classes;
  oracle::for_each_map(3, [&](const oracle::Map& m) {
    classes.insert(canonicalize({3, {oracle::to_t(m)}}).fingerprint);
  });
  CHECK(classes.size() == 7);
  // the same count from orbits of S3 acting by conjugation, computed directly
  std::set<std::set<oracle::Map>> orbits;
  const std::vector<std::vector<int>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  oracle::for_each_map(3, [&](const oracle::Map& m) {
    std::set<oracle::Map> orbit;
    for (const auto& p : perms) {
      oracle::Map c(3);
      for (int q = 0; q < 3; ++q) c[p[q]] = p[m[q]];
      orbit.insert(c);
    }
    orbits.insert(orbit);
  });
  CHECK(orbits.size() == 7);
}

}  // TEST_SUITE
