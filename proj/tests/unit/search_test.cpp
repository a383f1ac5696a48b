#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "sfsyn/collision.hpp"
#include "sfsyn/dfa.hpp"
#include "sfsyn/search.hpp"

using namespace sfsyn;

namespace {

std::vector<Transformation> with_semiconstants(std::vector<Transformation> letters, int n) {
  for (const Transformation& s : semiconstant_family(n)) letters.push_back(s);
  return letters;
}

// Distinct found semigroups up to interior relabelling, as canonical element lists with sizes.
std::map<std::string, std::size_t> found_classes(const SearchResult& r) {
  std::map<std::string, std::size_t> out;
  for (const FoundSemigroup& f : r.others) {
    const TransitionSemigroup x = closure(with_semiconstants(parse_fingerprint(f.fingerprint), r.n));
    out[canonicalize({r.n, x.elements()}, Symmetry::interior).fingerprint] = x.size();
  }
  return out;
}

// Y straight from its definition, with naive closures.
std::set<oracle::Map> allowed_by_definition(const std::vector<Transformation>& gens, int n) {
  const std::set<oracle::Map> x = oracle::closure(gens);
  std::set<oracle::Map> out;
  const std::size_t pairs = static_cast<std::size_t>((n - 2) * (n - 3) / 2);
  oracle::for_each_map(n, [&](const oracle::Map& t) {
    if (!oracle::in_bsf(t) || x.count(t)) return;
    std::vector<Transformation> more = gens;
    more.push_back(oracle::to_t(t));
    const std::set<oracle::Map> grown = oracle::closure(more);
    for (const oracle::Map& e : grown)
      if (!oracle::in_bsf(e)) return;
    const auto col = oracle::colliding(grown, n);
    const auto foc = oracle::focused(grown, n);
    for (const auto& pq : col)
      if (foc.count(pq)) return;
    if (col.size() == pairs || foc.size() == pairs) return;
    bool some_final = false;
    for (State f = 1; f <= n - 2 && !some_final; ++f) {
      Dfa d;
      d.n = n;
      d.delta = more;
      for (std::size_t k = 0; k < more.size(); ++k) d.alphabet.push_back("x" + std::to_string(k));
      d.finals = StateSet{f};
      some_final = is_suffix_free(d);
    }
    if (some_final) out.insert(t);
  });
  return out;
}

ConflictGraph graph(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  ConflictGraph g;
  for (std::size_t i = 0; i < vertices; ++i) g.vertices.push_back(Transformation::constant(4, static_cast<State>(i % 4)));
  g.neighbours.resize(vertices);
  for (auto [a, b] : edges) {
    g.neighbours[a].push_back(b);
    g.neighbours[b].push_back(a);
  }
  for (auto& row : g.neighbours) std::sort(row.begin(), row.end());
  return g;
}

}  // namespace

TEST_SUITE("extremal-search") {

TEST_CASE("fingerprints") {
  const std::vector<Transformation> l = witness_letters(5);
  const std::string fp = fingerprint(l);
  CHECK(fp == "42314.42134.41214.44234.14444");
  CHECK(parse_fingerprint(fp) == l);
  CHECK(fingerprint(std::vector<Transformation>{Transformation::identity(16)}) == "0123456789abcdef");
  CHECK_THROWS_AS(parse_fingerprint("12z"), ParseError);
  CHECK_THROWS_AS(parse_fingerprint("0.01"), ParseError);
}

TEST_CASE("conjugation is a homomorphism") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng() % 7);
    std::vector<State> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    oracle::Map a(n), b(n);
    for (int q = 0; q < n; ++q) {
      a[q] = static_cast<int>(rng() % n);
      b[q] = static_cast<int>(rng() % n);
    }
    const Transformation s = oracle::to_t(a), t = oracle::to_t(b);
    CHECK(conjugate(compose(s, t), perm) == compose(conjugate(s, perm), conjugate(t, perm)));
  }
}

TEST_CASE("canonical forms are relabelling invariant") {
  const Semiautomaton id{3, {Transformation::identity(3)}};
  CHECK(canonicalize(id).form == id);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + static_cast<int>(rng() % 4);
    Semiautomaton sa{n, {}};
    for (int k = 0; k < 2; ++k) {
      oracle::Map m(n);
      for (int q = 0; q < n; ++q) m[q] = static_cast<int>(rng() % n);
      sa.letters.push_back(oracle::to_t(m));
    }
    std::vector<State> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Semiautomaton moved{n, {}};
    for (const Transformation& t : sa.letters) moved.letters.push_back(conjugate(t, perm));
    std::reverse(moved.letters.begin(), moved.letters.end());
    CHECK(canonicalize(sa).fingerprint == canonicalize(moved).fingerprint);

    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end() - 1, rng);
    Semiautomaton inner{n, {}};
    for (const Transformation& t : sa.letters) inner.letters.push_back(conjugate(t, perm));
    CHECK(canonicalize(sa, Symmetry::interior).fingerprint == canonicalize(inner, Symmetry::interior).fingerprint);
  }
}

TEST_CASE("conflicts") {
  const TransitionSemigroup w = enumerate_wsf(5);
  CHECK_FALSE(conflict(w.elements()[3], w.elements()[3]));
  const std::vector<Transformation> l = witness_letters(5);
  CHECK_FALSE(conflict(l[0], l[1]));
  // 0 -> 1 and 2 fixed collides {1,2}; the other map focuses {1,2} to 2
  const Transformation t{1, 5, 2, 5, 5, 5};
  const Transformation u{5, 2, 2, 5, 5, 5};
  REQUIRE(in_bsf(t));
  REQUIRE(in_bsf(u));
  CHECK(conflict(t, u));
  CHECK_THROWS_AS(conflict(Transformation::identity(5), l[0]), ArgumentError);
}

TEST_CASE("greedy matching") {
  CHECK(greedy_matching(graph(3, {})) == 0);
  CHECK(greedy_matching(graph(2, {{0, 1}})) == 1);
  CHECK(greedy_matching(graph(3, {{0, 1}, {1, 2}, {0, 2}})) == 1);
  CHECK(greedy_matching(graph(4, {{0, 1}, {1, 2}, {2, 3}})) == 2);
  // vertex 0 takes its least neighbour 1, leaving 2 and 3 unmatched
  CHECK(greedy_matching(graph(4, {{0, 1}, {1, 2}, {1, 3}})) == 1);
}

TEST_CASE("conflict graph over Wsf letters") {
  const std::vector<Transformation> l = witness_letters(5);
  const ConflictGraph g = conflict_graph(l);
  REQUIRE(g.vertices.size() == 5);
  CHECK(std::is_sorted(g.vertices.begin(), g.vertices.end()));
  std::size_t edges = 0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      const bool linked = std::binary_search(g.neighbours[i].begin(), g.neighbours[i].end(), j);
      CHECK(linked == (i != j && conflict(g.vertices[i], g.vertices[j])));
      edges += linked;
    }
  // a and c already focus all three interior pairs
  CHECK(edges == 2);
  const TransitionSemigroup ad = closure({l[0], l[2]});
  CHECK(oracle::focused(oracle::closure(std::vector<Transformation>{l[0], l[2]}), 5).size() == 3);
  CHECK(ad.size() == 24);
  CHECK(greedy_matching(g) == 1);
}

TEST_CASE("prune bound") {
  CHECK(prune_bound(13, 0, 0) == 13);
  CHECK(prune_bound(5, 7, 2) == 10);
  CHECK_THROWS_AS(prune_bound(5, 1, 2), ArgumentError);
  const TransitionSemigroup w = enumerate_wsf(4);
  const TransitionSemigroup wg = closure(w.elements());
  const std::vector<Transformation> y = allowed_additions(wg);
  CHECK(prune_bound(wg.size(), y.size(), greedy_matching(conflict_graph(y))) >= 11);
}

TEST_CASE("allowed additions") {
  CHECK(allowed_additions(closure(vsf_generators(5))).empty());
  const TransitionSemigroup x = closure({Transformation{1, 4, 4, 4, 4}});
  CHECK_FALSE(allowed_additions(x).empty());
}

TEST_CASE("allowed additions match the definition") {
  std::mt19937_64 rng(6);
  for (int n = 4; n <= 5; ++n) {
    const std::vector<Transformation> bsf = bsf_elements(n);
    for (int i = 0; i < 12; ++i) {
      std::vector<Transformation> gens = with_semiconstants({bsf[rng() % bsf.size()]}, n);
      const TransitionSemigroup x = closure(gens);
      bool inside = true;
      for (const Transformation& e : x.elements()) inside = inside && in_bsf(e);
      if (!inside) continue;
      std::set<oracle::Map> lib;
      for (const Transformation& t : allowed_additions(x)) lib.insert(oracle::images(t));
      CHECK(lib == allowed_by_definition(gens, n));
    }
  }
}

TEST_CASE("first level and extension") {
  const std::vector<CanonicalSemiautomaton> a1 = first_level(4);
  std::set<std::string> expected;
  const std::vector<Transformation> semis = semiconstant_family(4);
  for (const Transformation& t : bsf_elements(4)) {
    if (std::find(semis.begin(), semis.end(), t) != semis.end()) continue;
    const Transformation swapped = conjugate(t, std::vector<State>{0, 2, 1, 3});
    expected.insert(fingerprint(std::vector<Transformation>{std::min(t, swapped)}));
  }
  std::set<std::string> got;
  for (const auto& c : a1) got.insert(c.fingerprint);
  CHECK(got == expected);

  const std::vector<CanonicalSemiautomaton> a2 = extend(a1, 4);
  for (const CanonicalSemiautomaton& c : a2) {
    CHECK(c.form.letters.size() == 2);
    CHECK(is_irreducibly_generated(c.form.letters));
    CHECK_FALSE(closure({c.form.letters[0]}).contains(c.form.letters[1]));
    CHECK_FALSE(closure({c.form.letters[1]}).contains(c.form.letters[0]));
  }
  MESSAGE("level sizes for n=4: " << a1.size() << " then " << a2.size());
}

TEST_CASE("pruned search agrees with brute force on four states") {
  const std::vector<std::size_t> all = exhaustive_admissible_sizes(4);
  for (std::size_t target = 1; target <= 14; ++target) {
    CAPTURE(target);
    SearchOptions o;
    o.n = 4;
    o.target = target;
    o.require_collision = false;
    const SearchResult pruned = search_max(o);
    o.prune = false;
    const SearchResult plain = search_max(o);
    std::vector<std::size_t> expected, a, b;
    for (std::size_t s : all)
      if (s >= target) expected.push_back(s);
    for (const auto& [fp, size] : found_classes(pruned)) a.push_back(size);
    for (const auto& [fp, size] : found_classes(plain)) b.push_back(size);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == expected);
    CHECK(b == expected);
    CHECK(pruned.visited <= plain.visited);
  }
}

TEST_CASE("pruning loses nothing on five states with two letters") {
  SearchOptions base;
  base.n = 5;
  base.max_letters = 2;
  base.target = 1;
  base.prune = false;
  base.require_collision = false;
  const std::map<std::string, std::size_t> plain = found_classes(search_max(base));
  for (bool collision : {false, true})
    for (std::size_t target : {20u, 30u, 40u, 50u}) {
      CAPTURE(collision);
      CAPTURE(target);
      std::set<std::string> expected;
      for (const auto& [fp, size] : plain) {
        if (size < target) continue;
        if (collision && collision_summary(closure(parse_fingerprint(fp)).elements()).colliding.none()) continue;
        expected.insert(fp);
      }
      SearchOptions o = base;
      o.prune = true;
      o.target = target;
      o.require_collision = collision;
      std::set<std::string> got;
      for (const auto& [fp, size] : found_classes(search_max(o))) got.insert(fp);
      CHECK(got == expected);
    }
}

TEST_CASE("admitted semigroups are suffix-free consistent") {
  SearchOptions o;
  o.n = 5;
  o.target = 1;
  o.max_letters = 2;
  o.require_collision = false;
  const SearchResult r = search_max(o);
  REQUIRE_FALSE(r.others.empty());
  for (const FoundSemigroup& f : r.others) {
    const std::vector<Transformation> gens = with_semiconstants(parse_fingerprint(f.fingerprint), 5);
    const TransitionSemigroup x = closure(gens);
    CHECK(verify_suffix_free_consistency(x));
    for (const Transformation& s : semiconstant_family(5)) CHECK(x.contains(s));
    Dfa d;
    d.n = 5;
    d.delta = gens;
    for (std::size_t k = 0; k < gens.size(); ++k) d.alphabet.push_back("x" + std::to_string(k));
    const StateSet finals = suffix_free_singletons(5, gens);
    REQUIRE_FALSE(finals.empty());
    for (State fin : finals.to_vector()) {
      d.finals = StateSet{fin};
      CHECK(is_suffix_free(d));
    }
    bool realizable = false;
    for (std::uint32_t mask = 1; mask < 8; ++mask) {
      d.finals = StateSet(mask << 1);
      if (is_minimal(d) && is_suffix_free(d)) {
        realizable = true;
        CHECK(check_sink_structure(d).passed());
      }
    }
    CHECK(realizable == f.realizable);
  }
}

TEST_CASE("uniqueness on four, five and six states") {
  for (auto [n, target] : std::vector<std::pair<int, std::size_t>>{{4, 13}, {5, 73}, {6, 629}}) {
    SearchOptions o;
    o.n = n;
    o.target = target;
    const SearchResult r = search_max(o);
    CAPTURE(to_json(r, false).dump());
    CHECK(r.unique());
    CHECK(r.semiconstant_rejections == 0);
    CHECK(r.reference_size == target);
  }
}

TEST_CASE("threads do not change the result") {
  SearchOptions o;
  o.n = 5;
  o.target = 30;
  o.max_letters = 3;
  const std::string one = to_json(search_max(o), false).dump();
  o.threads = 3;
  CHECK(to_json(search_max(o), false).dump() == one);
}

TEST_CASE("checkpoints resume to the same answer") {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "sfsyn-search-test";
  std::filesystem::remove_all(dir);
  SearchOptions o;
  o.n = 4;
  o.target = 1;
  o.require_collision = false;
  const std::string fresh = to_json(search_max(o), false).dump();

  o.checkpoint_dir = dir;
  o.max_letters = 1;
  const SearchResult partial = search_max(o);
  CHECK(partial.cap_reached);
  o.max_letters = 10;
  o.resume = true;
  const SearchResult resumed = search_max(o);
  CHECK(to_json(resumed, false).dump() == fresh);
  std::filesystem::remove_all(dir);
}

TEST_CASE("search input range") {
  SearchOptions o;
  o.n = 7;
  CHECK_THROWS_AS(search_max(o), ArgumentError);
  o.n = 3;
  CHECK_THROWS_AS(search_max(o), ArgumentError);
}

}  // TEST_SUITE
