#pragma once

// Deliberately naive reimplementations used as test oracles. They work on
// plain vectors and share no code with the library.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "sfsyn/dfa.hpp"

namespace oracle {

using Map = std::vector<int>;

inline Map images(const sfsyn::Transformation& t) {
  Map m;
  for (int q = 0; q < t.size(); ++q) m.push_back(t[q]);
  return m;
}

inline sfsyn::Transformation to_t(const Map& m) { return sfsyn::Transformation(std::span<const int>(m)); }

// q(s o t) = (qs)t, one state at a time.
inline Map compose(const Map& s, const Map& t) {
  Map out(s.size());
  for (std::size_t q = 0; q < s.size(); ++q) out[q] = t[s[q]];
  return out;
}

inline std::set<Map> closure(const std::vector<Map>& gens) {
  std::set<Map> seen(gens.begin(), gens.end());
  std::vector<Map> todo(gens.begin(), gens.end());
  while (!todo.empty()) {
    Map cur = todo.back();
    todo.pop_back();
    for (const Map& g : gens) {
      Map next = compose(cur, g);
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return seen;
}

inline std::set<Map> closure(const std::vector<sfsyn::Transformation>& gens) {
  std::vector<Map> g;
  for (const auto& t : gens) g.push_back(images(t));
  return closure(g);
}

inline Map power(const Map& t, int k) {
  Map out(t.size());
  for (std::size_t q = 0; q < t.size(); ++q) {
    int x = static_cast<int>(q);
    for (int i = 0; i < k; ++i) x = t[x];
    out[q] = x;
  }
  return out;
}

// Membership straight from the definition of Bsf(n).
inline bool in_bsf(const Map& t) {
  const int n = static_cast<int>(t.size());
  for (int q = 0; q < n; ++q)
    if (t[q] == 0) return false;
  if (t[n - 1] != n - 1) return false;
  for (int j = 1; j <= n; ++j) {
    const Map tj = power(t, j);
    if (tj[0] == n - 1) continue;
    for (int q = 1; q <= n - 2; ++q)
      if (tj[q] == tj[0]) return false;
  }
  return true;
}

inline bool in_wsf(const Map& t) {
  const int n = static_cast<int>(t.size());
  if (t[0] == n - 1 && t[n - 1] == n - 1) {
    for (int q = 1; q < n - 1; ++q)
      if (t[q] == 0) return false;
    return true;
  }
  if (t[0] == 0 || t[0] == n - 1 || t[n - 1] != n - 1) return false;
  for (int q = 1; q < n; ++q)
    if (t[q] != n - 1) return false;
  return true;
}

template <class F>
void for_each_map(int n, F&& f) {
  Map m(n, 0);
  while (true) {
    f(m);
    int i = n - 1;
    while (i >= 0 && m[i] == n - 1) m[i--] = 0;
    if (i < 0) return;
    ++m[i];
  }
}

inline bool accepts(const sfsyn::Dfa& d, const std::vector<int>& word) {
  int q = d.initial;
  for (int a : word) q = d.delta[a][q];
  return d.finals.contains(q);
}

// Every accepted word up to max_len, tested against all of its proper
// suffixes (including the empty word).
inline bool suffix_free_by_words(const sfsyn::Dfa& d, int max_len) {
  const int k = static_cast<int>(d.delta.size());
  std::vector<int> word;
  std::function<bool(int)> rec = [&](int len) {
    if (accepts(d, word)) {
      for (std::size_t cut = 1; cut <= word.size(); ++cut) {
        std::vector<int> suffix(word.begin() + cut, word.end());
        if (accepts(d, suffix)) return false;
      }
    }
    if (len == max_len) return true;
    for (int a = 0; a < k; ++a) {
      word.push_back(a);
      const bool ok = rec(len + 1);
      word.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

// Two states are equivalent when no word of length < n separates them.
inline bool minimal_by_words(const sfsyn::Dfa& d) {
  const int n = d.n;
  const int k = static_cast<int>(d.delta.size());
  std::vector<bool> reached(n, false);
  std::vector<int> todo{d.initial};
  reached[d.initial] = true;
  while (!todo.empty()) {
    int q = todo.back();
    todo.pop_back();
    for (int a = 0; a < k; ++a)
      if (!reached[d.delta[a][q]]) {
        reached[d.delta[a][q]] = true;
        todo.push_back(d.delta[a][q]);
      }
  }
  for (bool r : reached)
    if (!r) return false;
  std::vector<std::vector<unsigned>> sig(n);
  std::vector<int> word;
  std::function<void(int)> rec = [&](int len) {
    for (int q = 0; q < n; ++q) {
      int x = q;
      for (int a : word) x = d.delta[a][x];
      sig[q].push_back(d.finals.contains(x));
    }
    if (len == n) return;
    for (int a = 0; a < k; ++a) {
      word.push_back(a);
      rec(len + 1);
      word.pop_back();
    }
  };
  rec(0);
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (sig[p] == sig[q]) return false;
  return true;
}

inline sfsyn::Dfa random_dfa(std::mt19937_64& rng, int n, int letters) {
  sfsyn::Dfa d;
  d.n = n;
  for (int a = 0; a < letters; ++a) {
    Map m(n);
    for (int q = 0; q < n; ++q) m[q] = static_cast<int>(rng() % n);
    d.delta.push_back(to_t(m));
    d.alphabet.push_back(std::string(1, static_cast<char>('a' + a)));
  }
  d.finals = sfsyn::StateSet(static_cast<std::uint32_t>(rng() % (1u << n)));
  return d;
}

// Colliding pairs read off the definition: some element sends 0 to p and an
// interior r to an interior q != p.
inline std::set<std::pair<int, int>> colliding(const std::set<Map>& elements, int n) {
  std::set<std::pair<int, int>> out;
  for (const Map& t : elements) {
    const int p = t[0];
    if (p == 0 || p == n - 1) continue;
    for (int r = 1; r <= n - 2; ++r) {
      const int q = t[r];
      if (q != 0 && q != n - 1 && q != p) out.insert({std::min(p, q), std::max(p, q)});
    }
  }
  return out;
}

inline std::set<std::pair<int, int>> focused(const std::set<Map>& elements, int n) {
  std::set<std::pair<int, int>> out;
  for (const Map& t : elements)
    for (int p = 1; p <= n - 2; ++p)
      for (int q = p + 1; q <= n - 2; ++q)
        if (t[p] == t[q] && t[p] != 0 && t[p] != n - 1) out.insert({p, q});
  return out;
}

}  // namespace oracle
