#include "sfsyn/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "sfsyn/collision.hpp"
#include "sfsyn/kernels.hpp"

namespace sfsyn {

std::string fingerprint(std::span<const Transformation> letters) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i > 0) out += '.';
    for (State q = 0; q < letters[i].size(); ++q) out += hex[letters[i][q]];
  }
  return out;
}

std::vector<Transformation> parse_fingerprint(std::string_view text) {
  std::vector<Transformation> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('.', start);
    if (end == std::string_view::npos) end = text.size();
    std::vector<State> images;
    for (char c : text.substr(start, end - start)) {
      if (c >= '0' && c <= '9') images.push_back(c - '0');
      else if (c >= 'a' && c <= 'f') images.push_back(c - 'a' + 10);
      else throw ParseError("bad fingerprint character '" + std::string(1, c) + "'");
    }
    try {
      out.emplace_back(images);
    } catch (const ArgumentError& e) {
      throw ParseError(std::string("bad fingerprint letter: ") + e.what());
    }
    if (!out.empty() && out.back().size() != out.front().size()) throw ParseError("fingerprint letters differ in size");
    start = end + 1;
  }
  return out;
}

Transformation conjugate(const Transformation& t, std::span<const State> perm) {
  Transformation out = Transformation::identity(t.size());
  for (State q = 0; q < t.size(); ++q) out.set(perm[q], perm[t[q]]);
  return out;
}

namespace {

std::vector<std::vector<State>> permutations(int n, Symmetry symmetry) {
  std::vector<State> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<State>> out;
  const auto first = symmetry == Symmetry::interior ? perm.begin() + 1 : perm.begin();
  const auto last = symmetry == Symmetry::interior ? perm.end() - 1 : perm.end();
  if (symmetry == Symmetry::interior && n < 2) return {perm};
  do {
    out.push_back(perm);
  } while (std::next_permutation(first, last));
  return out;
}

const std::vector<std::vector<State>>& cached_permutations(int n, Symmetry symmetry) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<std::vector<State>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, static_cast<int>(symmetry)}];
  if (slot.empty()) slot = permutations(n, symmetry);
  return slot;
}

std::vector<Transformation> canonical_letters(std::span<const Transformation> letters, Symmetry symmetry,
                                              const std::vector<State>** used = nullptr) {
  const int n = letters.front().size();
  std::vector<Transformation> best, current(letters.size());
  for (const std::vector<State>& perm : cached_permutations(n, symmetry)) {
    for (std::size_t i = 0; i < letters.size(); ++i) current[i] = conjugate(letters[i], perm);
    std::sort(current.begin(), current.end());
    if (best.empty() || current < best) {
      best = current;
      if (used) *used = &perm;
    }
  }
  return best;
}

}  // namespace

CanonicalSemiautomaton canonicalize(const Semiautomaton& sa, Symmetry symmetry) {
  if (sa.letters.empty()) throw ArgumentError("semiautomaton has no letters");
  for (const Transformation& t : sa.letters)
    if (t.size() != sa.n) throw DimensionError("letter size does not match semiautomaton");
  if (sa.n > 9) throw UnsupportedError("canonical forms are computed for n <= 9");
  CanonicalSemiautomaton c;
  c.form.n = sa.n;
  c.form.letters = canonical_letters(sa.letters, symmetry);
  c.fingerprint = fingerprint(c.form.letters);
  return c;
}

namespace {

// Shared per-n data for admission tests.
struct Universe {
  int n = 0;
  std::vector<Transformation> bsf;  // ascending
  ElementStore bsf_index;
  std::vector<bool> semiconstant;
  std::vector<Transformation> semis;
  PairSet all;
};

const Universe& universe(int n) {
  if (n < 4 || n > 7) throw UnsupportedError("search data is built for 4 <= n <= 7");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Universe>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<Universe>();
    Universe& u = *slot;
    u.n = n;
    u.bsf = bsf_elements(n);
    u.bsf_index.reserve(u.bsf.size());
    for (const Transformation& t : u.bsf) u.bsf_index.insert(t);
    u.semis = semiconstant_family(n);
    u.semiconstant.resize(u.bsf.size());
    for (std::size_t i = 0; i < u.bsf.size(); ++i)
      u.semiconstant[i] = std::find(u.semis.begin(), u.semis.end(), u.bsf[i]) != u.semis.end();
    u.all = all_pairs(n);
  }
  return *slot;
}

// Closure that gives up as soon as an element leaves Bsf(n).
bool closure_within(const Universe& u, std::span<const Transformation> gens, ElementStore& store) {
  store.clear();
  for (const Transformation& g : gens) {
    if (!u.bsf_index.contains(g)) return false;
    store.insert(g);
  }
  const kernels::KernelTable& k = kernels::active();
  std::vector<Transformation> products(gens.size());
  for (std::size_t at = 0; at < store.size(); ++at) {
    const Transformation cur = store[at];
    k.compose_left(cur, gens.data(), gens.size(), products.data());
    for (const Transformation& p : products) {
      if (!u.bsf_index.contains(p)) return false;
      store.insert(p);
    }
  }
  return true;
}

bool extreme(const Universe& u, const CollisionSummary& s) { return s.colliding == u.all || s.focused == u.all; }

bool inconsistent(const CollisionSummary& s) { return (s.colliding & s.focused).any(); }


// Grows a closed set X by one generator, aborting outside Bsf(n). New
// elements land in `added`; X itself is untouched.
bool grow_within(const Universe& u, const ElementStore& x, std::span<const Transformation> gens,
                 const Transformation& t, ElementStore& added) {
  added.clear();
  const kernels::KernelTable& k = kernels::active();
  const auto push = [&](const Transformation& v) {
    if (x.contains(v)) return true;
    if (!u.bsf_index.contains(v)) return false;
    added.insert(v);
    return true;
  };
  if (!push(t)) return false;
  std::vector<Transformation> buffer(std::max(x.size(), gens.size() + 1));
  k.compose_right(x.items().data(), x.size(), t, buffer.data());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!push(buffer[i])) return false;
  std::vector<Transformation> all_gens(gens.begin(), gens.end());
  all_gens.push_back(t);
  for (std::size_t at = 0; at < added.size(); ++at) {
    const Transformation cur = added[at];
    k.compose_left(cur, all_gens.data(), all_gens.size(), buffer.data());
    for (std::size_t g = 0; g < all_gens.size(); ++g)
      if (!push(buffer[g])) return false;
  }
  return true;
}

bool admits_final(int n, std::span<const Transformation> letters) { return !suffix_free_singletons(n, letters).empty(); }

using Bits = std::vector<std::uint64_t>;

struct Addition {
  std::uint32_t index;    // into Bsf(n)
  CollisionSummary effect;  // of X grown by this element
};

struct Engine {
  const Universe& u;
  std::vector<Bits> conflicts;  // rows over Bsf indices

  explicit Engine(const Universe& universe) : u(universe) {}

  bool conflict_at(std::size_t i, std::size_t j) const { return (conflicts[i][j >> 6] >> (j & 63)) & 1u; }

  void build_conflicts() {
    const std::size_t m = u.bsf.size();
    conflicts.assign(m, std::vector<std::uint64_t>((m + 63) / 64, 0));
    ElementStore store;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const Transformation pair[2] = {u.bsf[i], u.bsf[j]};
        bool bad = !closure_within(u, pair, store);
        if (!bad) {
          const CollisionSummary s = collision_summary(store.items());
          bad = inconsistent(s) || extreme(u, s) || !admits_final(u.n, pair);
        }
        if (bad) {
          conflicts[i][j >> 6] |= 1ull << (j & 63);
          conflicts[j][i >> 6] |= 1ull << (i & 63);
        }
      }
  }

  // Bsf indices outside the conflict rows of every element of X.
  std::vector<std::uint64_t> compatible(const ElementStore& x) const {
    const std::size_t words = (u.bsf.size() + 63) / 64;
    std::vector<std::uint64_t> bad(words, 0);
    for (const Transformation& e : x.items()) {
      const auto i = u.bsf_index.find(e);
      const auto& row = conflicts[*i];
      for (std::size_t w = 0; w < words; ++w) bad[w] |= row[w];
    }
    for (std::size_t w = 0; w < words; ++w) bad[w] = ~bad[w];
    if (u.bsf.size() % 64) bad.back() &= (1ull << (u.bsf.size() % 64)) - 1;
    return bad;
  }

  // Y, ascending by Bsf index, with the collision data of X grown by each element.
  std::vector<Addition> allowed(const ElementStore& x, std::span<const Transformation> gens, const CollisionSummary& xs,
                                const Bits* candidates = nullptr) const {
    std::vector<Addition> out;
    ElementStore added;
    std::vector<Transformation> letters(gens.begin(), gens.end());
    letters.push_back(Transformation());
    for (std::size_t i = 0; i < u.bsf.size(); ++i) {
      if (candidates && !(((*candidates)[i >> 6] >> (i & 63)) & 1u)) continue;
      const Transformation& t = u.bsf[i];
      if (x.contains(t)) continue;
      if (!grow_within(u, x, gens, t, added)) continue;
      CollisionSummary s = collision_summary(added.items());
      s.colliding |= xs.colliding;
      s.focused |= xs.focused;
      if (inconsistent(s) || extreme(u, s)) continue;
      letters.back() = t;
      if (!admits_final(u.n, letters)) continue;
      out.push_back({static_cast<std::uint32_t>(i), s});
    }
    return out;
  }

  // Greedy maximal matching on the conflict graph restricted to `y`
  // (ascending), each vertex paired with its least free conflicting neighbour.
  std::size_t matching(const std::vector<std::uint32_t>& y) const {
    const std::size_t words = (u.bsf.size() + 63) / 64;
    Bits free(words, 0);
    for (std::uint32_t v : y) free[v >> 6] |= 1ull << (v & 63);
    std::size_t m = 0;
    for (std::uint32_t v : y) {
      if (!((free[v >> 6] >> (v & 63)) & 1u)) continue;
      free[v >> 6] &= ~(1ull << (v & 63));
      const Bits& row = conflicts[v];
      for (std::size_t w = v >> 6; w < words; ++w) {
        const std::uint64_t hit = row[w] & free[w];
        if (hit) {
          free[w] &= ~(hit & -hit);
          ++m;
          break;
        }
      }
    }
    return m;
  }

  // Largest |X| + |Z| - matching(Z) over the ways a recorded semigroup can
  // still look: some pair q never collides, so Z keeps only additions leaving
  // q uncollided; with `collision` some other pair p collides and is never
  // focused, so Z also drops additions focusing p.
  long long bound(std::size_t x, const std::vector<Addition>& y, const CollisionSummary& xs, bool collision,
                  long long target) const {
    const std::size_t pairs = static_cast<std::size_t>(pair_count(u.n));
    long long best = std::numeric_limits<long long>::min();
    std::vector<std::uint32_t> z;
    for (std::size_t q = 0; q < pairs && best < target; ++q) {
      if (xs.colliding.test(q)) continue;
      for (std::size_t p = 0; p < (collision ? pairs : 1) && best < target; ++p) {
        if (collision && (p == q || xs.focused.test(p))) continue;
        z.clear();
        for (const Addition& a : y)
          if (!a.effect.colliding.test(q) && !(collision && a.effect.focused.test(p))) z.push_back(a.index);
        best = std::max(best, prune_bound(x, z.size(), matching(z)));
      }
    }
    return best;
  }
};


}  // namespace

bool conflict(const Transformation& t, const Transformation& u) {
  if (t.size() != u.size()) throw DimensionError("conflict test on different state counts");
  if (!in_bsf(t) || !in_bsf(u)) throw ArgumentError("conflict test needs Bsf elements");
  const Universe& uni = universe(t.size());
  ElementStore store;
  const Transformation pair[2] = {t, u};
  if (!closure_within(uni, pair, store)) return true;
  const CollisionSummary s = collision_summary(store.items());
  return inconsistent(s) || extreme(uni, s) || !admits_final(t.size(), pair);
}

ConflictGraph conflict_graph(std::vector<Transformation> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  ConflictGraph g;
  g.neighbours.resize(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (conflict(vertices[i], vertices[j])) {
        g.neighbours[i].push_back(j);
        g.neighbours[j].push_back(i);
      }
  g.vertices = std::move(vertices);
  return g;
}

std::size_t greedy_matching(const ConflictGraph& graph) {
  std::vector<bool> used(graph.vertices.size(), false);
  std::size_t m = 0;
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
    if (used[v]) continue;
    for (std::size_t w : graph.neighbours[v])
      if (!used[w] && w != v) {
        used[v] = used[w] = true;
        ++m;
        break;
      }
  }
  return m;
}

long long prune_bound(std::size_t x, std::size_t y, std::size_t matching) {
  if (matching > y) throw ArgumentError("matching larger than its vertex set");
  return static_cast<long long>(x) + static_cast<long long>(y) - static_cast<long long>(matching);
}

std::vector<Transformation> allowed_additions(const TransitionSemigroup& x) {
  const Universe& u = universe(x.state_count());
  if (x.generators().empty()) throw ArgumentError("allowed_additions needs the generators of X");
  ElementStore store;
  store.reserve(x.size());
  for (const Transformation& t : x.elements()) store.insert(t);
  const Engine engine(u);
  const CollisionSummary xs = collision_summary(x.elements());
  std::vector<Transformation> out;
  for (const Addition& a : engine.allowed(store, x.generators(), xs)) out.push_back(u.bsf[a.index]);
  return out;
}

std::vector<CanonicalSemiautomaton> first_level(int n) {
  const Universe& u = universe(n);
  std::set<CanonicalSemiautomaton> out;
  for (std::size_t i = 0; i < u.bsf.size(); ++i)
    if (!u.semiconstant[i]) out.insert(canonicalize({n, {u.bsf[i]}}, Symmetry::interior));
  return {out.begin(), out.end()};
}

std::vector<CanonicalSemiautomaton> extend(const std::vector<CanonicalSemiautomaton>& level, int n) {
  const Universe& u = universe(n);
  std::set<CanonicalSemiautomaton> out;
  ElementStore store;
  for (const CanonicalSemiautomaton& sa : level) {
    const TransitionSemigroup base = closure(sa.form.letters);
    for (std::size_t i = 0; i < u.bsf.size(); ++i) {
      if (u.semiconstant[i] || base.contains(u.bsf[i])) continue;
      std::vector<Transformation> letters = sa.form.letters;
      letters.push_back(u.bsf[i]);
      if (!closure_within(u, letters, store) || !is_irreducibly_generated(letters)) continue;
      out.insert(canonicalize({n, letters}, Symmetry::interior));
    }
  }
  return {out.begin(), out.end()};
}

namespace {

enum class NodeStatus { reducible, rejected, extreme, pruned, expanded, leaf };

struct Node {
  std::vector<Transformation> letters;  // canonical
  Bits candidates;                      // superset of Y over Bsf indices; empty when unknown
};

struct NodeOutcome {
  NodeStatus status = NodeStatus::rejected;
  std::size_t size = 0;
  bool semiconstant_rejection = false;
  bool found = false;
  std::vector<Node> children;
};

struct Search {
  const SearchOptions& opt;
  const Universe& u;
  Engine engine;

  bool collision;

  Search(const SearchOptions& o, const Universe& uni)
      : opt(o), u(uni), engine(uni), collision(o.require_collision.value_or(o.target >= wsf_bound(uni.n))) {}

  std::vector<Transformation> with_semis(std::span<const Transformation> letters) const {
    std::vector<Transformation> gens(letters.begin(), letters.end());
    gens.insert(gens.end(), u.semis.begin(), u.semis.end());
    return gens;
  }

  bool relatively_irreducible(const std::vector<Transformation>& letters) const {
    if (letters.size() < 2) return true;
    ElementStore store;
    for (std::size_t h = 0; h < letters.size(); ++h) {
      std::vector<Transformation> rest;
      for (std::size_t j = 0; j < letters.size(); ++j)
        if (j != h) rest.push_back(letters[j]);
      const std::vector<Transformation> gens = with_semis(rest);
      if (!closure_within(u, gens, store)) continue;
      if (store.contains(letters[h])) return false;
    }
    return true;
  }

  NodeOutcome evaluate(const Node& node) const {
    NodeOutcome out;
    const std::vector<Transformation>& letters = node.letters;
    if (!relatively_irreducible(letters)) {
      out.status = NodeStatus::reducible;
      return out;
    }
    const std::vector<Transformation> gens = with_semis(letters);
    ElementStore x;
    if (!closure_within(u, gens, x)) {
      ElementStore bare;
      out.semiconstant_rejection = closure_within(u, letters, bare);
      out.status = NodeStatus::rejected;
      return out;
    }
    out.size = x.size();
    const CollisionSummary xs = collision_summary(x.items());
    if (inconsistent(xs) || !admits_final(u.n, gens)) {
      out.status = NodeStatus::rejected;
      return out;
    }
    if (extreme(u, xs)) {
      out.status = NodeStatus::extreme;
      return out;
    }
    out.found = x.size() >= opt.target && (!collision || xs.colliding.any());
    Bits candidates = engine.compatible(x);
    if (!node.candidates.empty())
      for (std::size_t w = 0; w < candidates.size(); ++w) candidates[w] &= node.candidates[w];
    const std::vector<Addition> y = engine.allowed(x, gens, xs, &candidates);
    if (opt.prune && engine.bound(x.size(), y, xs, collision, static_cast<long long>(opt.target)) <
                         static_cast<long long>(opt.target)) {
      out.status = NodeStatus::pruned;
      return out;
    }
    for (const Addition& a : y) {
      if (u.semiconstant[a.index]) continue;
      std::vector<Transformation> child = letters;
      child.push_back(u.bsf[a.index]);
      const std::vector<State>* perm = nullptr;
      Node c;
      c.letters = canonical_letters(child, Symmetry::interior, &perm);
      c.candidates.assign(candidates.size(), 0);
      for (const Addition& b : y) {
        const auto k = *u.bsf_index.find(conjugate(u.bsf[b.index], *perm));
        c.candidates[k >> 6] |= 1ull << (k & 63);
      }
      out.children.push_back(std::move(c));
    }
    out.status = out.children.empty() ? NodeStatus::leaf : NodeStatus::expanded;
    return out;
  }

  // Children are merged into `next` as they appear; a child reached from
  // several parents keeps the intersection of their candidate sets.
  std::vector<NodeOutcome> evaluate_all(const std::vector<Node>& nodes,
                                        std::map<std::vector<Transformation>, Bits>& next_level) const {
    std::vector<NodeOutcome> results(nodes.size());
    std::atomic<std::size_t> next{0};
    std::mutex merge;
    const auto work = [&] {
      for (std::size_t i = next++; i < nodes.size(); i = next++) {
        results[i] = evaluate(nodes[i]);
        std::lock_guard lock(merge);
        for (Node& c : results[i].children) {
          auto [it, fresh] = next_level.try_emplace(std::move(c.letters), std::move(c.candidates));
          if (!fresh)
            for (std::size_t w = 0; w < it->second.size(); ++w) it->second[w] &= c.candidates[w];
        }
        results[i].children.clear();
        results[i].children.shrink_to_fit();
      }
    };
    const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(nodes.size())));
    if (threads == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < threads; ++i) pool.emplace_back(work);
      for (std::thread& t : pool) t.join();
    }
    return results;
  }
};

bool realizable(int n, const std::vector<Transformation>& gens) {
  Dfa d;
  d.n = n;
  d.delta = gens;
  for (std::size_t i = 0; i < gens.size(); ++i) d.alphabet.push_back("x" + std::to_string(i));
  for (std::uint32_t mask = 1; mask < (1u << (n - 2)); ++mask) {
    d.finals = StateSet(mask << 1);
    if (is_minimal(d) && is_suffix_free(d)) return true;
  }
  return false;
}

std::filesystem::path checkpoint_path(const SearchOptions& o) {
  return *o.checkpoint_dir / ("search-n" + std::to_string(o.n) + "-t" + std::to_string(o.target) + ".ckpt");
}

// Format: a header line, one "stats" line per finished level, "found" lines,
// then the fingerprints of the next level, one per line.
void write_checkpoint(const SearchOptions& o, int next_letters, const SearchResult& r,
                      const std::vector<Node>& nodes) {
  std::filesystem::create_directories(*o.checkpoint_dir);
  const std::filesystem::path path = checkpoint_path(o);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << "level " << next_letters << " n=" << o.n << " target=" << o.target << " count=" << nodes.size()
        << " visited=" << r.visited << " semiconstant_rejections=" << r.semiconstant_rejections
        << " largest_other=" << r.largest_other << "\n";
    for (const LevelStats& s : r.levels)
      out << "stats " << s.letters << ' ' << s.nodes << ' ' << s.pruned << ' ' << s.rejected << ' ' << s.extremes << ' '
          << s.reducible << ' ' << s.children << "\n";
    for (const FoundSemigroup& f : r.others) out << "found " << f.fingerprint << ' ' << f.size << ' ' << f.realizable << "\n";
    for (const Node& node : nodes) out << fingerprint(node.letters) << "\n";
    if (!out) throw Error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

int read_checkpoint(const SearchOptions& o, SearchResult& r, std::vector<Node>& nodes) {
  std::ifstream in(checkpoint_path(o));
  if (!in) return 0;
  std::string header;
  std::getline(in, header);
  int letters = 0, n = 0;
  std::size_t target = 0, count = 0;
  if (std::sscanf(header.c_str(), "level %d n=%d target=%zu count=%zu visited=%zu semiconstant_rejections=%zu largest_other=%zu",
                  &letters, &n, &target, &count, &r.visited, &r.semiconstant_rejections, &r.largest_other) != 7)
    throw ParseError("bad checkpoint header: " + header);
  if (n != o.n || target != o.target) throw ParseError("checkpoint belongs to a different search");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "stats") {
      LevelStats s;
      ls >> s.letters >> s.nodes >> s.pruned >> s.rejected >> s.extremes >> s.reducible >> s.children;
      r.levels.push_back(s);
    } else if (word == "found") {
      FoundSemigroup f;
      ls >> f.fingerprint >> f.size >> f.realizable;
      r.others.push_back(f);
    } else {
      nodes.push_back({parse_fingerprint(word), {}});
    }
  }
  if (nodes.size() != count) throw ParseError("checkpoint is truncated");
  return letters;
}

}  // namespace

SearchResult search_max(const SearchOptions& o) {
  if (o.n < 4 || o.n > 6) throw ArgumentError("search supports 4 <= n <= 6");
  if (o.max_letters < 1) throw ArgumentError("letter cap must be positive");
  const auto start = std::chrono::steady_clock::now();
  const auto log = [&](const std::string& s) {
    if (o.log) o.log(s);
  };

  SearchResult r;
  r.n = o.n;
  r.target = o.target;
  const TransitionSemigroup reference = o.n <= 5 ? closure(vsf_generators(o.n)) : enumerate_wsf(o.n);
  r.reference = o.n <= 5 ? "Vsf" : "Wsf";
  r.reference_size = reference.size();

  const Universe& u = universe(o.n);
  Search search(o, u);
  r.collision_required = search.collision;
  log("building conflict table over " + std::to_string(u.bsf.size()) + " Bsf elements");
  search.engine.build_conflicts();

  std::vector<Node> nodes;
  int letters = 0;
  if (o.resume && o.checkpoint_dir) letters = read_checkpoint(o, r, nodes);
  if (letters == 0) {
    letters = 1;
    nodes.clear();
    for (const CanonicalSemiautomaton& c : first_level(o.n)) nodes.push_back({c.form.letters, {}});
  } else {
    log("resuming at " + std::to_string(letters) + " letters with " + std::to_string(nodes.size()) + " nodes");
  }

  while (!nodes.empty()) {
    if (letters > o.max_letters) {
      r.cap_reached = true;
      log("warning: letter cap " + std::to_string(o.max_letters) + " reached with " + std::to_string(nodes.size()) +
          " open nodes");
      break;
    }
    LevelStats stats;
    stats.letters = letters;
    stats.nodes = nodes.size();
    std::map<std::vector<Transformation>, Bits> next;
    const std::vector<NodeOutcome> results = search.evaluate_all(nodes, next);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const NodeOutcome& res = results[i];
      ++r.visited;
      if (res.semiconstant_rejection) ++r.semiconstant_rejections;
      switch (res.status) {
        case NodeStatus::reducible:
          ++stats.reducible;
          break;
        case NodeStatus::rejected:
          ++stats.rejected;
          break;
        case NodeStatus::extreme:
          ++stats.extremes;
          break;
        case NodeStatus::pruned:
          ++stats.pruned;
          break;
        case NodeStatus::expanded:
        case NodeStatus::leaf:
          break;
      }
      if (res.status == NodeStatus::pruned || res.status == NodeStatus::expanded || res.status == NodeStatus::leaf)
        r.largest_other = std::max(r.largest_other, res.size);
      if (res.found) {
        FoundSemigroup f;
        f.fingerprint = fingerprint(nodes[i].letters);
        f.size = res.size;
        f.realizable = realizable(o.n, search.with_semis(nodes[i].letters));
        r.others.push_back(f);
      }
    }
    stats.children = next.size();
    r.levels.push_back(stats);
    log("letters=" + std::to_string(letters) + " nodes=" + std::to_string(stats.nodes) + " pruned=" +
        std::to_string(stats.pruned) + " rejected=" + std::to_string(stats.rejected) + " extremes=" +
        std::to_string(stats.extremes) + " reducible=" + std::to_string(stats.reducible) + " next=" +
        std::to_string(stats.children));
    nodes.clear();
    for (auto& [letters_of, candidates] : next) nodes.push_back({letters_of, std::move(candidates)});
    ++letters;
    if (o.checkpoint_dir) write_checkpoint(o, letters, r, nodes);
  }
  r.exhausted = nodes.empty();
  std::sort(r.others.begin(), r.others.end(),
            [](const FoundSemigroup& a, const FoundSemigroup& b) { return a.fingerprint < b.fingerprint; });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json to_json(const SearchResult& r, bool with_timing) {
  nlohmann::json levels = nlohmann::json::array();
  for (const LevelStats& s : r.levels)
    levels.push_back({{"letters", s.letters},
                      {"nodes", s.nodes},
                      {"pruned", s.pruned},
                      {"rejected", s.rejected},
                      {"extremes", s.extremes},
                      {"reducible", s.reducible},
                      {"children", s.children}});
  nlohmann::json others = nlohmann::json::array();
  for (const FoundSemigroup& f : r.others)
    others.push_back({{"letters", f.fingerprint}, {"size", f.size}, {"realizable", f.realizable}});
  nlohmann::json j = {{"n", r.n},
                      {"target", r.target},
                      {"maximal", {{"name", r.reference + "(" + std::to_string(r.n) + ")"}, {"size", r.reference_size}}},
                      {"others_reaching_target", std::move(others)},
                      {"largest_other_admitted", r.largest_other},
                      {"unique", r.unique()},
                      {"collision_required", r.collision_required},
                      {"exhausted", r.exhausted},
                      {"letter_cap_reached", r.cap_reached},
                      {"visited", r.visited},
                      {"semiconstant_rejections", r.semiconstant_rejections},
                      {"levels", std::move(levels)}};
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

std::vector<std::size_t> exhaustive_admissible_sizes(int n, bool require_collision) {
  const Universe& u = universe(n);
  std::vector<Transformation> pool;
  for (std::size_t i = 0; i < u.bsf.size(); ++i)
    if (!u.semiconstant[i]) pool.push_back(u.bsf[i]);
  if (pool.size() > 20) throw UnsupportedError("exhaustive enumeration is limited to tiny n");
  std::set<std::vector<Transformation>> seen;
  std::vector<std::size_t> sizes;
  ElementStore store;
  for (std::uint32_t mask = 1; mask < (1u << pool.size()); ++mask) {
    std::vector<Transformation> gens = u.semis;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if ((mask >> i) & 1u) gens.push_back(pool[i]);
    if (!closure_within(u, gens, store)) continue;
    if (!admits_final(n, gens)) continue;
    const CollisionSummary s = collision_summary(store.items());
    if (inconsistent(s) || extreme(u, s)) continue;
    if (require_collision && s.colliding.none()) continue;
    std::vector<Transformation> elements = canonical_letters(store.items(), Symmetry::interior);
    if (seen.insert(elements).second) sizes.push_back(elements.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace sfsyn
