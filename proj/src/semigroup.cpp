#include "sfsyn/semigroup.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "sfsyn/kernels.hpp"

namespace sfsyn {

TransitionSemigroup TransitionSemigroup::from_elements(int n, std::vector<Transformation> elements,
                                                       std::vector<Transformation> generators) {
  TransitionSemigroup s;
  s.n_ = n;
  s.store_.reserve(elements.size());
  for (const Transformation& t : elements) {
    if (t.size() != n) throw DimensionError("element size does not match semigroup");
    s.store_.insert(t);
  }
  s.generators_ = std::move(generators);
  return s;
}

std::vector<std::size_t> TransitionSemigroup::word(std::size_t i) const {
  if (!has_words()) throw PreconditionError("semigroup was built without witness words");
  std::vector<std::size_t> out;
  for (std::int32_t at = static_cast<std::int32_t>(i); at >= 0; at = parent_[static_cast<std::size_t>(at)])
    out.push_back(last_generator_[static_cast<std::size_t>(at)]);
  std::reverse(out.begin(), out.end());
  return out;
}

TransitionSemigroup closure(std::span<const Transformation> generators) {
  if (generators.empty()) throw ArgumentError("closure needs at least one generator");
  const int n = generators.front().size();
  for (const Transformation& g : generators)
    if (g.size() != n) throw DimensionError("generators act on different state counts");
  if (generators.size() > 0xffff) throw ArgumentError("too many generators");

  TransitionSemigroup s;
  s.n_ = n;
  s.generators_.assign(generators.begin(), generators.end());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (s.store_.insert(generators[i]).second) {
      s.parent_.push_back(-1);
      s.last_generator_.push_back(static_cast<std::uint16_t>(i));
    }
  }

  const kernels::KernelTable& k = kernels::active();
  std::vector<Transformation> products(generators.size());
  for (std::size_t at = 0; at < s.store_.size(); ++at) {
    const Transformation current = s.store_[at];
    k.compose_left(current, generators.data(), generators.size(), products.data());
    for (std::size_t g = 0; g < products.size(); ++g) {
      if (s.store_.insert(products[g]).second) {
        s.parent_.push_back(static_cast<std::int32_t>(at));
        s.last_generator_.push_back(static_cast<std::uint16_t>(g));
      }
    }
  }
  return s;
}

namespace {

void require_at_least(const Transformation& t, int minimum, const char* what) {
  if (t.size() < minimum)
    throw ArgumentError(std::string(what) + " needs at least " + std::to_string(minimum) + " states");
}

}  // namespace

bool in_bsf(const Transformation& t) {
  require_at_least(t, 2, "Bsf membership");
  const int n = t.size();
  const State sink = n - 1;
  if (t[sink] != sink) return false;
  for (State q = 0; q < n; ++q)
    if (t[q] == 0) return false;
  // The 0-path and every other path settle within n steps, so j <= n suffices.
  std::array<State, kMaxStates> at{};
  for (State q = 0; q < n; ++q) at[q] = q;
  for (int j = 1; j <= n; ++j) {
    for (State q = 0; q < n; ++q) at[q] = t[at[q]];
    const State zero_image = at[0];
    if (zero_image == sink) return true;  // stays at the sink from here on
    for (State q = 1; q < sink; ++q)
      if (at[q] == zero_image) return false;
  }
  return true;
}

bool in_vsf(const Transformation& t) {
  require_at_least(t, 4, "Vsf membership");
  if (!in_bsf(t)) return false;
  const State sink = t.size() - 1;
  for (State p = 0; p < t.size(); ++p)
    for (State q = p + 1; q < t.size(); ++q)
      if (t[p] == t[q] && t[p] != sink) return false;
  return true;
}

bool in_wsf(const Transformation& t) {
  require_at_least(t, 4, "Wsf membership");
  if (!in_bsf(t)) return false;
  const State sink = t.size() - 1;
  if (t[0] == sink) return true;
  for (State q = 1; q < sink; ++q)
    if (t[q] != sink) return false;
  return true;
}

std::vector<Transformation> vsf_generators(int n) {
  if (n < 4) throw ArgumentError("Vsf generators need n >= 4");
  const State sink = n - 1;
  std::vector<Transformation> out;
  auto add = [&](const Transformation& t) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  };
  Transformation a = Transformation::identity(n);
  a.set(0, sink);
  for (State q = 1; q < sink; ++q) a.set(q, q + 1 < sink ? q + 1 : 1);
  add(a);
  Transformation b = Transformation::identity(n);
  b.set(0, sink);
  b.set(1, 2);
  b.set(2, 1);
  add(b);
  for (State p = 1; p < sink; ++p) {
    Transformation c = Transformation::identity(n);
    c.set(p, sink);
    c.set(0, p);
    add(c);
  }
  return out;
}

unsigned __int128 wsf_bound(int n) {
  if (n < 2) throw ArgumentError("Wsf bound needs n >= 2");
  unsigned __int128 value = 1;
  for (int i = 0; i < n - 2; ++i)
    if (__builtin_mul_overflow(value, static_cast<unsigned __int128>(n - 1), &value))
      throw ArithmeticError("(n-1)^(n-2) overflows 128 bits for n = " + std::to_string(n));
  if (__builtin_add_overflow(value, static_cast<unsigned __int128>(n - 2), &value))
    throw ArithmeticError("Wsf bound overflows 128 bits for n = " + std::to_string(n));
  return value;
}

std::string to_string_u128(unsigned __int128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Transformation> witness_letters(int n) {
  if (n < 4) throw ArgumentError("witness needs n >= 4");
  const State sink = n - 1;
  std::vector<Transformation> out;
  if (n > 4) {
    Transformation a = Transformation::identity(n);
    a.set(0, sink);
    for (State q = 1; q < sink; ++q) a.set(q, q + 1 < sink ? q + 1 : 1);
    out.push_back(a);
  }
  Transformation b = Transformation::identity(n);
  b.set(0, sink);
  b.set(1, 2);
  b.set(2, 1);
  out.push_back(b);
  Transformation c = Transformation::identity(n);
  c.set(0, sink);
  c.set(sink - 1, 1);
  out.push_back(c);
  out.push_back(Transformation::semiconstant(n, StateSet{0, 1}, sink));
  Transformation e = Transformation::constant(n, sink);
  e.set(0, 1);
  out.push_back(e);
  return out;
}

TransitionSemigroup enumerate_wsf(int n) {
  if (n < 4) throw ArgumentError("Wsf needs n >= 4");
  const State sink = n - 1;
  std::vector<Transformation> elements;
  elements.reserve(static_cast<std::size_t>(wsf_bound(n)));

  // Interior states range over 1..n-1; the odometer runs with state n-2 fastest.
  Transformation t = Transformation::identity(n);
  t.set(0, sink);
  for (State q = 1; q < sink; ++q) t.set(q, 1);
  for (;;) {
    elements.push_back(t);
    State q = sink - 1;
    while (q >= 1 && t[q] == sink) {
      t.set(q, 1);
      --q;
    }
    if (q < 1) break;
    t.set(q, t[q] + 1);
  }
  for (State p = 1; p < sink; ++p) {
    Transformation u = Transformation::constant(n, sink);
    u.set(0, p);
    elements.push_back(u);
  }
  return TransitionSemigroup::from_elements(n, std::move(elements), witness_letters(n));
}

std::vector<Transformation> semiconstant_family(int n) {
  if (n < 3) throw ArgumentError("semiconstant family needs n >= 3");
  const State sink = n - 1;
  std::vector<Transformation> out;
  const std::uint32_t interior_subsets = 1u << (n - 2);
  for (std::uint32_t subset = 0; subset < interior_subsets; ++subset) {
    StateSet sources{0};
    for (State q = 1; q < sink; ++q)
      if ((subset >> (q - 1)) & 1u) sources.insert(q);
    out.push_back(Transformation::semiconstant(n, sources, sink));
  }
  return out;
}

bool is_irreducibly_generated(std::span<const Transformation> generators) {
  if (generators.empty()) throw ArgumentError("empty generator list");
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (generators[i] == generators[j]) return false;
  std::vector<Transformation> others;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators.size() == 1) break;
    others.clear();
    for (std::size_t j = 0; j < generators.size(); ++j)
      if (j != i) others.push_back(generators[j]);
    // Dropping g keeps the semigroup iff g is already generated by the rest.
    if (closure(others).contains(generators[i])) return false;
  }
  return true;
}

std::vector<Transformation> all_transformations(int n) {
  if (n < 1 || n > 7) throw ArgumentError("all_transformations supports 1 <= n <= 7");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(n);
  std::vector<Transformation> out;
  out.reserve(total);
  Transformation t = Transformation::constant(n, 0);
  for (;;) {
    out.push_back(t);
    State q = n - 1;
    while (q >= 0 && t[q] == n - 1) {
      t.set(q, 0);
      --q;
    }
    if (q < 0) break;
    t.set(q, t[q] + 1);
  }
  return out;
}

std::vector<Transformation> bsf_elements(int n) {
  std::vector<Transformation> out;
  for (const Transformation& t : all_transformations(n))
    if (in_bsf(t)) out.push_back(t);
  return out;
}

std::string to_text(const TransitionSemigroup& semigroup) {
  std::string out = "n=" + std::to_string(semigroup.state_count()) + " size=" + std::to_string(semigroup.size()) + "\n";
  for (const Transformation& t : semigroup.elements()) {
    out += to_string(t);
    out += '\n';
  }
  return out;
}

TransitionSemigroup parse_semigroup_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header)) throw ParseError("missing semigroup header");
  int n = 0;
  std::size_t size = 0;
  if (std::sscanf(header.c_str(), "n=%d size=%zu", &n, &size) != 2) throw ParseError("bad semigroup header: " + header);
  std::vector<Transformation> elements;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    elements.push_back(parse_transformation(line));
    if (elements.back().size() != n) throw ParseError("element size does not match header");
  }
  if (elements.size() != size) throw ParseError("header size does not match element count");
  std::vector<Transformation> gens = elements;
  return TransitionSemigroup::from_elements(n, std::move(elements), std::move(gens));
}

}  // namespace sfsyn
