#include "sfsyn/transformation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "sfsyn/kernels.hpp"

namespace sfsyn {

Transformation::Transformation(std::span<const State> images) {
  if (images.empty() || images.size() > static_cast<std::size_t>(kMaxStates))
    throw ArgumentError("transformation needs between 1 and 16 states, got " + std::to_string(images.size()));
  n_ = static_cast<std::uint8_t>(images.size());
  for (std::size_t q = 0; q < images.size(); ++q) {
    if (images[q] < 0 || images[q] >= n_)
      throw ArgumentError("image " + std::to_string(images[q]) + " of state " + std::to_string(q) +
                          " is outside 0.." + std::to_string(n_ - 1));
    images_[q] = static_cast<std::uint8_t>(images[q]);
  }
  clear_tail(n_);
}

Transformation Transformation::identity(int n) {
  if (n < 1 || n > kMaxStates) throw ArgumentError("state count out of range: " + std::to_string(n));
  return with_size_unchecked(n);
}

Transformation Transformation::constant(int n, State q) {
  Transformation t = identity(n);
  if (q < 0 || q >= n) throw ArgumentError("constant target out of range");
  for (State p = 0; p < n; ++p) t.set(p, q);
  return t;
}

Transformation Transformation::semiconstant(int n, StateSet sources, State q) {
  Transformation t = identity(n);
  if (q < 0 || q >= n) throw ArgumentError("semiconstant target out of range");
  for (State p : sources.to_vector()) {
    if (p >= n) throw ArgumentError("semiconstant source out of range");
    t.set(p, q);
  }
  return t;
}

std::strong_ordering Transformation::operator<=>(const Transformation& other) const {
  if (n_ != other.n_) return n_ <=> other.n_;
  const int c = std::memcmp(images_.data(), other.images_.data(), kMaxStates);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Transformation compose(const Transformation& s, const Transformation& t) {
  if (s.size() != t.size())
    throw DimensionError("cannot compose transformations on " + std::to_string(s.size()) + " and " +
                         std::to_string(t.size()) + " states");
  Transformation r;
  kernels::active().compose_right(&s, 1, t, &r);
  return r;
}

Transformation power(const Transformation& t, int k) {
  Transformation r = Transformation::identity(t.size());
  Transformation base = t;
  while (k > 0) {
    if (k & 1) r = compose(r, base);
    base = compose(base, base);
    k >>= 1;
  }
  return r;
}

OrbitPartition orbits(const Transformation& t) {
  const int n = t.size();
  // Union-find over q ~ qt yields the orbits.
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (State q = 0; q < n; ++q) {
    const int a = find(q), b = find(t[q]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  OrbitPartition out;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (State q = 0; q < n; ++q) {
    const int root = find(q);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.classes.size());
      out.classes.emplace_back();
    }
    out.classes[slot[root]].states.push_back(q);
  }
  const StateSet cyclic = cyclic_states(t);
  for (Orbit& orbit : out.classes) {
    State start = -1;
    for (State q : orbit.states)
      if (cyclic.contains(q) || t[q] == q) {
        start = q;
        break;
      }
    State q = start;
    do {
      orbit.cycle.push_back(q);
      q = t[q];
    } while (q != start);
  }
  return out;
}

StateSet cyclic_states(const Transformation& t) {
  // States on cycles, fixed points included, are exactly the image of t^n.
  const int n = t.size();
  const Transformation tn = power(t, n);
  StateSet recurrent;
  for (State q = 0; q < n; ++q) recurrent.insert(tn[q]);
  return recurrent;
}

std::vector<std::vector<State>> cycles(const Transformation& t) {
  std::vector<std::vector<State>> out;
  StateSet seen;
  const StateSet recurrent = cyclic_states(t);
  for (State q : recurrent.to_vector()) {
    if (seen.contains(q) || t[q] == q) continue;
    std::vector<State> cycle;
    State r = q;
    do {
      cycle.push_back(r);
      seen.insert(r);
      r = t[r];
    } while (r != q);
    out.push_back(std::move(cycle));
  }
  return out;
}

bool has_cycle(const Transformation& t) {
  const StateSet recurrent = cyclic_states(t);
  for (State q : recurrent.to_vector())
    if (t[q] != q) return true;
  return false;
}

StateSet fixed_points(const Transformation& t) {
  StateSet out;
  for (State q = 0; q < t.size(); ++q)
    if (t[q] == q) out.insert(q);
  return out;
}

StateSet preimage(const Transformation& t, State q) { return StateSet(kernels::preimage_mask(t, q)); }

int in_degree(const Transformation& t, State q) { return std::popcount(kernels::preimage_mask(t, q)); }

ZeroPath zero_path(const Transformation& t) {
  ZeroPath path;
  std::array<int, kMaxStates> position;
  position.fill(-1);
  State q = 0;
  while (position[q] < 0) {
    position[q] = static_cast<int>(path.prefix.size());
    path.prefix.push_back(q);
    q = t[q];
  }
  path.period = static_cast<int>(path.prefix.size()) - position[q];
  return path;
}

bool is_initially_aperiodic(const Transformation& t) { return zero_path(t).aperiodic(); }

Shape classify_shape(const Transformation& t) {
  const int n = t.size();
  StateSet moved;
  StateSet targets;
  for (State q = 0; q < n; ++q) {
    targets.insert(t[q]);
    if (t[q] != q) moved.insert(q);
  }
  if (moved.empty()) return {ShapeKind::identity, {}, -1};
  if (targets.size() == 1) {
    const State q = targets.to_vector().front();
    return {ShapeKind::constant, StateSet((1u << n) - 1u), q};
  }
  // Every moved state must land on one common target that is itself fixed.
  StateSet moved_targets;
  for (State q : moved.to_vector()) moved_targets.insert(t[q]);
  if (moved_targets.size() == 1) {
    const State target = moved_targets.to_vector().front();
    if (t[target] == target) {
      StateSet sources = moved;
      if (moved.size() == 1) return {ShapeKind::unitary, sources, target};
      return {ShapeKind::semiconstant, sources, target};
    }
  }
  return {ShapeKind::other, {}, -1};
}

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::identity:
      return "identity";
    case ShapeKind::constant:
      return "constant";
    case ShapeKind::unitary:
      return "unitary";
    case ShapeKind::semiconstant:
      return "semiconstant";
    case ShapeKind::other:
      return "other";
  }
  return "other";
}

std::string to_string(const Transformation& t) {
  std::string out;
  for (State q = 0; q < t.size(); ++q) {
    if (q > 0) out += ' ';
    out += std::to_string(t[q]);
  }
  return out;
}

Transformation parse_transformation(std::string_view text) {
  std::vector<State> images;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    if (i == text.size()) break;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc{} || ptr == text.data() + i)
      throw ParseError("bad transformation token in \"" + std::string(text) + "\"");
    images.push_back(value);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  try {
    return Transformation(images);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace sfsyn
