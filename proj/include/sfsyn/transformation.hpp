#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfsyn/errors.hpp"

namespace sfsyn {

inline constexpr int kMaxStates = 16;

using State = int;

/// Small set of states backed by a bit mask.
class StateSet {
 public:
  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint32_t bits) : bits_(bits) {}
  StateSet(std::initializer_list<State> states) {
    for (State q : states) insert(q);
  }

  constexpr bool contains(State q) const { return (bits_ >> q) & 1u; }
  constexpr void insert(State q) { bits_ |= 1u << q; }
  constexpr void erase(State q) { bits_ &= ~(1u << q); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint32_t bits() const { return bits_; }

  std::vector<State> to_vector() const {
    std::vector<State> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  constexpr bool operator==(const StateSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

/// A total map on the states {0, ..., n-1}, n <= kMaxStates.
///
/// Images live in a 16-byte array so that composition is a single byte
/// shuffle on SIMD targets. Lanes at and above n hold the identity, which keeps
/// equality, hashing and shuffles canonical.
class Transformation {
 public:
  Transformation() { clear_tail(0); }

  /// Builds from an image list; throws ArgumentError on out-of-range data.
  explicit Transformation(std::span<const State> images);
  Transformation(std::initializer_list<State> images)
      : Transformation(std::span<const State>(images.begin(), images.size())) {}

  static Transformation identity(int n);
  static Transformation constant(int n, State q);
  /// (S -> q): states of S go to q, everything else is fixed.
  static Transformation semiconstant(int n, StateSet sources, State q);

  int size() const { return n_; }
  State operator[](State q) const { return images_[static_cast<std::size_t>(q)]; }
  void set(State q, State image) { images_[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(image); }

  std::span<const std::uint8_t> images() const { return {images_.data(), static_cast<std::size_t>(n_)}; }
  const std::uint8_t* lanes() const { return images_.data(); }
  std::uint8_t* lanes() { return images_.data(); }

  std::uint64_t low_word() const {
    std::uint64_t w;
    std::memcpy(&w, images_.data(), 8);
    return w;
  }
  std::uint64_t high_word() const {
    std::uint64_t w;
    std::memcpy(&w, images_.data() + 8, 8);
    return w;
  }

  bool operator==(const Transformation& other) const {
    return n_ == other.n_ && std::memcmp(images_.data(), other.images_.data(), kMaxStates) == 0;
  }
  /// Orders by size, then lexicographically by images.
  std::strong_ordering operator<=>(const Transformation& other) const;

  static Transformation with_size_unchecked(int n) {
    Transformation t;
    t.n_ = static_cast<std::uint8_t>(n);
    return t;
  }

 private:
  void clear_tail(int from) {
    for (int q = from; q < kMaxStates; ++q) images_[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(q);
  }

  alignas(16) std::array<std::uint8_t, kMaxStates> images_;
  std::uint8_t n_ = 0;
};

struct TransformationHash {
  std::size_t operator()(const Transformation& t) const {
    std::uint64_t h = t.low_word() * 0x9e3779b97f4a7c15ULL;
    h ^= (t.high_word() + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2)) * 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 31;
    return static_cast<std::size_t>(h);
  }
};

/// q (s o t) = (q s) t.
Transformation compose(const Transformation& s, const Transformation& t);

/// t^k for k >= 0 (t^0 is the identity).
Transformation power(const Transformation& t, int k);

struct Orbit {
  std::vector<State> states;  // sorted
  /// The unique cycle, rotated to start at its minimum; one entry for a fixed point.
  std::vector<State> cycle;
};

struct OrbitPartition {
  std::vector<Orbit> classes;  // ordered by minimum state
};

OrbitPartition orbits(const Transformation& t);

/// Cycles of length >= 2, each rotated to start at its minimum, ordered by that minimum.
std::vector<std::vector<State>> cycles(const Transformation& t);
StateSet cyclic_states(const Transformation& t);
bool has_cycle(const Transformation& t);
StateSet fixed_points(const Transformation& t);
int in_degree(const Transformation& t, State q);
StateSet preimage(const Transformation& t, State q);

struct ZeroPath {
  std::vector<State> prefix;  // 0, 0t, 0t^2, ... while distinct
  int period = 1;

  bool aperiodic() const { return period == 1; }
  State last() const { return prefix.back(); }
};

ZeroPath zero_path(const Transformation& t);
bool is_initially_aperiodic(const Transformation& t);

enum class ShapeKind { identity, constant, unitary, semiconstant, other };

struct Shape {
  ShapeKind kind = ShapeKind::other;
  StateSet sources;  // moved states for unitary/semiconstant; all states for constant
  State target = -1;

  bool operator==(const Shape&) const = default;
};

Shape classify_shape(const Transformation& t);
std::string_view to_string(ShapeKind kind);

/// Whitespace-separated images, e.g. "4 2 3 1 4".
std::string to_string(const Transformation& t);
Transformation parse_transformation(std::string_view text);

}  // namespace sfsyn
