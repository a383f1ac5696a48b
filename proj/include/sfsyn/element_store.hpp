#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "sfsyn/transformation.hpp"

namespace sfsyn {

/// Insertion-ordered set of transformations with open-addressing lookup.
class ElementStore {
 public:
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  ElementStore() { rehash(64); }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Transformation& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Transformation>& items() const { return items_; }

  void reserve(std::size_t count) {
    items_.reserve(count);
    if (count * 2 > slots_.size()) rehash(std::bit_ceil(count * 2));
  }

  std::optional<std::uint32_t> find(const Transformation& t) const {
    std::size_t slot = TransformationHash{}(t) & mask_;
    while (slots_[slot] != kEmpty) {
      if (items_[slots_[slot]] == t) return slots_[slot];
      slot = (slot + 1) & mask_;
    }
    return std::nullopt;
  }

  bool contains(const Transformation& t) const { return find(t).has_value(); }

  /// Returns the element index and whether it was newly added.
  std::pair<std::uint32_t, bool> insert(const Transformation& t) {
    if ((items_.size() + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
    std::size_t slot = TransformationHash{}(t) & mask_;
    while (slots_[slot] != kEmpty) {
      if (items_[slots_[slot]] == t) return {slots_[slot], false};
      slot = (slot + 1) & mask_;
    }
    const auto index = static_cast<std::uint32_t>(items_.size());
    slots_[slot] = index;
    items_.push_back(t);
    return {index, true};
  }

  void clear() {
    items_.clear();
    std::fill(slots_.begin(), slots_.end(), kEmpty);
  }

 private:
  void rehash(std::size_t capacity) {
    slots_.assign(capacity, kEmpty);
    mask_ = capacity - 1;
    for (std::uint32_t i = 0; i < items_.size(); ++i) {
      std::size_t slot = TransformationHash{}(items_[i]) & mask_;
      while (slots_[slot] != kEmpty) slot = (slot + 1) & mask_;
      slots_[slot] = i;
    }
  }

  std::vector<Transformation> items_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
};

}  // namespace sfsyn
