#include "sfsyn/kernels.hpp"

namespace sfsyn::kernels {
namespace {

void compose_right(const Transformation* lhs, std::size_t count, const Transformation& rhs,
                   Transformation* out) {
  for (std::size_t i = 0; i < count; ++i) {
    Transformation r = Transformation::with_size_unchecked(lhs[i].size());
    for (int q = 0; q < kMaxStates; ++q) r.lanes()[q] = rhs.lanes()[lhs[i].lanes()[q]];
    out[i] = r;
  }
}

void compose_left(const Transformation& lhs, const Transformation* rhs, std::size_t count,
                  Transformation* out) {
  for (std::size_t i = 0; i < count; ++i) {
    Transformation r = Transformation::with_size_unchecked(lhs.size());
    for (int q = 0; q < kMaxStates; ++q) r.lanes()[q] = rhs[i].lanes()[lhs.lanes()[q]];
    out[i] = r;
  }
}

std::uint32_t preimage_mask(const Transformation& t, State target) {
  std::uint32_t mask = 0;
  for (int q = 0; q < t.size(); ++q)
    if (t[q] == target) mask |= 1u << q;
  return mask;
}

constexpr KernelTable kTable{compose_right, compose_left, preimage_mask};

}  // namespace

const KernelTable* detail::scalar_table() { return &kTable; }

}  // namespace sfsyn::kernels
