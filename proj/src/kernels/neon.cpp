#include "sfsyn/kernels.hpp"

#include <arm_neon.h>

namespace sfsyn::kernels {
namespace {

inline uint8x16_t load(const Transformation& t) { return vld1q_u8(t.lanes()); }

inline void store(Transformation& out, uint8x16_t v, int n) {
  out = Transformation::with_size_unchecked(n);
  vst1q_u8(out.lanes(), v);
}

void compose_right(const Transformation* lhs, std::size_t count, const Transformation& rhs,
                   Transformation* out) {
  const uint8x16_t table = load(rhs);
  for (std::size_t i = 0; i < count; ++i) store(out[i], vqtbl1q_u8(table, load(lhs[i])), lhs[i].size());
}

void compose_left(const Transformation& lhs, const Transformation* rhs, std::size_t count,
                  Transformation* out) {
  const uint8x16_t index = load(lhs);
  for (std::size_t i = 0; i < count; ++i) store(out[i], vqtbl1q_u8(load(rhs[i]), index), lhs.size());
}

std::uint32_t preimage_mask(const Transformation& t, State target) {
  static const uint8_t kWeights[16] = {1, 2, 4, 8, 16, 32, 64, 128, 1, 2, 4, 8, 16, 32, 64, 128};
  const uint8x16_t eq = vceqq_u8(load(t), vdupq_n_u8(static_cast<uint8_t>(target)));
  const uint8x16_t weighted = vandq_u8(eq, vld1q_u8(kWeights));
  const std::uint32_t lo = vaddv_u8(vget_low_u8(weighted));
  const std::uint32_t hi = vaddv_u8(vget_high_u8(weighted));
  return (lo | (hi << 8)) & ((1u << t.size()) - 1u);
}

constexpr KernelTable kTable{compose_right, compose_left, preimage_mask};

}  // namespace

const KernelTable* detail::neon_table() { return &kTable; }

}  // namespace sfsyn::kernels
