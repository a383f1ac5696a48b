// Built with -mssse3; only reached after a CPUID check.
#include "sfsyn/kernels.hpp"

#include <immintrin.h>

namespace sfsyn::kernels {
namespace {

inline __m128i load(const Transformation& t) {
  return _mm_load_si128(reinterpret_cast<const __m128i*>(t.lanes()));
}

inline void store(Transformation& out, __m128i v, int n) {
  out = Transformation::with_size_unchecked(n);
  _mm_store_si128(reinterpret_cast<__m128i*>(out.lanes()), v);
}

void compose_right(const Transformation* lhs, std::size_t count, const Transformation& rhs,
                   Transformation* out) {
  const __m128i table = load(rhs);
  for (std::size_t i = 0; i < count; ++i) store(out[i], _mm_shuffle_epi8(table, load(lhs[i])), lhs[i].size());
}

void compose_left(const Transformation& lhs, const Transformation* rhs, std::size_t count,
                  Transformation* out) {
  const __m128i index = load(lhs);
  for (std::size_t i = 0; i < count; ++i) store(out[i], _mm_shuffle_epi8(load(rhs[i]), index), lhs.size());
}

std::uint32_t preimage_mask(const Transformation& t, State target) {
  const __m128i eq = _mm_cmpeq_epi8(load(t), _mm_set1_epi8(static_cast<char>(target)));
  const auto bits = static_cast<std::uint32_t>(_mm_movemask_epi8(eq));
  return bits & ((1u << t.size()) - 1u);
}

constexpr KernelTable kTable{compose_right, compose_left, preimage_mask};

}  // namespace

const KernelTable* detail::ssse3_table() { return &kTable; }

}  // namespace sfsyn::kernels
