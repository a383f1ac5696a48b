// Built with -mavx2; only reached after a CPUID check. vpshufb shuffles
// within 128-bit lanes, so each 256-bit step composes two transformations.
#include "sfsyn/kernels.hpp"

#include <immintrin.h>

namespace sfsyn::kernels {
namespace {

inline __m128i load(const Transformation& t) {
  return _mm_load_si128(reinterpret_cast<const __m128i*>(t.lanes()));
}

inline __m256i load_pair(const Transformation& lo, const Transformation& hi) {
  return _mm256_inserti128_si256(_mm256_castsi128_si256(load(lo)), load(hi), 1);
}

inline void store(Transformation& out, __m128i v, int n) {
  out = Transformation::with_size_unchecked(n);
  _mm_store_si128(reinterpret_cast<__m128i*>(out.lanes()), v);
}

inline void store_pair(Transformation* out, __m256i v, int n0, int n1) {
  store(out[0], _mm256_castsi256_si128(v), n0);
  store(out[1], _mm256_extracti128_si256(v, 1), n1);
}

void compose_right(const Transformation* lhs, std::size_t count, const Transformation& rhs,
                   Transformation* out) {
  const __m256i table = _mm256_broadcastsi128_si256(load(rhs));
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const __m256i r = _mm256_shuffle_epi8(table, load_pair(lhs[i], lhs[i + 1]));
    store_pair(out + i, r, lhs[i].size(), lhs[i + 1].size());
  }
  if (i < count) store(out[i], _mm_shuffle_epi8(load(rhs), load(lhs[i])), lhs[i].size());
}

void compose_left(const Transformation& lhs, const Transformation* rhs, std::size_t count,
                  Transformation* out) {
  const __m256i index = _mm256_broadcastsi128_si256(load(lhs));
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const __m256i r = _mm256_shuffle_epi8(load_pair(rhs[i], rhs[i + 1]), index);
    store_pair(out + i, r, lhs.size(), lhs.size());
  }
  if (i < count) store(out[i], _mm_shuffle_epi8(load(rhs[i]), load(lhs)), lhs.size());
}

std::uint32_t preimage_mask(const Transformation& t, State target) {
  const __m128i eq = _mm_cmpeq_epi8(load(t), _mm_set1_epi8(static_cast<char>(target)));
  const auto bits = static_cast<std::uint32_t>(_mm_movemask_epi8(eq));
  return bits & ((1u << t.size()) - 1u);
}

constexpr KernelTable kTable{compose_right, compose_left, preimage_mask};

}  // namespace

const KernelTable* detail::avx2_table() { return &kTable; }

}  // namespace sfsyn::kernels
