#pragma once

// Data-parallel inner loops over transformation batches. Every kernel has a
// scalar reference; SIMD variants are selected once at startup from CPUID
// (or SFSYN_ISA=scalar|ssse3|avx2|neon) and must agree with it bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sfsyn/transformation.hpp"

namespace sfsyn::kernels {

enum class Isa { scalar, ssse3, avx2, neon };

struct KernelTable {
  // out[i] = compose(lhs[i], rhs)
  void (*compose_right)(const Transformation* lhs, std::size_t count, const Transformation& rhs,
                        Transformation* out);
  // out[i] = compose(lhs, rhs[i])
  void (*compose_left)(const Transformation& lhs, const Transformation* rhs, std::size_t count,
                       Transformation* out);
  // Bit q set iff q < n and t[q] == target.
  std::uint32_t (*preimage_mask)(const Transformation& t, State target);
};

std::string_view name(Isa isa);
std::vector<Isa> available_isas();
Isa active_isa();
/// Forces an ISA; throws ArgumentError when the CPU or build lacks it.
void set_active_isa(Isa isa);
const KernelTable& table(Isa isa);
const KernelTable& active();

inline void compose_right(std::span<const Transformation> lhs, const Transformation& rhs,
                          std::span<Transformation> out) {
  active().compose_right(lhs.data(), lhs.size(), rhs, out.data());
}

inline void compose_left(const Transformation& lhs, std::span<const Transformation> rhs,
                         std::span<Transformation> out) {
  active().compose_left(lhs, rhs.data(), rhs.size(), out.data());
}

inline std::uint32_t preimage_mask(const Transformation& t, State target) {
  return active().preimage_mask(t, target);
}

namespace detail {
const KernelTable* scalar_table();
const KernelTable* ssse3_table();  // nullptr when not compiled in
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

}  // namespace sfsyn::kernels
