#include <atomic>
#include <cstdlib>
#include <string>

#include "sfsyn/kernels.hpp"

namespace sfsyn::kernels {

#if !defined(SFSYN_HAVE_SSSE3)
const KernelTable* detail::ssse3_table() { return nullptr; }
#endif
#if !defined(SFSYN_HAVE_AVX2)
const KernelTable* detail::avx2_table() { return nullptr; }
#endif
#if !defined(SFSYN_HAVE_NEON)
const KernelTable* detail::neon_table() { return nullptr; }
#endif

namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
#if defined(__x86_64__) || defined(__i386__)
    case Isa::ssse3:
      return detail::ssse3_table() != nullptr && __builtin_cpu_supports("ssse3");
    case Isa::avx2:
      return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
    case Isa::ssse3:
    case Isa::avx2:
      return false;
#endif
    case Isa::neon:
      return detail::neon_table() != nullptr;
  }
  return false;
}

Isa pick_default() {
  if (const char* forced = std::getenv("SFSYN_ISA")) {
    const std::string wanted = forced;
    for (Isa isa : available_isas())
      if (name(isa) == wanted) return isa;
  }
  for (Isa isa : {Isa::avx2, Isa::neon, Isa::ssse3})
    if (cpu_supports(isa)) return isa;
  return Isa::scalar;
}

std::atomic<const KernelTable*> g_active{nullptr};
std::atomic<Isa> g_active_isa{Isa::scalar};

void ensure_initialized() {
  if (g_active.load(std::memory_order_acquire) != nullptr) return;
  const Isa isa = pick_default();
  g_active_isa.store(isa, std::memory_order_relaxed);
  g_active.store(&table(isa), std::memory_order_release);
}

}  // namespace

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::ssse3:
      return "ssse3";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::ssse3, Isa::avx2, Isa::neon})
    if (cpu_supports(isa)) out.push_back(isa);
  return out;
}

const KernelTable& table(Isa isa) {
  const KernelTable* t = nullptr;
  switch (isa) {
    case Isa::scalar:
      t = detail::scalar_table();
      break;
    case Isa::ssse3:
      t = detail::ssse3_table();
      break;
    case Isa::avx2:
      t = detail::avx2_table();
      break;
    case Isa::neon:
      t = detail::neon_table();
      break;
  }
  if (t == nullptr || !cpu_supports(isa))
    throw ArgumentError("kernel ISA not available: " + std::string(name(isa)));
  return *t;
}

Isa active_isa() {
  ensure_initialized();
  return g_active_isa.load(std::memory_order_relaxed);
}

void set_active_isa(Isa isa) {
  const KernelTable& t = table(isa);
  g_active_isa.store(isa, std::memory_order_relaxed);
  g_active.store(&t, std::memory_order_release);
}

const KernelTable& active() {
  ensure_initialized();
  return *g_active.load(std::memory_order_acquire);
}

}  // namespace sfsyn::kernels
