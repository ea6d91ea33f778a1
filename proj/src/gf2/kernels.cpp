#include "cifc/gf2/kernels.hpp"

#include <atomic>

#include "kernels_impl.hpp"

namespace cifc::gf2::kernels {

namespace {

const KernelTable kScalar{Isa::Scalar, "scalar", &detail::apply_columns_scalar,
                          &detail::shift_xor_scalar};

#if defined(CIFC_HAVE_AVX2)
const KernelTable kAvx2{Isa::Avx2, "avx2", &detail::apply_columns_avx2, &detail::shift_xor_avx2};
#endif

bool cpu_has_avx2() {
#if defined(CIFC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = __builtin_cpu_supports("avx2");
  return has;
#else
  return false;
#endif
}

const KernelTable* best() {
  if (const auto* t = avx2_table()) return t;
  return &kScalar;
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(CIFC_HAVE_AVX2)
  if (cpu_has_avx2()) return &kAvx2;
#endif
  return nullptr;
}

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = best();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

const KernelTable& force(Isa isa) {
  const KernelTable* t = &kScalar;
  if (isa == Isa::Avx2) {
    if (const auto* a = avx2_table()) t = a;
  }
  g_active.store(t, std::memory_order_release);
  return *t;
}

void reset() { g_active.store(best(), std::memory_order_release); }

}  // namespace cifc::gf2::kernels
