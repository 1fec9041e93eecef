#include <atomic>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace symquot::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(SYMQUOT_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& automatic() {
  static const KernelTable& t = [] () -> const KernelTable& {
    if (const KernelTable* avx = table_for(Isa::avx2)) return *avx;
    return detail::scalar_kernels();
  }();
  return t;
}

std::atomic<const KernelTable*> forced{nullptr};

}  // namespace

const KernelTable& scalar_table() { return detail::scalar_kernels(); }

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &detail::scalar_kernels();
    case Isa::avx2:
#if defined(SYMQUOT_HAVE_AVX2_TU)
      if (cpu_has_avx2()) return &detail::avx2_kernels();
#endif
      return nullptr;
  }
  return nullptr;
}

const KernelTable& active() {
  if (const KernelTable* f = forced.load(std::memory_order_acquire)) return *f;
  return automatic();
}

void force_isa(std::optional<Isa> isa) {
  if (!isa) {
    forced.store(nullptr, std::memory_order_release);
    return;
  }
  const KernelTable* t = table_for(*isa);
  if (!t) throw std::invalid_argument("requested kernel variant is not available on this machine");
  forced.store(t, std::memory_order_release);
}

}  // namespace symquot::kernels
