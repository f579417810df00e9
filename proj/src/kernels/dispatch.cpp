#include <cstdlib>
#include <stdexcept>

#include "invhom/kernels.hpp"

namespace invhom::kernels {

namespace {

const KernelTable kScalar{Isa::Scalar, detail::axpy_mod_scalar, detail::xor_words_scalar};
#if defined(INVHOM_HAVE_AVX2)
const KernelTable kAvx2{Isa::Avx2, detail::axpy_mod_avx2, detail::xor_words_avx2};
#endif
#if defined(__ARM_NEON)
const KernelTable kNeon{Isa::Neon, detail::axpy_mod_neon, detail::xor_words_neon};
#endif

bool force_scalar() {
  const char* v = std::getenv("INVHOM_FORCE_SCALAR");
  return v != nullptr && *v != '\0' && *v != '0';
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(INVHOM_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__ARM_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernel_table(Isa isa) {
  if (!isa_available(isa)) throw std::runtime_error("instruction set not available");
  switch (isa) {
#if defined(INVHOM_HAVE_AVX2)
    case Isa::Avx2:
      return kAvx2;
#endif
#if defined(__ARM_NEON)
    case Isa::Neon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    if (force_scalar()) return kScalar;
    if (isa_available(Isa::Avx2)) return kernel_table(Isa::Avx2);
    if (isa_available(Isa::Neon)) return kernel_table(Isa::Neon);
    return kScalar;
  }();
  return chosen;
}

}  // namespace invhom::kernels
