#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace invhom::kernels {

enum class Isa { Scalar, Avx2, Neon };

/// Primes accepted by the vector mod-p kernels (exact float reduction).
constexpr std::uint32_t kMaxVectorPrime = 2039;

struct KernelTable {
  Isa isa;
  /// dst[i] = (dst[i] + c * src[i]) mod p for entries in [0, p), c in [0, p).
  void (*axpy_mod)(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
                   std::uint32_t p);
  /// dst[i] ^= src[i].
  void (*xor_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
};

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
/// Table for a specific instruction set; throws if unavailable on this CPU.
const KernelTable& kernel_table(Isa isa);
/// Best available table; INVHOM_FORCE_SCALAR=1 forces the scalar one.
const KernelTable& active_kernels();

namespace detail {
void axpy_mod_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                     std::uint32_t c, std::uint32_t p);
void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
#if defined(INVHOM_HAVE_AVX2)
void axpy_mod_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
                   std::uint32_t p);
void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
#endif
#if defined(__ARM_NEON)
void axpy_mod_neon(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
                   std::uint32_t p);
void xor_words_neon(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
#endif
}  // namespace detail

}  // namespace invhom::kernels
