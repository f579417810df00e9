#include "invhom/kernels.hpp"

namespace invhom::kernels::detail {

void axpy_mod_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                     std::uint32_t c, std::uint32_t p) {
  const std::uint64_t cc = c;
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = static_cast<std::uint32_t>((dst[i] + cc * src[i]) % p);
}

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

}  // namespace invhom::kernels::detail
