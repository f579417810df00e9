#include "invhom/kernels.hpp"

#if defined(__ARM_NEON)
#include <arm_neon.h>

namespace invhom::kernels::detail {

void axpy_mod_neon(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
                   std::uint32_t p) {
  const uint32x4_t vp = vdupq_n_u32(p);
  const float32x4_t vinv = vdupq_n_f32(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    uint32x4_t x = vmlaq_n_u32(vld1q_u32(dst + i), vld1q_u32(src + i), c);
    uint32x4_t q = vcvtq_u32_f32(vmulq_f32(vcvtq_f32_u32(x), vinv));
    int32x4_t r = vreinterpretq_s32_u32(vmlsq_u32(x, q, vp));
    r = vaddq_s32(r, vandq_s32(vreinterpretq_s32_u32(vcltq_s32(r, vdupq_n_s32(0))),
                               vreinterpretq_s32_u32(vp)));
    uint32x4_t ru = vreinterpretq_u32_s32(r);
    ru = vsubq_u32(ru, vandq_u32(vcgeq_u32(ru, vp), vp));
    vst1q_u32(dst + i, ru);
  }
  axpy_mod_scalar(dst + i, src + i, n - i, c, p);
}

void xor_words_neon(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, veorq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  xor_words_scalar(dst + i, src + i, n - i);
}

}  // namespace invhom::kernels::detail
#endif
