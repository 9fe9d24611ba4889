// AArch64 only; NEON is part of the base ISA there.

#include <arm_neon.h>

#include <algorithm>

#include "cim/kernels.hpp"

namespace cim::kernels {

namespace {

// Two lanes: +w where a > b, -w where a < b, 0 on ties.
inline float64x2_t signed_select(int32x2_t a, int32x2_t b, float64x2_t w) {
  const uint64x2_t gt = vreinterpretq_u64_s64(
      vmovl_s32(vreinterpret_s32_u32(vcgt_s32(a, b))));
  const uint64x2_t lt = vreinterpretq_u64_s64(
      vmovl_s32(vreinterpret_s32_u32(vcgt_s32(b, a))));
  const float64x2_t plus =
      vreinterpretq_f64_u64(vandq_u64(gt, vreinterpretq_u64_f64(w)));
  const float64x2_t minus =
      vreinterpretq_f64_u64(vandq_u64(lt, vreinterpretq_u64_f64(w)));
  return vsubq_f64(plus, minus);
}

double contest_sum_neon(const Amount* mine, const Amount* theirs,
                        const double* values, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const int32x4_t a = vld1q_s32(mine + j);
    const int32x4_t b = vld1q_s32(theirs + j);
    acc0 = vaddq_f64(acc0, signed_select(vget_low_s32(a), vget_low_s32(b),
                                         vld1q_f64(values + j)));
    acc1 = vaddq_f64(acc1, signed_select(vget_high_s32(a), vget_high_s32(b),
                                         vld1q_f64(values + j + 2)));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; j < n; ++j) {
    if (mine[j] > theirs[j]) {
      sum += values[j];
    } else if (mine[j] < theirs[j]) {
      sum -= values[j];
    }
  }
  return sum;
}

double signed_weight_sum_neon(Amount offer, const Amount* theirs,
                              const double* weights, std::size_t n) {
  const int32x2_t a = vdup_n_s32(offer);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, signed_select(a, vld1_s32(theirs + i),
                                       vld1q_f64(weights + i)));
  }
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) {
    if (offer > theirs[i]) {
      sum += weights[i];
    } else if (offer < theirs[i]) {
      sum -= weights[i];
    }
  }
  return sum;
}

void max_plus_neon(double* dst, const double* src, double gain, std::size_t n) {
  const float64x2_t g = vdupq_n_f64(gain);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t cand = vaddq_f64(vld1q_f64(src + i), g);
    const float64x2_t cur = vld1q_f64(dst + i);
    // Same selection rule as std::max(cur, cand), including signed zeros.
    vst1q_f64(dst + i, vbslq_f64(vcltq_f64(cur, cand), cand, cur));
  }
  for (; i < n; ++i) dst[i] = std::max(dst[i], src[i] + gain);
}

}  // namespace

const KernelSet* neon_impl() {
  static const KernelSet set{"neon", contest_sum_neon, signed_weight_sum_neon,
                             max_plus_neon};
  return &set;
}

}  // namespace cim::kernels
