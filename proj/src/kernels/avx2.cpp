// Compiled with -mavx2. Only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>

#include "cim/kernels.hpp"

namespace cim::kernels {

namespace {

inline double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

// Sign-selects four doubles: +w where a > b, -w where a < b, 0 on ties.
inline __m256d signed_select(__m128i a, __m128i b, __m256d w) {
  const __m256d gt = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(_mm_cmpgt_epi32(a, b)));
  const __m256d lt = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(_mm_cmpgt_epi32(b, a)));
  return _mm256_sub_pd(_mm256_and_pd(gt, w), _mm256_and_pd(lt, w));
}

double contest_sum_avx2(const Amount* mine, const Amount* theirs,
                        const double* values, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m128i a0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(mine + j));
    const __m128i b0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(theirs + j));
    const __m128i a1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(mine + j + 4));
    const __m128i b1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(theirs + j + 4));
    acc0 = _mm256_add_pd(acc0, signed_select(a0, b0, _mm256_loadu_pd(values + j)));
    acc1 = _mm256_add_pd(acc1, signed_select(a1, b1, _mm256_loadu_pd(values + j + 4)));
  }
  for (; j + 4 <= n; j += 4) {
    const __m128i a = _mm_loadu_si128(reinterpret_cast<const __m128i*>(mine + j));
    const __m128i b = _mm_loadu_si128(reinterpret_cast<const __m128i*>(theirs + j));
    acc0 = _mm256_add_pd(acc0, signed_select(a, b, _mm256_loadu_pd(values + j)));
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; j < n; ++j) {
    if (mine[j] > theirs[j]) {
      sum += values[j];
    } else if (mine[j] < theirs[j]) {
      sum -= values[j];
    }
  }
  return sum;
}

double signed_weight_sum_avx2(Amount offer, const Amount* theirs,
                              const double* weights, std::size_t n) {
  const __m128i a = _mm_set1_epi32(offer);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i b = _mm_loadu_si128(reinterpret_cast<const __m128i*>(theirs + i));
    acc = _mm256_add_pd(acc, signed_select(a, b, _mm256_loadu_pd(weights + i)));
  }
  double sum = horizontal_sum(acc);
  for (; i < n; ++i) {
    if (offer > theirs[i]) {
      sum += weights[i];
    } else if (offer < theirs[i]) {
      sum -= weights[i];
    }
  }
  return sum;
}

void max_plus_avx2(double* dst, const double* src, double gain, std::size_t n) {
  const __m256d g = _mm256_set1_pd(gain);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d cand = _mm256_add_pd(_mm256_loadu_pd(src + i), g);
    // max_pd returns its second operand on equality, matching std::max(dst, cand).
    _mm256_storeu_pd(dst + i, _mm256_max_pd(cand, _mm256_loadu_pd(dst + i)));
  }
  for (; i < n; ++i) dst[i] = std::max(dst[i], src[i] + gain);
}

}  // namespace

const KernelSet* avx2_impl() {
  static const KernelSet set{"avx2", contest_sum_avx2, signed_weight_sum_avx2,
                             max_plus_avx2};
  return &set;
}

}  // namespace cim::kernels
