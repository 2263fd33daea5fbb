// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "cbpm/kernels.hpp"

namespace cbpm::kernels {

namespace {

// Δg for 8 lanes. Equality masks are -1 where colours coincide, so the
// coincidence term enters with flipped sign.
inline __m256i delta8(const std::int32_t* hist, __m256i c1, __m256i m1,
                      __m256i c2, __m256i c3, __m256i c4) {
  const __m256i m2 = _mm256_i32gather_epi32(hist, c2, 4);
  const __m256i m3 = _mm256_i32gather_epi32(hist, c3, 4);
  const __m256i m4 = _mm256_i32gather_epi32(hist, c4, 4);
  __m256i linear = _mm256_sub_epi32(_mm256_add_epi32(m3, m4),
                                    _mm256_add_epi32(m1, m2));
  __m256i masks = _mm256_add_epi32(_mm256_cmpeq_epi32(c1, c2),
                                   _mm256_cmpeq_epi32(c3, c4));
  masks = _mm256_sub_epi32(masks, _mm256_cmpeq_epi32(c1, c3));
  masks = _mm256_sub_epi32(masks, _mm256_cmpeq_epi32(c1, c4));
  masks = _mm256_sub_epi32(masks, _mm256_cmpeq_epi32(c2, c3));
  masks = _mm256_sub_epi32(masks, _mm256_cmpeq_epi32(c2, c4));
  // 2·linear + 4 - 2·masks
  const __m256i twice = _mm256_slli_epi32(_mm256_sub_epi32(linear, masks), 1);
  return _mm256_add_epi32(twice, _mm256_set1_epi32(4));
}

}  // namespace

void swap_delta_row_avx2(const RowQuery& q, std::size_t begin,
                         std::size_t end, std::int32_t* out_cross1,
                         std::int32_t* out_cross2) {
  const __m256i c1 = _mm256_set1_epi32(q.colour_uv);
  const __m256i m1 = _mm256_set1_epi32(q.histogram[q.colour_uv]);
  std::size_t b = begin;
  for (; b + 8 <= end; b += 8) {
    const __m256i x = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(q.first + b));
    const __m256i y = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(q.second + b));
    const __m256i cxy = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(q.pair_colour + b));
    const __m256i ux = _mm256_i32gather_epi32(q.row_u, x, 4);
    const __m256i vy = _mm256_i32gather_epi32(q.row_v, y, 4);
    const __m256i uy = _mm256_i32gather_epi32(q.row_u, y, 4);
    const __m256i vx = _mm256_i32gather_epi32(q.row_v, x, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out_cross1 + (b - begin)),
                        delta8(q.histogram, c1, m1, cxy, ux, vy));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out_cross2 + (b - begin)),
                        delta8(q.histogram, c1, m1, cxy, uy, vx));
  }
  if (b < end) {
    swap_delta_row_scalar(q, b, end, out_cross1 + (b - begin),
                          out_cross2 + (b - begin));
  }
}

}  // namespace cbpm::kernels
