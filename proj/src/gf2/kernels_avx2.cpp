// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace cifc::gf2::kernels::detail {

void apply_columns_avx2(std::span<const std::uint64_t> columns, std::span<const std::uint64_t> in,
                        std::span<std::uint64_t> out) {
  const std::size_t ncols = columns.size() < 64 ? columns.size() : 64;
  const std::size_t n = in.size();
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i zero = _mm256_setzero_si256();
  std::size_t t = 0;
  for (; t + 4 <= n; t += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + t));
    __m256i acc = zero;
    for (std::size_t j = 0; j < ncols; ++j) {
      // All-ones lane where bit j of the input is set.
      const __m256i sel = _mm256_sub_epi64(zero, _mm256_and_si256(v, one));
      const __m256i col = _mm256_set1_epi64x(static_cast<long long>(columns[j]));
      acc = _mm256_xor_si256(acc, _mm256_and_si256(sel, col));
      v = _mm256_srli_epi64(v, 1);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + t), acc);
  }
  if (t < n) apply_columns_scalar(columns, in.subspan(t), out.subspan(t));
}

void shift_xor_avx2(std::span<const std::uint64_t> in, unsigned shift, std::uint64_t mask,
                    std::span<std::uint64_t> acc) {
  if (shift >= 64) return;
  const std::size_t n = in.size();
  const __m128i count = _mm_cvtsi32_si128(static_cast<int>(shift));
  const __m256i m = _mm256_set1_epi64x(static_cast<long long>(mask));
  std::size_t t = 0;
  for (; t + 4 <= n; t += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + t));
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc.data() + t));
    a = _mm256_xor_si256(a, _mm256_and_si256(_mm256_sll_epi64(v, count), m));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc.data() + t), a);
  }
  if (t < n) shift_xor_scalar(in.subspan(t), shift, mask, acc.subspan(t));
}

}  // namespace cifc::gf2::kernels::detail
