// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>

#include "covering/simd/kernels.hpp"

namespace covering::simd::detail {

namespace {

void min_add_u8_avx2(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  const __m256i vc = _mm256_set1_epi8(static_cast<char>(c));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_min_epu8(d, _mm256_adds_epu8(s, vc)));
  }
  for (; i < n; ++i) {
    const unsigned sum = std::min(255u, static_cast<unsigned>(src[i]) + c);
    dst[i] = static_cast<std::uint8_t>(std::min<unsigned>(dst[i], sum));
  }
}

void axpy_mod_p_avx2(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t a, std::uint8_t p, std::size_t n) {
  // a * s mod p via a 16-entry shuffle table (s < p <= 16), then one
  // conditional subtraction: min(t, t - p) wraps for t < p.
  alignas(32) std::uint8_t table[32] = {};
  for (int s = 0; s < 16; ++s) table[s] = table[s + 16] = static_cast<std::uint8_t>((a * s) % p);
  const __m256i lut = _mm256_load_si256(reinterpret_cast<const __m256i*>(table));
  const __m256i vp = _mm256_set1_epi8(static_cast<char>(p));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i t = _mm256_add_epi8(d, _mm256_shuffle_epi8(lut, s));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_min_epu8(t, _mm256_sub_epi8(t, vp)));
  }
  for (; i < n; ++i) dst[i] = static_cast<std::uint8_t>((dst[i] + a * src[i]) % p);
}

const Kernels avx2{&min_add_u8_avx2, &axpy_mod_p_avx2};

}  // namespace

const Kernels* avx2_kernels() noexcept { return &avx2; }

}  // namespace covering::simd::detail
