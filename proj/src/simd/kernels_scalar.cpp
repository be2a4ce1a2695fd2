#include <algorithm>

#include "covering/simd/kernels.hpp"

namespace covering::simd::detail {

namespace {

void min_add_u8_scalar(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned sum = std::min(255u, static_cast<unsigned>(src[i]) + c);
    dst[i] = static_cast<std::uint8_t>(std::min<unsigned>(dst[i], sum));
  }
}

void axpy_mod_p_scalar(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t a, std::uint8_t p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<std::uint8_t>((dst[i] + a * src[i]) % p);
}

}  // namespace

const Kernels scalar_kernels{&min_add_u8_scalar, &axpy_mod_p_scalar};

}  // namespace covering::simd::detail
