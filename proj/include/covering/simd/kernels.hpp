#pragma once

// Data-parallel byte kernels with a scalar reference and an AVX2 variant,
// selected at runtime. COVERING_SIMD=scalar|avx2 overrides the choice.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace covering::simd {

enum class Isa { scalar, avx2 };

struct Kernels {
  /// dst[i] = min(dst[i], saturating src[i] + c).
  void (*min_add_u8)(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);
  /// dst[i] = (dst[i] + a * src[i]) mod p for residues dst, src, a < p <= 16.
  void (*axpy_mod_p)(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t a, std::uint8_t p, std::size_t n);
};

bool supported(Isa isa) noexcept;
std::string_view name(Isa isa) noexcept;

/// The runtime-selected ISA.
Isa active_isa() noexcept;
const Kernels& kernels() noexcept;

/// Throws PreconditionError when `isa` is not available on this machine/build.
const Kernels& kernels_for(Isa isa);

namespace detail {
extern const Kernels scalar_kernels;
/// nullptr when the AVX2 translation unit is not built.
const Kernels* avx2_kernels() noexcept;
}  // namespace detail

}  // namespace covering::simd
