#include <cstdlib>
#include <string>

#include "covering/errors.hpp"
#include "covering/simd/kernels.hpp"

namespace covering::simd {

#ifndef COVERING_HAVE_AVX2
const Kernels* detail::avx2_kernels() noexcept { return nullptr; }
#endif

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return detail::avx2_kernels() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

std::string_view name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

namespace {

Isa select() noexcept {
  if (const char* env = std::getenv("COVERING_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && supported(Isa::avx2)) return Isa::avx2;
  }
  return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

Isa active_isa() noexcept {
  static const Isa isa = select();
  return isa;
}

const Kernels& kernels_for(Isa isa) {
  if (!supported(isa)) throw PreconditionError("SIMD variant " + std::string(name(isa)) + " is unavailable");
  return isa == Isa::avx2 ? *detail::avx2_kernels() : detail::scalar_kernels;
}

const Kernels& kernels() noexcept {
  static const Kernels& k = active_isa() == Isa::avx2 ? *detail::avx2_kernels() : detail::scalar_kernels;
  return k;
}

}  // namespace covering::simd
