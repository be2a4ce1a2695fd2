#pragma once

// Fixed-width bitsets for the exact solvers; W words cover 64*W points.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>

#include "covering/errors.hpp"

namespace covering::detail {

template <std::size_t W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  void set(std::size_t i) noexcept { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const noexcept { return (w[i >> 6] >> (i & 63)) & 1u; }

  bool none() const noexcept {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  int count() const noexcept {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  /// Index of the lowest set bit, or -1.
  int first() const noexcept {
    for (std::size_t k = 0; k < W; ++k)
      if (w[k]) return static_cast<int>(k * 64 + static_cast<std::size_t>(std::countr_zero(w[k])));
    return -1;
  }
  bool subset_of(const Bits& o) const noexcept {
    for (std::size_t k = 0; k < W; ++k)
      if (w[k] & ~o.w[k]) return false;
    return true;
  }
  bool intersects(const Bits& o) const noexcept {
    for (std::size_t k = 0; k < W; ++k)
      if (w[k] & o.w[k]) return true;
    return false;
  }

  Bits operator&(const Bits& o) const noexcept {
    Bits r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = w[k] & o.w[k];
    return r;
  }
  Bits operator|(const Bits& o) const noexcept {
    Bits r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = w[k] | o.w[k];
    return r;
  }
  Bits minus(const Bits& o) const noexcept {
    Bits r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = w[k] & ~o.w[k];
    return r;
  }
  Bits& operator|=(const Bits& o) noexcept {
    for (std::size_t k = 0; k < W; ++k) w[k] |= o.w[k];
    return *this;
  }
  Bits& operator&=(const Bits& o) noexcept {
    for (std::size_t k = 0; k < W; ++k) w[k] &= o.w[k];
    return *this;
  }
  bool operator==(const Bits&) const = default;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < W; ++k) {
      std::uint64_t x = w[k];
      while (x) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }
};

/// Calls f(std::integral_constant<size_t, W>{}) with the smallest W fitting n.
template <class F>
decltype(auto) with_words(std::size_t n, F&& f) {
  if (n <= 64) return f(std::integral_constant<std::size_t, 1>{});
  if (n <= 128) return f(std::integral_constant<std::size_t, 2>{});
  if (n <= 256) return f(std::integral_constant<std::size_t, 4>{});
  if (n <= 512) return f(std::integral_constant<std::size_t, 8>{});
  if (n <= 1024) return f(std::integral_constant<std::size_t, 16>{});
  throw CapacityError("exact solvers handle at most 1024 points");
}

}  // namespace covering::detail
