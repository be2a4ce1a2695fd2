#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "covering/simd/kernels.hpp"

using namespace covering::simd;

namespace {

std::vector<const Kernels*> variants() {
  std::vector<const Kernels*> out{&kernels_for(Isa::scalar)};
  if (supported(Isa::avx2)) out.push_back(&kernels_for(Isa::avx2));
  return out;
}

}  // namespace

TEST_CASE("scalar kernels follow their definitions") {
  const auto& k = kernels_for(Isa::scalar);
  std::vector<std::uint8_t> dst{10, 0, 255, 200};
  const std::vector<std::uint8_t> src{3, 4, 250, 100};
  k.min_add_u8(dst.data(), src.data(), 5, dst.size());
  CHECK(dst == std::vector<std::uint8_t>{8, 0, 255, 105});
  k.min_add_u8(dst.data(), src.data(), 200, dst.size());
  CHECK(dst == std::vector<std::uint8_t>{8, 0, 255, 105});

  std::vector<std::uint8_t> a{0, 1, 2, 4, 6};
  const std::vector<std::uint8_t> b{6, 6, 3, 0, 1};
  k.axpy_mod_p(a.data(), b.data(), 3, 7, a.size());
  CHECK(a == std::vector<std::uint8_t>{4, 5, 4, 4, 2});
}

TEST_CASE("variants agree on every length and alignment") {
  const auto vs = variants();
  MESSAGE("active variant: ", name(active_isa()));
  std::mt19937_64 rng(17);
  for (std::size_t n = 0; n <= 200; ++n)
    for (std::size_t offset : {0, 1, 7}) {
      std::vector<std::uint8_t> src(n + offset), base(n + offset);
      for (auto& v : src) v = static_cast<std::uint8_t>(rng());
      for (auto& v : base) v = static_cast<std::uint8_t>(rng());
      const auto c = static_cast<std::uint8_t>(rng());
      std::vector<std::vector<std::uint8_t>> outs;
      for (const auto* k : vs) {
        auto dst = base;
        k->min_add_u8(dst.data() + offset, src.data() + offset, c, n);
        outs.push_back(dst);
      }
      for (const auto& o : outs) CHECK(o == outs.front());

      for (std::uint8_t p : {2, 3, 5, 7, 11, 13}) {
        std::vector<std::uint8_t> x(n + offset), y(n + offset);
        for (auto& v : x) v = static_cast<std::uint8_t>(rng() % p);
        for (auto& v : y) v = static_cast<std::uint8_t>(rng() % p);
        const auto a = static_cast<std::uint8_t>(rng() % p);
        std::vector<std::vector<std::uint8_t>> res;
        for (const auto* k : vs) {
          auto dst = x;
          k->axpy_mod_p(dst.data() + offset, y.data() + offset, a, p, n);
          res.push_back(dst);
        }
        for (const auto& o : res) CHECK(o == res.front());
        for (std::size_t i = 0; i < n; ++i)
          CHECK(res.front()[offset + i] == (x[offset + i] + a * y[offset + i]) % p);
      }
    }
}

TEST_CASE("dispatch") {
  CHECK(supported(Isa::scalar));
  CHECK(name(Isa::scalar) == "scalar");
  CHECK(name(Isa::avx2) == "avx2");
  CHECK(supported(active_isa()));
  CHECK(&kernels() == &kernels_for(active_isa()));
}
