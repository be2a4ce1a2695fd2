#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "covering/errors.hpp"
#include "covering/simd/kernels.hpp"
#include "covering/tensor.hpp"

// Slice rank as a split problem. A slice term along axis j is a(x_j) b(x_rest);
// k of them sum to a tensor whose axis-j unfolding has rank <= k, and a rank-k
// unfolding is a sum of k such terms. Grouping the terms by axis gives
//   sr(T) = min over T_1 + ... + T_d = T of sum_j rank_j(T_j).
// Tensors on a fixed shape are indexed by their entries as base-p digits, and
// the minimum is an iterated min-plus convolution over the group F_p^N.

namespace covering {

namespace {

using Table = std::vector<std::uint8_t>;

struct Digits {
  int p;
  int n;
  std::size_t size;
};

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

// sub[a * size + b] = a - b digitwise mod p.
std::vector<std::uint32_t> difference_table(const Digits& g) {
  std::vector<std::uint32_t> sub(g.size * g.size);
  for (std::size_t a = 0; a < g.size; ++a)
    for (std::size_t b = 0; b < g.size; ++b) {
      std::size_t x = a, y = b, out = 0, scale = 1;
      for (int k = 0; k < g.n; ++k) {
        const auto dx = x % static_cast<std::size_t>(g.p), dy = y % static_cast<std::size_t>(g.p);
        out += ((dx + static_cast<std::size_t>(g.p) - dy) % static_cast<std::size_t>(g.p)) * scale;
        x /= static_cast<std::size_t>(g.p);
        y /= static_cast<std::size_t>(g.p);
        scale *= static_cast<std::size_t>(g.p);
      }
      sub[a * g.size + b] = static_cast<std::uint32_t>(out);
    }
  return sub;
}

// f(T) = min_S r(S) + g(T - S), with T = lo + L * hi and lo the low digits.
Table convolve(const Table& r, const Table& g, const Digits& lo, const Digits& hi,
               const std::vector<std::uint32_t>& sub_lo, const std::vector<std::uint32_t>& sub_hi) {
  const auto& k = simd::kernels();
  const std::size_t total = lo.size * hi.size;
  // shifted[sl][T] = g(T.lo - sl, T.hi): each (sl, sh) pair then reads whole
  // contiguous rows.
  Table shifted(lo.size * total);
  for (std::size_t sl = 0; sl < lo.size; ++sl)
    for (std::size_t th = 0; th < hi.size; ++th)
      for (std::size_t tl = 0; tl < lo.size; ++tl)
        shifted[sl * total + th * lo.size + tl] = g[th * lo.size + sub_lo[tl * lo.size + sl]];

  Table f(total, 0xFF);
  for (std::size_t sh = 0; sh < hi.size; ++sh)
    for (std::size_t sl = 0; sl < lo.size; ++sl) {
      const auto c = r[sh * lo.size + sl];
      const auto* base = shifted.data() + sl * total;
      for (std::size_t th = 0; th < hi.size; ++th)
        k.min_add_u8(f.data() + th * lo.size, base + sub_hi[th * hi.size + sh] * lo.size, c, lo.size);
    }
  return f;
}

std::shared_ptr<const Table> build_table(const LatticeShape& shape, PrimeField field) {
  const int d = shape.order();
  const int n = static_cast<int>(shape.volume());
  const auto p = static_cast<std::size_t>(field.p());
  const std::size_t total = ipow(p, n);

  std::vector<Table> ranks(static_cast<std::size_t>(d), Table(total));
  std::vector<std::uint8_t> entries(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto x = idx;
    for (auto& e : entries) {
      e = static_cast<std::uint8_t>(x % p);
      x /= p;
    }
    const FieldTensor t(shape, field, entries);
    for (int j = 0; j < d; ++j) ranks[static_cast<std::size_t>(j)][idx] = static_cast<std::uint8_t>(flattening_rank(t, j));
  }

  const Digits lo{field.p(), (n + 1) / 2, ipow(p, (n + 1) / 2)};
  const Digits hi{field.p(), n / 2, ipow(p, n / 2)};
  const auto sub_lo = difference_table(lo);
  const auto sub_hi = difference_table(hi);
  Table f = std::move(ranks.back());
  for (int j = d - 2; j >= 0; --j) f = convolve(ranks[static_cast<std::size_t>(j)], f, lo, hi, sub_lo, sub_hi);
  return std::make_shared<const Table>(std::move(f));
}

std::mutex cache_mutex;
std::map<std::pair<std::vector<int>, int>, std::shared_ptr<const Table>> cache;

}  // namespace

SliceRankResult slice_rank_oracle(const FieldTensor& t, std::uint64_t budget) {
  const auto& shape = t.shape();
  const int d = shape.order();
  if (d <= 2) {
    const int rank = flattening_rank(t, 0);
    return {rank, d == 2 ? SliceRankMethod::matrix : SliceRankMethod::oracle, std::nullopt};
  }
  const auto n = static_cast<long double>(shape.volume());
  const auto work = static_cast<long double>(d - 1) * std::pow(static_cast<long double>(t.field().p()), 2 * n);
  if (work > static_cast<long double>(budget))
    throw CapacityError("slice-rank oracle needs about " + std::to_string(static_cast<double>(work)) +
                        " operations, budget is " + std::to_string(budget));

  const auto key = std::make_pair(shape.dims(), t.field().p());
  std::shared_ptr<const Table> table;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) table = it->second;
  }
  if (!table) {
    table = build_table(shape, t.field());
    std::lock_guard lock(cache_mutex);
    cache.emplace(key, table);
  }

  std::size_t idx = 0, scale = 1;
  for (auto e : t.entries()) {
    idx += e * scale;
    scale *= static_cast<std::size_t>(t.field().p());
  }
  return {(*table)[idx], SliceRankMethod::oracle, std::nullopt};
}

}  // namespace covering
