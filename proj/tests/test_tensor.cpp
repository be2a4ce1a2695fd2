#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "brute.hpp"
#include "covering/errors.hpp"
#include "covering/tensor.hpp"

using namespace covering;

namespace {

using Entries = std::vector<std::uint8_t>;

FieldTensor tensor(const LatticeShape& s, int p, std::initializer_list<Point> ones) {
  FieldTensor t(s, PrimeField(p));
  for (const auto& x : ones) t.set(x, 1);
  return t;
}

FieldTensor from_index(const LatticeShape& s, int p, std::uint64_t idx) {
  Entries e(static_cast<std::size_t>(s.volume()));
  for (auto& v : e) {
    v = static_cast<std::uint8_t>(idx % static_cast<std::uint64_t>(p));
    idx /= static_cast<std::uint64_t>(p);
  }
  return FieldTensor(s, PrimeField(p), e);
}

std::vector<Entries> vectors(int n, int p) {
  std::vector<Entries> out;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(p);
  for (std::uint64_t k = 0; k < total; ++k) {
    Entries v(static_cast<std::size_t>(n));
    auto x = k;
    for (auto& e : v) {
      e = static_cast<std::uint8_t>(x % static_cast<std::uint64_t>(p));
      x /= static_cast<std::uint64_t>(p);
    }
    out.push_back(v);
  }
  return out;
}

// Slice rank by breadth-first search over sums of terms a(x_j) b(x_rest).
std::map<Entries, int> slice_rank_bfs(const LatticeShape& s, int p) {
  const int d = s.order();
  const auto vol = s.volume();
  std::set<Entries> terms;
  for (int j = 0; j < d; ++j) {
    const int nj = s.extent(j);
    const auto rest = static_cast<int>(vol / nj);
    for (const auto& a : vectors(nj, p))
      for (const auto& b : vectors(rest, p)) {
        Entries t(static_cast<std::size_t>(vol));
        for (std::int64_t i = 0; i < vol; ++i) {
          const auto x = point_at(s, i);
          int r = 0;
          for (int k = 0; k < d; ++k)
            if (k != j) r = r * s.extent(k) + (x[k] - 1);
          t[static_cast<std::size_t>(i)] =
              static_cast<std::uint8_t>(a[static_cast<std::size_t>(x[j] - 1)] * b[static_cast<std::size_t>(r)] % p);
        }
        terms.insert(t);
      }
  }
  std::map<Entries, int> dist;
  std::vector<Entries> frontier{Entries(static_cast<std::size_t>(vol), 0)};
  dist[frontier[0]] = 0;
  for (int level = 1; !frontier.empty(); ++level) {
    std::vector<Entries> next;
    for (const auto& f : frontier)
      for (const auto& t : terms) {
        Entries g(f.size());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<std::uint8_t>((f[i] + t[i]) % p);
        if (dist.emplace(g, level).second) next.push_back(g);
      }
    frontier = std::move(next);
  }
  return dist;
}

// Rank as log_p of the size of the row span.
int span_rank(const Entries& m, int rows, int cols, int p) {
  std::set<Entries> span;
  for (const auto& coeffs : vectors(rows, p)) {
    Entries v(static_cast<std::size_t>(cols), 0);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        v[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(
            (v[static_cast<std::size_t>(c)] + coeffs[static_cast<std::size_t>(r)] * m[static_cast<std::size_t>(r * cols + c)]) % p);
    span.insert(v);
  }
  int rank = 0;
  for (std::size_t size = 1; size < span.size(); size *= static_cast<std::size_t>(p)) ++rank;
  return rank;
}

FieldTensor permute(const FieldTensor& t, const std::vector<int>& perm) {
  const auto& s = t.shape();
  std::vector<int> dims;
  for (int k : perm) dims.push_back(s.extent(k));
  const LatticeShape ps{std::span<const int>(dims)};
  FieldTensor out(ps, t.field());
  for (std::int64_t i = 0; i < s.volume(); ++i) {
    const auto x = point_at(s, i);
    std::vector<int> y;
    for (int k : perm) y.push_back(x[k]);
    out.set(Point(std::span<const int>(y)), t.at(x));
  }
  return out;
}

}  // namespace

TEST_CASE("prime field") {
  const PrimeField f(5);
  CHECK(f.add(3, 4) == 2);
  CHECK(f.sub(1, 3) == 3);
  CHECK(f.mul(3, 4) == 2);
  CHECK(f.neg(2) == 3);
  for (std::uint8_t a = 1; a < 5; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK_THROWS_AS(f.inv(0), RangeError);
  CHECK_THROWS_AS(PrimeField(4), RangeError);
  CHECK_THROWS_AS(PrimeField(11), RangeError);
}

TEST_CASE("tensor construction") {
  const LatticeShape s{2, 2};
  CHECK_THROWS_AS(FieldTensor(s, PrimeField(3), Entries{0, 1, 2}), RangeError);
  CHECK_THROWS_AS(FieldTensor(s, PrimeField(3), Entries{0, 1, 2, 3}), RangeError);
  FieldTensor t(s, PrimeField(3), Entries{0, 1, 2, 0});
  CHECK(t.at(Point{1, 2}) == 1);
  CHECK(t.at(Point{2, 1}) == 2);
  CHECK_THROWS_AS(t.set(Point{3, 1}, 1), RangeError);
}

TEST_CASE("support") {
  const LatticeShape s{2, 2, 2};
  CHECK(support(FieldTensor(s, PrimeField(2))).empty());
  CHECK(support(FieldTensor(LatticeShape{2, 2}, PrimeField(2), Entries{1, 1, 1, 1})) == full_box(LatticeShape{2, 2}));
  const auto t = tensor(s, 2, {{1, 2, 2}, {2, 1, 2}, {2, 2, 1}});
  CHECK(support(t) == LatticeSubset(s, {{1, 2, 2}, {2, 1, 2}, {2, 2, 1}}));
  CHECK(indicator_tensor(support(t), PrimeField(2)) == t);
}

TEST_CASE("flattening rank") {
  CHECK(flattening_rank(tensor(LatticeShape{2, 2}, 2, {{1, 1}, {2, 2}}), 0) == 2);
  const LatticeShape s{2, 3, 2};
  const FieldTensor ones(s, PrimeField(3), Entries(12, 1));
  for (int j = 0; j < 3; ++j) CHECK(flattening_rank(ones, j) == 1);
  CHECK(flattening_rank(tensor(LatticeShape{2, 2, 2}, 2, {{1, 1, 1}, {2, 2, 2}}), 0) == 2);
  CHECK_THROWS_AS(flattening_rank(ones, 3), RangeError);
  // Unfolding along the middle axis of e_(1,2,1): a single non-zero column.
  const auto mid = tensor(s, 2, {{1, 2, 1}, {2, 2, 2}});
  CHECK(flattening_rank(mid, 1) == 1);
  CHECK(flattening_rank(mid, 0) == 2);
}

TEST_CASE("matrix rank agrees with span enumeration") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int p = std::vector<int>{2, 3, 5, 7}[static_cast<std::size_t>(trial % 4)];
    const int rows = 1 + static_cast<int>(rng() % (p == 2 ? 5 : 3));
    const int cols = 1 + static_cast<int>(rng() % 6);
    Entries m(static_cast<std::size_t>(rows * cols));
    for (auto& v : m) v = static_cast<std::uint8_t>(rng() % static_cast<std::uint64_t>(p));
    CHECK(matrix_rank(m, rows, cols, PrimeField(p)) == span_rank(m, rows, cols, p));
  }
  CHECK_THROWS_AS(matrix_rank(Entries{1, 0, 1}, 2, 2, PrimeField(2)), PreconditionError);
}

TEST_CASE("oracle examples") {
  const LatticeShape s{2, 2, 2};
  const FieldTensor ones(s, PrimeField(2), Entries(8, 1));
  CHECK(slice_rank_oracle(ones).value == 1);
  CHECK(slice_rank_oracle(ones).method == SliceRankMethod::oracle);
  CHECK(slice_rank_oracle(tensor(s, 2, {{1, 1, 1}, {2, 2, 2}})).value == 2);
  CHECK(slice_rank_oracle(FieldTensor(s, PrimeField(2))).value == 0);
  const auto m = slice_rank_oracle(tensor(LatticeShape{3, 3}, 3, {{1, 1}, {2, 2}}));
  CHECK(m.value == 2);
  CHECK(m.method == SliceRankMethod::matrix);
  CHECK_THROWS_AS(slice_rank_oracle(FieldTensor(LatticeShape{3, 3, 3}, PrimeField(2))), CapacityError);
}

TEST_CASE("oracle matches breadth-first term search on 2x2x2") {
  const LatticeShape s{2, 2, 2};
  for (int p : {2, 3}) {
    const auto dist = slice_rank_bfs(s, p);
    std::uint64_t total = 1;
    for (int i = 0; i < 8; ++i) total *= static_cast<std::uint64_t>(p);
    REQUIRE(dist.size() == total);
    for (const auto& [entries, rank] : dist)
      CHECK(slice_rank_oracle(FieldTensor(s, PrimeField(p), entries)).value == rank);
  }
}

TEST_CASE("oracle matches breadth-first term search on 1x2x3 and 2x2x1x2") {
  for (const auto& s : {LatticeShape{1, 2, 3}, LatticeShape{2, 2, 1, 2}}) {
    const auto dist = slice_rank_bfs(s, 2);
    for (const auto& [entries, rank] : dist)
      CHECK(slice_rank_oracle(FieldTensor(s, PrimeField(2), entries)).value == rank);
  }
}

TEST_CASE("oracle invariants") {
  const LatticeShape s{2, 2, 2};
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = trial % 2 ? 3 : 2;
    const auto t = from_index(s, p, rng() % (p == 2 ? 256 : 6561));
    const auto sr = slice_rank_oracle(t).value;
    for (int j = 0; j < 3; ++j) CHECK(sr <= flattening_rank(t, j));
    CHECK(sr <= static_cast<std::int64_t>(support(t).size()));
    CHECK(slice_rank_oracle(permute(t, {2, 0, 1})).value == sr);
    CHECK(slice_rank_oracle(permute(t, {1, 0, 2})).value == sr);
    if (p == 3) {
      Entries scaled(t.entries().begin(), t.entries().end());
      for (auto& v : scaled) v = static_cast<std::uint8_t>(v * 2 % 3);
      CHECK(slice_rank_oracle(FieldTensor(s, PrimeField(3), scaled)).value == sr);
    }
  }
  const LatticeShape r{1, 2, 3};
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    const auto t = from_index(r, 2, idx);
    CHECK(slice_rank_oracle(permute(t, {2, 1, 0})).value == slice_rank_oracle(t).value);
  }
}

TEST_CASE("antichain bridge") {
  const LatticeShape s{2, 2, 2};
  const auto t = tensor(s, 2, {{1, 2, 2}, {2, 1, 2}, {2, 2, 1}});
  const auto b = slice_rank_antichain(t);
  CHECK(b.value == 2);
  CHECK(b.method == SliceRankMethod::antichain_bridge);
  REQUIRE(b.witness);
  CHECK(b.witness->length() == 2);
  CHECK(slice_rank_oracle(t).value == 2);

  for (int k = 1; k <= 5; ++k) {
    const LatticeShape sq{k, k};
    FieldTensor perm(sq, PrimeField(3));
    for (int i = 1; i <= k; ++i) perm.set(Point{i, k + 1 - i}, 1);
    CHECK(slice_rank_antichain(perm).value == k);
    CHECK(slice_rank_oracle(perm).value == k);
  }

  try {
    slice_rank_antichain(FieldTensor(s, PrimeField(2), Entries(8, 1)));
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("(1,1,1)") != std::string::npos);
  }
  CHECK_THROWS_AS(slice_rank_antichain(tensor(LatticeShape{3}, 2, {{1}})), PreconditionError);
}

TEST_CASE("bridge equals the oracle on every antichain-supported 2x2x2 tensor over F_2") {
  const LatticeShape s{2, 2, 2};
  int qualifying = 0;
  for (std::uint64_t idx = 0; idx < 256; ++idx) {
    const auto t = from_index(s, 2, idx);
    if (!is_antichain(support(t))) continue;
    ++qualifying;
    CHECK(slice_rank_antichain(t).value == slice_rank_oracle(t).value);
  }
  // Antichains of the Boolean cube of rank 3.
  CHECK(qualifying == 20);
}

TEST_CASE("restricting and masking tensors") {
  const LatticeShape s{3, 3};
  FieldTensor t(s, PrimeField(5), Entries{1, 2, 3, 4, 0, 1, 2, 3, 4});
  const auto r = restrict_tensor(t, {{1, 3}, {2, 3}});
  CHECK(r.shape() == LatticeShape{2, 2});
  CHECK(r.entries()[0] == 2);
  CHECK(r.entries()[3] == 4);
  const auto m = mask_tensor(t, {{1, 3}, {2, 3}});
  CHECK(m.at(Point{1, 2}) == 2);
  CHECK(m.at(Point{2, 2}) == 0);
  CHECK(m.at(Point{1, 1}) == 0);
  CHECK(slice_rank_oracle(m).value == slice_rank_oracle(r).value);
  CHECK_THROWS_AS(restrict_tensor(t, {{}, {1}}), PreconditionError);
}

TEST_CASE("restriction statements for antichain tensors") {
  const LatticeShape s{4, 4};
  FieldTensor perm(s, PrimeField(2));
  for (int i = 1; i <= 4; ++i) perm.set(Point{i, 5 - i}, 1);
  const auto lin = corollary_pipeline(perm, CorollaryMode::linear, 2);
  CHECK(lin.restricted_slice_rank >= 2);
  for (const auto& x : lin.certificate.restriction.axis_sets) CHECK(x.size() <= 2);
  CHECK(lin.certificate.verified());

  const auto same = corollary_pipeline(perm, CorollaryMode::same_cover, 4);
  CHECK(same.restricted_slice_rank == 4);

  const auto zero = corollary_pipeline(perm, CorollaryMode::linear, 0);
  CHECK(zero.restricted_slice_rank == 0);

  CHECK_THROWS_AS(corollary_pipeline(perm, CorollaryMode::linear, 3), HypothesisNotMet);
  CHECK_THROWS_AS(corollary_pipeline(FieldTensor(s, PrimeField(2), Entries(16, 1)), CorollaryMode::linear, 1),
                  PreconditionError);

  std::vector<Point> pts;
  for (int i = 1; i <= 32; ++i) pts.push_back(Point{i, 33 - i});
  const auto wide = indicator_tensor(LatticeSubset(LatticeShape{32, 32}, pts), PrimeField(3));
  const auto off = corollary_pipeline(wide, CorollaryMode::offdiag, 2);
  CHECK(off.restricted_slice_rank >= 2);
  CHECK(off.certificate.sizes_ok);
}
