// Acceptance run: one PASS/FAIL line per criterion. Counts, seeds and time
// limits are fixed here; nothing is read from the environment.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "covering/errors.hpp"
#include "covering/harness.hpp"
#include "covering/restrictions.hpp"
#include "covering/tensor.hpp"

using namespace covering;
using namespace covering::harness;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = t < limit_seconds;
  const bool pass = o.pass && in_time;
  failures += !pass;
  std::printf("criterion %2d %-28s %s  %s; %.2f s (limit %.0f s)%s\n", n, title, pass ? "PASS" : "FAIL",
              o.detail.c_str(), t, limit_seconds, in_time ? "" : ", over time");
  std::fflush(stdout);
}

GeneratorSpec frame(GeneratorKind kind, LatticeShape shape, std::size_t count, std::uint64_t seed, double density = 0.3) {
  GeneratorSpec g;
  g.kind = kind;
  g.shape = std::move(shape);
  g.count = count;
  g.seed = seed;
  g.density = density;
  return g;
}

GeneratorSpec custom(const LatticeShape& shape, std::vector<LatticeSubset> instances) {
  GeneratorSpec g;
  g.kind = GeneratorKind::custom;
  g.shape = shape;
  g.custom = std::move(instances);
  return g;
}

// Uniform non-empty family over the 2^d patterns, optionally without [d].
PatternFamily sample_family(int d, std::mt19937_64& rng, bool allow_full = true) {
  const unsigned patterns = 1u << d;
  for (;;) {
    std::vector<Pattern> ps;
    for (unsigned b = 0; b < patterns; ++b)
      if (rng() & 1u) ps.emplace_back(static_cast<AxisMask>(b));
    if (ps.empty()) continue;
    PatternFamily m(d, ps);
    if (allow_full || !m.contains(Pattern::full(d))) return m;
  }
}

// Every non-empty family over [d].
std::vector<PatternFamily> all_families(int d) {
  std::vector<PatternFamily> out;
  const unsigned patterns = 1u << d;
  for (unsigned sel = 1; sel < (1u << patterns); ++sel) {
    std::vector<Pattern> ps;
    for (unsigned b = 0; b < patterns; ++b)
      if (sel >> b & 1u) ps.emplace_back(static_cast<AxisMask>(b));
    out.emplace_back(d, ps);
  }
  return out;
}

struct Tally {
  std::uint64_t checked = 0, skipped = 0, violations = 0;
  std::string first;

  void add(const VerificationReport& r) {
    checked += r.instances_checked;
    skipped += r.skipped;
    violations += r.violations.size();
    if (first.empty() && !r.violations.empty()) {
      const auto& v = r.violations.front();
      first = r.suite + ": " + v.relation + " on " + v.points + " (" + v.observed + ")";
    }
  }
  std::string text(const char* unit = "checks") const {
    std::string s = std::to_string(checked) + " " + unit + ", " + std::to_string(violations) + " violations";
    if (skipped) s += ", " + std::to_string(skipped) + " skipped";
    if (!first.empty()) s += "; first: " + first;
    return s;
  }
  bool clean() const { return violations == 0 && skipped == 0; }
};

// Random instances accepted by `keep`, until `want` are collected.
std::vector<LatticeSubset> collect(const LatticeShape& shape, double density, std::uint64_t seed, std::size_t want,
                                   const std::function<bool(const LatticeSubset&)>& keep) {
  std::vector<LatticeSubset> out;
  for (std::uint64_t round = 0; out.size() < want && round < 200; ++round)
    for (auto& a : generate(frame(GeneratorKind::random, shape, 100, seed + round, density)))
      if (out.size() < want && keep(a)) out.push_back(std::move(a));
  return out;
}

// Plain row reduction mod p, written independently of the library.
int reference_rank(std::vector<std::vector<int>> a, int p) {
  const int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0;
  auto inv = [p](int x) {
    int r = 1;
    for (int e = p - 2; e > 0; --e) r = r * x % p;
    return r;
  };
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const int s = inv(a[rank][c]);
    for (auto& v : a[rank]) v = v * s % p;
    for (int r = 0; r < rows; ++r)
      if (r != rank && a[r][c])
        for (int k = 0, f = a[r][c]; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
    ++rank;
  }
  return rank;
}

}  // namespace

int main() {
  criterion(1, "closed form on B-subspaces", 60, [] {
    Tally t;
    std::mt19937_64 rng(101);
    for (const auto& f : all_families(1)) t.add(verify_suite("closed-form", frame(GeneratorKind::random, {2}, 1, 1), {f}));
    for (const auto& f : all_families(2))
      t.add(verify_suite("closed-form", frame(GeneratorKind::random, {2, 3}, 1, 1), {f}));
    std::vector<PatternFamily> fams;
    for (int i = 0; i < 200; ++i) fams.push_back(sample_family(3, rng));
    const auto r = verify_suite("closed-form", frame(GeneratorKind::random, {2, 3, 2}, 1, 1), fams);
    t.add(r);
    // Each family is compared on all 2^d patterns B.
    const std::uint64_t comparisons = 3 * 2 + 15 * 4 + 200 * 8;
    return Outcome{t.clean() && r.violations.empty(),
                   std::to_string(comparisons) + " (M, B) comparisons over 218 families, " + t.text("boxes")};
  });

  criterion(2, "diagonal additivity", 120, [] {
    Tally t;
    std::mt19937_64 rng(202);
    for (const auto& shape : {LatticeShape{4, 4}, LatticeShape{3, 3, 3}}) {
      const int d = shape.order();
      std::vector<PatternFamily> fams{slice_family(d), point_family(d), line_family(d), sample_family(d, rng, false),
                                      sample_family(d, rng, false)};
      t.add(verify_suite("diagonal-additivity", frame(GeneratorKind::random, shape, 500, 2000 + d, 0.5), fams));
    }
    return Outcome{t.clean() && t.checked == 1000, t.text("pairs, 5 families each")};
  });

  criterion(3, "meet bound", 120, [] {
    Tally t;
    std::mt19937_64 rng(303);
    for (int i = 0; i < 20; ++i) {
      t.add(verify_suite("meet-bound", frame(GeneratorKind::exhaustive, {2, 2}, 0, 1),
                         {sample_family(2, rng), sample_family(2, rng)}));
      t.add(verify_suite("meet-bound", frame(GeneratorKind::random, {3, 3, 3}, 500, 3000 + i),
                         {sample_family(3, rng), sample_family(3, rng)}));
    }
    return Outcome{t.clean() && t.checked == 20 * (16 + 500), t.text("instance-pair runs")};
  });

  criterion(4, "decomposition counts", 30, [] {
    const std::uint64_t want[] = {2, 8, 48};
    std::string detail = "counts";
    bool ok = true;
    for (int l = 1; l <= 3; ++l) {
      std::vector<Point> pts;
      for (int i = 1; i <= l; ++i) pts.push_back(Point{i, i});
      const auto e = enumerate_min_decompositions(LatticeSubset({3, 3}, pts), slice_family(2), 0);
      const auto bound = std::pow(2.0L * l * l, l);
      ok = ok && e.count == want[l - 1] && !e.count_saturated && static_cast<long double>(e.count) <= bound &&
           e.within_bound;
      detail += " l=" + std::to_string(l) + ":" + std::to_string(e.count) + "<=" + std::to_string(static_cast<long>(bound));
    }
    Tally t;
    t.add(verify_suite("decomposition-count", frame(GeneratorKind::diagonal, {3, 3}, 3, 1), {}));
    return Outcome{ok && t.clean() && t.checked == 3, detail + "; suite " + t.text("instances")};
  });

  criterion(5, "greedy independence", 120, [] {
    Tally t;
    std::mt19937_64 rng(505);
    for (const auto& shape : {LatticeShape{5, 5}, LatticeShape{5, 5, 5}}) {
      const int d = shape.order();
      t.add(verify_suite("greedy-independence", frame(GeneratorKind::random, shape, 500, 5000 + d, 0.25),
                         {slice_family(d), sample_family(d, rng), sample_family(d, rng)}));
    }
    return Outcome{t.clean() && t.checked == 1000, t.text("instances, 3 families each")};
  });

  criterion(6, "constructive restrictions", 600, [] {
    SuiteOptions opts;
    opts.solver.max_points = 128;
    Tally lin, off, same;

    // Linear: Mc(A) >= |M| for the slice family, so l >= 1.
    for (const auto& shape : {LatticeShape{5, 5}, LatticeShape{4, 4, 4}}) {
      const int d = shape.order();
      const auto m = slice_family(d);
      auto xs = collect(shape, 0.3, 6000 + d, 250, [&](const LatticeSubset& a) {
        return covering_at_least(a, m, static_cast<std::int64_t>(m.size()), opts.solver);
      });
      lin.add(verify_suite("linear-restriction", custom(shape, std::move(xs)), {m, point_family(d)}, opts));
    }

    // Off-diagonal: Mc(A \ E) >= d^d |M|.
    {
      const auto m = slice_family(2);
      auto xs = collect({10, 10}, 0.35, 6100, 250, [&](const LatticeSubset& a) {
        return covering_at_least(without_repeated_coordinates(a), m, 4 * 2, opts.solver);
      });
      off.add(verify_suite("offdiag-restriction", custom({10, 10}, std::move(xs)), {m, point_family(2)}, opts));
    }
    {
      const auto m = point_family(3);
      auto xs = collect({5, 5, 5}, 0.45, 6200, 250, [&](const LatticeSubset& a) {
        return a.size() <= 128 && covering_at_least(without_repeated_coordinates(a), m, 27, opts.solver);
      });
      off.add(verify_suite("offdiag-restriction", custom({5, 5, 5}, std::move(xs)), {m}, opts));
    }

    // Same cover: 150 random sets and 50 with a full line, which forces descent.
    std::mt19937_64 rng(6300);
    for (const auto& shape : {LatticeShape{4, 4}, LatticeShape{3, 3, 3}})
      same.add(verify_suite("same-cover", frame(GeneratorKind::random, shape, 75, 6300 + shape.order(), 0.35),
                            {slice_family(shape.order()), line_family(shape.order())}, opts));
    for (const auto& shape : {LatticeShape{6, 6}, LatticeShape{4, 4, 4}}) {
      std::vector<LatticeSubset> xs;
      for (auto& a : generate(frame(GeneratorKind::random, shape, 25, 6400 + shape.order(), 0.15))) {
        std::vector<Point> pts(a.begin(), a.end());
        for (int i = 1; i <= shape.extent(0); ++i) {
          Point p = point_at(shape, 0);
          p[0] = i;
          pts.push_back(p);
        }
        xs.emplace_back(shape, std::move(pts));
      }
      same.add(verify_suite("same-cover", custom(shape, std::move(xs)), {slice_family(shape.order())}, opts));
    }

    const bool ok = lin.clean() && off.clean() && same.clean() && lin.checked == 500 && off.checked == 500 &&
                    same.checked == 200;
    return Outcome{ok, "linear " + lin.text("instances") + "; offdiag " + off.text("instances") + "; same-cover " +
                           same.text("instances")};
  });

  criterion(7, "derandomized coloring", 60, [] {
    Tally t;
    t.add(verify_suite("coloring", frame(GeneratorKind::random, {6, 6}, 250, 7002, 0.4), {}));
    t.add(verify_suite("coloring", frame(GeneratorKind::random, {4, 4, 4}, 250, 7003, 0.4), {}));
    return Outcome{t.clean() && t.checked == 500, t.text("instances")};
  });

  criterion(8, "slice rank of antichain tensors", 300, [] {
    Tally f2, f3;
    SuiteOptions o2, o3;
    o2.p = 2;
    o3.p = 3;
    f2.add(verify_suite("sawin-tao", frame(GeneratorKind::exhaustive, {2, 2, 2}, 0, 1), {}, o2));
    f3.add(verify_suite("sawin-tao", frame(GeneratorKind::antichain, {2, 2, 2}, 200, 8003, 0.5), {}, o3));
    // All 256 F_2 tensors are scanned; 20 supports are antichains.
    return Outcome{f2.clean() && f3.clean() && f2.checked == 20 && f3.checked == 200,
                   "F_2 exhaustive " + f2.text("tensors") + "; F_3 random " + f3.text("tensors")};
  });

  criterion(9, "slice rank oracle sanity", 60, [] {
    std::mt19937_64 rng(909);
    int mismatches = 0;
    const int primes[] = {2, 3, 5};
    for (int i = 0; i < 1000; ++i) {
      const int p = primes[i % 3];
      const int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
      FieldTensor t({rows, cols}, PrimeField(p));
      std::vector<std::vector<int>> a(static_cast<std::size_t>(rows), std::vector<int>(static_cast<std::size_t>(cols)));
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          a[r][c] = static_cast<int>(rng() % static_cast<unsigned>(p));
          t.set(Point{r + 1, c + 1}, static_cast<std::uint8_t>(a[r][c]));
        }
      mismatches += slice_rank_oracle(t).value != reference_rank(a, p);
    }
    FieldTensor ones({2, 2, 2}, PrimeField(2));
    for (std::int64_t i = 0; i < 8; ++i) ones.set(point_at(ones.shape(), i), 1);
    const auto v = slice_rank_oracle(ones).value;
    return Outcome{mismatches == 0 && v == 1,
                   "1000 matrices, " + std::to_string(mismatches) + " mismatches; all-ones 2x2x2 value " +
                       std::to_string(v)};
  });

  criterion(10, "60 points in [10]^3 (target)", 10, [] {
    // Worst of 20 seeded instances; any single one must stay well inside the limit.
    const LatticeShape s{10, 10, 10};
    std::vector<std::int64_t> idx(1000);
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(1010);
    bool ok = true;
    double worst = 0;
    std::uint64_t nodes = 0;
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(idx.begin(), idx.end(), rng);
      std::vector<Point> pts;
      for (int i = 0; i < 60; ++i) pts.push_back(point_at(s, idx[static_cast<std::size_t>(i)]));
      const LatticeSubset a(s, pts);
      const auto start = std::chrono::steady_clock::now();
      const auto r = covering_number_exact(a, slice_family(3));
      worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      nodes = std::max<std::uint64_t>(nodes, r.stats.nodes);
      ok = ok && r.witness.covers(a) && static_cast<std::int64_t>(r.witness.length()) == r.value;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "20 instances, worst %.3f s and %llu nodes", worst,
                  static_cast<unsigned long long>(nodes));
    return Outcome{ok, buf};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures ? 1 : 0;
}
