#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "brute.hpp"
#include "covering/errors.hpp"
#include "covering/harness.hpp"

using namespace covering;
using namespace covering::harness;

namespace {

GeneratorSpec spec(GeneratorKind kind, LatticeShape shape, std::size_t count = 100, std::uint64_t seed = 1) {
  GeneratorSpec g;
  g.kind = kind;
  g.shape = std::move(shape);
  g.count = count;
  g.seed = seed;
  return g;
}

std::string dump(const VerificationReport& r) {
  std::string s = r.suite + "|" + r.frame + "|" + std::to_string(r.instances_checked) + "|" + std::to_string(r.skipped);
  for (const auto& v : r.violations) s += "|" + v.points + ":" + v.relation + ":" + v.observed;
  return s;
}

// Smallest I/Mc over every non-empty subset of the box.
Rational brute_ratio(const LatticeShape& s, const PatternFamily& m) {
  Rational best{1, 0};
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << s.volume()); ++bits) {
    const auto a = brute::from_bits(s, bits);
    const std::int64_t i = brute::independence(a, m), k = brute::cover(a, m);
    if (best.den == 0 || i * best.den < best.num * k) best = {i / std::gcd(i, k), k / std::gcd(i, k)};
  }
  return best;
}

bool brute_antichain(const LatticeSubset& a) {
  for (const auto& p : a)
    for (const auto& q : a) {
      if (p == q) continue;
      bool le = true;
      for (int j = 0; j < p.order(); ++j) le = le && p[j] <= q[j];
      if (le) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("generators") {
  const auto all = generate(spec(GeneratorKind::exhaustive, LatticeShape{2, 2}));
  CHECK(all.size() == 16);
  std::set<std::vector<std::int64_t>> seen;
  for (const auto& a : all) {
    std::vector<std::int64_t> key;
    for (const auto& p : a) key.push_back(linear_index(a.shape(), p));
    seen.insert(key);
  }
  CHECK(seen.size() == 16);

  CHECK_THROWS_AS(generate(spec(GeneratorKind::exhaustive, LatticeShape{3, 3, 3})), CapacityError);
  CHECK_THROWS_AS(generate(spec(GeneratorKind::exhaustive, LatticeShape{2, 2}), 8), CapacityError);
  CHECK_THROWS_AS(generate(spec(GeneratorKind::random, LatticeShape{3, 3}, 50), 10), CapacityError);

  const auto r1 = generate(spec(GeneratorKind::random, LatticeShape{4, 4}, 30, 7));
  const auto r2 = generate(spec(GeneratorKind::random, LatticeShape{4, 4}, 30, 7));
  REQUIRE(r1.size() == 30);
  for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1[i] == r2[i]);

  for (const auto& a : generate(spec(GeneratorKind::antichain, LatticeShape{3, 3, 3}, 50, 3))) CHECK(brute_antichain(a));

  const auto diag = generate(spec(GeneratorKind::diagonal, LatticeShape{3, 5}, 10));
  REQUIRE(diag.size() == 3);
  for (std::size_t l = 1; l <= 3; ++l) CHECK(diag[l - 1] == brute::diagonal(LatticeShape{3, 5}, static_cast<int>(l)));

  CHECK(generator_kind("antichain") == GeneratorKind::antichain);
  CHECK_THROWS_AS(generator_kind("nope"), PreconditionError);
}

TEST_CASE("decomposition count on the l = 2 diagonal") {
  const auto r = verify_suite("decomposition-count", spec(GeneratorKind::diagonal, LatticeShape{2, 2}, 2), {});
  CHECK(r.instances_checked == 2);
  CHECK(r.violations.empty());
  CHECK(brute::count_tuples(brute::diagonal(LatticeShape{2, 2}, 2), slice_family(2), 2) == 8);
}

TEST_CASE("additivity of two diagonal points") {
  const LatticeShape s{2, 2};
  auto g = spec(GeneratorKind::custom, s);
  g.custom = {brute::diagonal(s, 2)};
  const auto r = verify_suite("diagonal-additivity", g, {});
  CHECK(r.instances_checked == 1);
  CHECK(r.violations.empty());
  CHECK(brute::cover(brute::diagonal(s, 2), slice_family(2)) == 2);

  // A family holding [d] is outside the relation's scope.
  const auto skipped = verify_suite("diagonal-additivity", g, {full_family(2)});
  CHECK(skipped.instances_checked == 0);
}

TEST_CASE("sawin-tao over every 2x2x2 tensor on F_2") {
  const LatticeShape s{2, 2, 2};
  const auto r = verify_suite("sawin-tao", spec(GeneratorKind::exhaustive, s), {});
  std::uint64_t antichains = 0;
  for (std::uint64_t bits = 0; bits < 256; ++bits) antichains += brute_antichain(brute::from_bits(s, bits));
  CHECK(antichains == 20);
  CHECK(r.instances_checked == antichains);
  CHECK(r.violations.empty());
}

TEST_CASE("every suite on small random frames") {
  std::mt19937_64 rng(99);
  for (const auto& shape : {LatticeShape{3, 3}, LatticeShape{2, 3, 2}}) {
    const int d = shape.order();
    const std::vector<PatternFamily> fams{slice_family(d), brute::random_family(d, rng), brute::random_family(d, rng)};
    auto g = spec(GeneratorKind::random, shape, 25, 5);
    g.density = 0.4;
    SuiteOptions opts;
    opts.p = 3;
    for (const auto& name : suite_names()) {
      INFO(name);
      const auto r = verify_suite(name, g, fams, opts);
      CHECK(r.violations.empty());
      CHECK(r.suite == name);
      CHECK(r.seed == 5);
      CHECK(dump(r) == dump(verify_suite(name, g, fams, opts)));
    }
  }
  CHECK_THROWS_AS(verify_suite("nope", spec(GeneratorKind::random, LatticeShape{2, 2}), {}), PreconditionError);
  CHECK_THROWS_AS(verify_suite("coloring", spec(GeneratorKind::random, LatticeShape{2, 2}), {slice_family(3)}),
                  PreconditionError);
}

TEST_CASE("solver caps give partial reports") {
  // The full B-subspace of a 75-point box is beyond the default exact cap.
  const auto r = verify_suite("closed-form", spec(GeneratorKind::random, LatticeShape{5, 5, 3}), {slice_family(3)});
  CHECK(r.partial);
  CHECK(r.skipped == 1);
  CHECK(r.violations.empty());
}

TEST_CASE("empirical constant") {
  const LatticeShape s{2, 2};
  const auto full = search_constant(slice_family(2), spec(GeneratorKind::exhaustive, s));
  CHECK(full.examined == 15);
  CHECK(full.exhaustive);
  REQUIRE(full.found);
  CHECK(full.c_min == brute_ratio(s, slice_family(2)));

  const auto diag = search_constant(slice_family(3), spec(GeneratorKind::diagonal, LatticeShape{4, 4, 4}, 4));
  CHECK(diag.c_min == Rational{1, 1});
  CHECK_FALSE(diag.exhaustive);

  const auto whole = search_constant(full_family(3), spec(GeneratorKind::random, LatticeShape{3, 3, 3}, 20));
  CHECK(whole.c_min == Rational{1, 1});

  const auto lines = search_constant(line_family(2), spec(GeneratorKind::exhaustive, LatticeShape{2, 3}));
  CHECK(lines.examined == 63);
  CHECK(lines.c_min == brute_ratio(LatticeShape{2, 3}, line_family(2)));
}

TEST_CASE("counterexample hunt") {
  const LatticeShape s{2, 2};
  const auto found = counterexample_hunt(slice_family(2), spec(GeneratorKind::exhaustive, s), {2, 1, 1});
  std::size_t want = 0;
  for (std::uint64_t bits = 0; bits < 16; ++bits) want += brute::cover(brute::from_bits(s, bits), slice_family(2)) >= 2;
  CHECK(found.findings.size() == want);
  CHECK(found.examined == want);

  auto empty = spec(GeneratorKind::custom, s);
  const auto none = counterexample_hunt(slice_family(2), empty, {2, 1, 1});
  CHECK(none.findings.empty());
  CHECK(none.examined == 0);

  // Restrictions to 2x2 keep a covering number of 2 here, so nothing qualifies.
  const auto strict = counterexample_hunt(slice_family(2), spec(GeneratorKind::exhaustive, s), {2, 2, 1});
  CHECK(strict.findings.empty());
}

TEST_CASE("rational formatting") {
  CHECK(to_string(Rational{3, 1}) == "3");
  CHECK(to_string(Rational{2, 3}) == "2/3");
}
