#include "covering/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "covering/errors.hpp"
#include "covering/restrictions.hpp"
#include "covering/tensor.hpp"

namespace covering::harness {

std::string_view to_string(GeneratorKind k) noexcept {
  switch (k) {
    case GeneratorKind::exhaustive: return "exhaustive";
    case GeneratorKind::random: return "random";
    case GeneratorKind::diagonal: return "diagonal";
    case GeneratorKind::antichain: return "antichain";
    case GeneratorKind::custom: return "custom";
  }
  return "?";
}

GeneratorKind generator_kind(std::string_view name) {
  for (auto k : {GeneratorKind::exhaustive, GeneratorKind::random, GeneratorKind::diagonal, GeneratorKind::antichain,
                 GeneratorKind::custom})
    if (to_string(k) == name) return k;
  throw PreconditionError("unknown generator " + std::string(name));
}

namespace {

LatticeSubset sample(const LatticeShape& shape, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(density);
  std::vector<Point> pts;
  for (std::int64_t i = 0; i < shape.volume(); ++i)
    if (keep(rng)) pts.push_back(point_at(shape, i));
  return LatticeSubset(shape, std::move(pts));
}

LatticeSubset prune_to_antichain(const LatticeSubset& a) {
  std::vector<Point> kept;
  const int d = a.shape().order();
  for (const auto& p : a) {
    const bool clash = std::any_of(kept.begin(), kept.end(), [&](const Point& q) {
      for (int j = 0; j < d; ++j)
        if (q[j] > p[j]) return false;
      return true;
    });
    if (!clash) kept.push_back(p);
  }
  return LatticeSubset(a.shape(), std::move(kept));
}

std::string points_string(const LatticeSubset& a) {
  std::string s;
  for (const auto& p : a) {
    if (!s.empty()) s += ' ';
    s += '(';
    for (int j = 0; j < p.order(); ++j) s += (j ? "," : "") + std::to_string(p[j]);
    s += ')';
  }
  return s.empty() ? "{}" : s;
}

std::string family_string(const PatternFamily& m) {
  std::string s = "{";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ",{" : "{";
    const auto axes = m[i].axes();
    for (std::size_t k = 0; k < axes.size(); ++k) s += (k ? "," : "") + std::to_string(axes[k] + 1);
    s += '}';
  }
  return s + '}';
}

std::string shape_string(const LatticeShape& shape) {
  std::string s = "[";
  for (int j = 0; j < shape.order(); ++j) s += (j ? "," : "") + std::to_string(shape.extent(j));
  return s + "]";
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

std::int64_t factorial(std::int64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Per-instance stream so that reports do not depend on evaluation order.
std::mt19937_64 instance_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x5eedu};
  return std::mt19937_64(seq);
}

struct Context {
  const LatticeSubset& a;
  std::size_t index;
  const std::vector<PatternFamily>& families;
  const SuiteOptions& opts;
  std::uint64_t seed;
  VerificationReport& report;

  void fail(const std::string& relation, const std::string& observed, const std::string& family = {}) const {
    report.violations.push_back(
        {index, points_string(a), family.empty() ? relation : relation + " for M = " + family, observed});
  }
};

using Check = std::function<bool(const Context&)>;

// Each check returns false when the instance is outside the suite's scope.

bool check_additivity(const Context& c) {
  const int d = c.a.shape().order();
  auto rng = instance_rng(c.seed, c.index);
  AxisSets x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
  // Cut each axis at a random t_j: X_j = [1, t_j], Y_j = (t_j, n_j].
  for (int j = 0; j < d; ++j) {
    const int n = c.a.shape().extent(j);
    const int t = n == 1 ? 1 : std::uniform_int_distribution<int>(1, n - 1)(rng);
    for (int v = 1; v <= n; ++v) (v <= t ? x : y)[static_cast<std::size_t>(j)].push_back(v);
  }
  const auto a1 = restrict(c.a, x).induced;
  const auto a2 = restrict(c.a, y).induced;
  bool any = false;
  for (const auto& m : c.families) {
    if (m.contains(Pattern::full(d))) continue;
    any = true;
    const auto k1 = covering_number_exact(a1, m, c.opts.solver).value;
    const auto k2 = covering_number_exact(a2, m, c.opts.solver).value;
    const auto k = covering_number_exact(set_union(a1, a2), m, c.opts.solver).value;
    if (k != k1 + k2)
      c.fail("Mc(A1 u A2) = Mc(A1) + Mc(A2)", std::to_string(k) + " vs " + std::to_string(k1) + " + " + std::to_string(k2),
             family_string(m));
  }
  return any;
}

bool check_meet(const Context& c) {
  const auto& fs = c.families;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& m1 = fs[i];
    const auto& m2 = fs[(i + 1) % fs.size()];
    const auto k1 = covering_number_exact(c.a, m1, c.opts.solver).value;
    const auto k2 = covering_number_exact(c.a, m2, c.opts.solver).value;
    const auto k = covering_number_exact(c.a, meet_family(m1, m2), c.opts.solver).value;
    if (k > k1 * k2)
      c.fail("Mc_{M1^M2} <= Mc_M1 Mc_M2",
             std::to_string(k) + " > " + std::to_string(k1) + " * " + std::to_string(k2),
             family_string(m1) + " ^ " + family_string(m2));
    const auto rep = meet_bound_check(c.a, m1, m2, c.opts.solver);
    if (!rep.intersection_cover.covers(c.a) || static_cast<std::int64_t>(rep.intersection_cover.length()) > k1 * k2)
      c.fail("intersection cover of length <= k1 k2", std::to_string(rep.intersection_cover.length()));
  }
  return true;
}

bool check_linear(const Context& c) {
  bool any = false;
  for (const auto& m : c.families) {
    const auto mc = covering_number_exact(c.a, m, c.opts.solver).value;
    const auto l = mc / static_cast<std::int64_t>(m.size());
    if (l < 1) continue;
    any = true;
    const auto cert = restrict_linear(c.a, m, l, c.opts.solver);
    const auto induced = covering_number_exact(restrict(c.a, cert.restriction.axis_sets).induced, m, c.opts.solver).value;
    const bool small = std::all_of(cert.restriction.axis_sets.begin(), cert.restriction.axis_sets.end(),
                                   [&](const AxisSet& x) { return static_cast<std::int64_t>(x.size()) <= l; });
    if (induced < l || !small)
      c.fail("|X_j| <= l and Mc(A(X)) >= l", "l = " + std::to_string(l) + ", induced " + std::to_string(induced),
             family_string(m));
  }
  return any;
}

bool check_offdiag(const Context& c) {
  const int d = c.a.shape().order();
  const auto off = without_repeated_coordinates(c.a);
  bool any = false;
  for (const auto& m : c.families) {
    const auto per = ipow(d, d) * static_cast<std::int64_t>(m.size());
    // Largest l whose hypothesis is certified.
    std::int64_t l = 0;
    while (covering_at_least(off, m, per * (l + 1), c.opts.solver)) ++l;
    if (l < 1) continue;
    any = true;
    const auto cert = restrict_offdiagonal(c.a, m, l, c.opts.solver);
    const auto& xs = cert.restriction.axis_sets;
    bool disjoint = true;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t k = i + 1; k < xs.size(); ++k)
        for (auto v : xs[i])
          if (std::binary_search(xs[k].begin(), xs[k].end(), v)) disjoint = false;
    const auto induced = covering_number_exact(restrict(c.a, xs).induced, m, c.opts.solver).value;
    if (induced < l || !disjoint)
      c.fail("pairwise disjoint X_j and Mc(A(X)) >= l",
             "l = " + std::to_string(l) + ", induced " + std::to_string(induced) + (disjoint ? "" : ", overlapping"),
             family_string(m));
  }
  return any;
}

bool check_decompositions(const Context& c) {
  const int d = c.a.shape().order();
  for (const auto& m : c.families) {
    const auto e = enumerate_min_decompositions(c.a, m, 0, c.opts.solver);
    const auto l = e.length;
    const auto bound = std::pow(static_cast<long double>(m.size()) * std::pow(static_cast<long double>(l), d), l);
    if (!e.count_saturated && static_cast<long double>(e.count) > bound)
      c.fail("count <= (|M| l^d)^l", std::to_string(e.count) + " > " + std::to_string(static_cast<double>(bound)),
             family_string(m));
    if (is_independent(c.a, m)) {
      const auto want = static_cast<std::uint64_t>(factorial(l) * ipow(static_cast<std::int64_t>(m.size()), static_cast<int>(l)));
      if (e.count != want)
        c.fail("count = l! |M|^l on independent sets", std::to_string(e.count) + " vs " + std::to_string(want),
               family_string(m));
    }
  }
  return true;
}

bool check_same_cover(const Context& c) {
  for (const auto& m : c.families) {
    const auto r = restrict_same_cover(c.a, m, std::nullopt, c.opts.solver);
    const auto l = covering_number_exact(r.trimmed, m, c.opts.solver).value;
    const auto induced =
        covering_number_exact(restrict(r.trimmed, r.certificate.restriction.axis_sets).induced, m, c.opts.solver).value;
    if (induced != l || l != covering_number_exact(c.a, m, c.opts.solver).value || !r.certificate.sizes_ok)
      c.fail("Mc(A(X)) = Mc(A) and |X_j| <= J(d, l, M)",
             "l = " + std::to_string(l) + ", induced " + std::to_string(induced), family_string(m));
  }
  return true;
}

bool check_greedy_independence(const Context& c) {
  for (const auto& m : c.families) {
    const auto g = independence_greedy(c.a, m);
    const auto& w = g.witness;
    bool independent = true;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t k = i + 1; k < w.size(); ++k)
        for (auto b : m)
          if (Subspace(w.shape(), b, w[i]).contains(w[k])) independent = false;
    const bool covered = std::all_of(c.a.begin(), c.a.end(), [&](const Point& q) {
      return std::any_of(w.begin(), w.end(), [&](const Point& u) {
        return std::any_of(m.begin(), m.end(), [&](Pattern b) { return Subspace(w.shape(), b, u).contains(q); });
      });
    });
    const auto mc = covering_number_exact(c.a, m, c.opts.solver).value;
    const auto msize = static_cast<std::int64_t>(m.size());
    if (!independent || !covered || g.value * msize < mc)
      c.fail("independent, A inside the unions M(u^i), t >= ceil(Mc/|M|)",
             "t = " + std::to_string(g.value) + ", Mc = " + std::to_string(mc) + (independent ? "" : ", dependent") +
                 (covered ? "" : ", uncovered"),
             family_string(m));
  }
  return true;
}

bool check_coloring(const Context& c) {
  const auto col = disjoint_coloring(c.a);
  const int d = c.a.shape().order();
  const auto off = static_cast<std::int64_t>(without_repeated_coordinates(c.a).size());
  const auto dd = ipow(d, d);
  const auto need = (off + dd - 1) / dd;
  const auto captured = static_cast<std::int64_t>(restrict(c.a, col.axis_sets).induced.size());
  bool disjoint = true;
  for (int i = 1; i <= c.a.shape().max_extent(); ++i) {
    int owners = 0;
    for (const auto& x : col.axis_sets) owners += std::binary_search(x.begin(), x.end(), i);
    disjoint = disjoint && owners <= 1;
  }
  if (captured < need || !disjoint)
    c.fail("captured >= ceil(|A \\ E| / d^d), disjoint X_j",
           std::to_string(captured) + " < " + std::to_string(need));
  if (disjoint_coloring(c.a).colors != col.colors) c.fail("deterministic coloring", "colors differ on rerun");
  return true;
}

bool check_bounded_size(const Context& c) {
  for (const auto& m : c.families)
    for (std::int64_t l = 1; l <= 3; ++l) {
      const auto r = bounded_size_check(c.a, m, l, c.opts.solver);
      if (!r.hypothesis_holds) continue;
      const auto mc = covering_number_exact(c.a, m, c.opts.solver).value;
      const auto bound = std::pow(static_cast<long double>(l), m.max_order()) * static_cast<long double>(mc);
      if (static_cast<long double>(c.a.size()) > bound)
        c.fail("|A| <= l^tau Mc(A)", std::to_string(c.a.size()) + " > " + std::to_string(static_cast<double>(bound)),
               family_string(m) + ", l = " + std::to_string(l));
    }
  return true;
}

bool check_sawin_tao(const Context& c) {
  const int d = c.a.shape().order();
  if (d < 2 || !is_antichain(c.a)) return false;
  auto rng = instance_rng(c.seed, c.index);
  const PrimeField f(c.opts.p);
  std::uniform_int_distribution<int> nonzero(1, f.p() - 1);
  FieldTensor t(c.a.shape(), f);
  for (const auto& p : c.a) t.set(p, static_cast<std::uint8_t>(nonzero(rng)));
  const auto oracle = slice_rank_oracle(t).value;
  const auto cover = covering_number_exact(c.a, slice_family(d), c.opts.solver).value;
  if (oracle != cover)
    c.fail("slice rank = slice covering number", std::to_string(oracle) + " vs " + std::to_string(cover));
  return true;
}

bool check_closed_form(const Context& c) {
  const auto& shape = c.a.shape();
  const int d = shape.order();
  const Point corner = point_at(shape, 0);
  for (const auto& m : c.families)
    for (unsigned b = 0; b < (1u << d); ++b) {
      const Pattern pb(static_cast<AxisMask>(b));
      const auto exact = covering_number_exact(Subspace(shape, pb, corner).points(), m, c.opts.solver).value;
      const auto closed = subspace_covering_closed_form(pb, m, shape);
      if (exact != closed)
        c.fail("Mc(B-subspace) = min prod n_j over B \\ B'", std::to_string(exact) + " vs " + std::to_string(closed),
               family_string(m) + ", B mask " + std::to_string(b));
    }
  return true;
}

const std::vector<std::pair<std::string, Check>>& suites() {
  static const std::vector<std::pair<std::string, Check>> s{
      {"diagonal-additivity", check_additivity},
      {"closed-form", check_closed_form},
      {"meet-bound", check_meet},
      {"linear-restriction", check_linear},
      {"offdiag-restriction", check_offdiag},
      {"decomposition-count", check_decompositions},
      {"same-cover", check_same_cover},
      {"greedy-independence", check_greedy_independence},
      {"coloring", check_coloring},
      {"bounded-size", check_bounded_size},
      {"sawin-tao", check_sawin_tao},
  };
  return s;
}

}  // namespace

std::vector<LatticeSubset> generate(const GeneratorSpec& spec, std::uint64_t budget) {
  const auto& shape = spec.shape;
  const auto limit = std::min(budget, kMaxExhaustive);
  std::vector<LatticeSubset> out;
  switch (spec.kind) {
    case GeneratorKind::exhaustive: {
      const auto n = shape.volume();
      if (n >= 63 || (std::uint64_t{1} << n) > limit)
        throw CapacityError("exhaustive frame over " + std::to_string(n) + " points exceeds the budget of " +
                            std::to_string(limit) + " subsets");
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        std::vector<Point> pts;
        for (std::int64_t i = 0; i < n; ++i)
          if (bits >> i & 1u) pts.push_back(point_at(shape, i));
        out.emplace_back(shape, std::move(pts));
      }
      break;
    }
    case GeneratorKind::random:
    case GeneratorKind::antichain: {
      if (spec.count > limit) throw CapacityError("frame of " + std::to_string(spec.count) + " instances exceeds the budget");
      std::mt19937_64 rng(spec.seed);
      for (std::size_t i = 0; i < spec.count; ++i) {
        auto a = sample(shape, spec.density, rng);
        out.push_back(spec.kind == GeneratorKind::antichain ? prune_to_antichain(a) : std::move(a));
      }
      break;
    }
    case GeneratorKind::diagonal: {
      int n = shape.extent(0);
      for (int j = 1; j < shape.order(); ++j) n = std::min(n, shape.extent(j));
      const auto top = std::min<std::size_t>(spec.count, static_cast<std::size_t>(n));
      for (std::size_t l = 1; l <= top; ++l) {
        std::vector<Point> pts;
        for (int i = 1; i <= static_cast<int>(l); ++i) {
          Point p = point_at(shape, 0);
          for (int j = 0; j < shape.order(); ++j) p[j] = i;
          pts.push_back(p);
        }
        out.emplace_back(shape, std::move(pts));
      }
      break;
    }
    case GeneratorKind::custom:
      if (spec.custom.size() > limit) throw CapacityError("custom frame exceeds the budget");
      out = spec.custom;
      break;
  }
  return out;
}

std::string describe(const GeneratorSpec& spec) {
  std::ostringstream s;
  s << to_string(spec.kind) << " over " << shape_string(spec.shape);
  switch (spec.kind) {
    case GeneratorKind::random:
    case GeneratorKind::antichain: s << ", " << spec.count << " samples, density " << spec.density; break;
    case GeneratorKind::diagonal: s << ", l <= " << spec.count; break;
    case GeneratorKind::custom: s << ", " << spec.custom.size() << " instances"; break;
    case GeneratorKind::exhaustive: break;
  }
  return s.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, check] : suites()) n.push_back(name);
    return n;
  }();
  return names;
}

VerificationReport verify_suite(std::string_view name, const GeneratorSpec& gen,
                                const std::vector<PatternFamily>& families, const SuiteOptions& opts) {
  const auto& all = suites();
  const auto it = std::find_if(all.begin(), all.end(), [&](const auto& s) { return s.first == name; });
  if (it == all.end()) throw PreconditionError("unknown suite " + std::string(name));

  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.suite = it->first;
  report.frame = describe(gen);
  report.seed = gen.seed;
  std::vector<PatternFamily> fams = families;
  if (fams.empty()) fams.push_back(slice_family(gen.shape.order()));
  for (const auto& m : fams)
    if (m.order() != gen.shape.order()) throw PreconditionError("family order differs from the frame's shape");

  std::vector<LatticeSubset> frame;
  if (name == "closed-form") {
    // The relation concerns the box itself; the generator only supplies the shape.
    frame.emplace_back(gen.shape);
    report.frame = "every B-subspace through the corner of " + shape_string(gen.shape);
  } else
    frame = generate(gen, opts.budget);

  for (std::size_t i = 0; i < frame.size(); ++i) {
    const Context ctx{frame[i], i, fams, opts, gen.seed, report};
    try {
      if (it->second(ctx)) ++report.instances_checked;
    } catch (const CapacityError&) {
      ++report.skipped;
      report.partial = true;
    }
  }
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

ConstantSearch search_constant(const PatternFamily& m, const GeneratorSpec& gen, const SuiteOptions& opts) {
  ConstantSearch out;
  for (const auto& a : generate(gen, opts.budget)) {
    try {
      const auto mc = covering_number_exact(a, m, opts.solver).value;
      if (mc == 0) continue;
      const auto ind = independence_exact(a, m, opts.solver).value;
      ++out.examined;
      const auto g = std::gcd(ind, mc);
      const Rational r{ind / g, mc / g};
      if (!out.found || r.num * out.c_min.den < out.c_min.num * r.den) {
        out.found = true;
        out.c_min = r;
        out.witness = a;
      }
    } catch (const CapacityError&) {
      ++out.skipped;
    }
  }
  out.exhaustive = gen.kind == GeneratorKind::exhaustive && out.skipped == 0;
  return out;
}

HuntResult counterexample_hunt(const PatternFamily& m, const GeneratorSpec& gen, const HuntTarget& target,
                               const SuiteOptions& opts) {
  HuntResult out;
  const std::vector<int> caps(static_cast<std::size_t>(gen.shape.order()), target.cap_size);
  for (const auto& a : generate(gen, opts.budget)) {
    try {
      if (!covering_at_least(a, m, target.full_value, opts.solver)) continue;
      ++out.examined;
      const auto best = optimal_restriction_search(a, m, caps, opts.budget, opts.solver);
      if (best.value <= target.restricted_cap) out.findings.push_back(a);
    } catch (const CapacityError&) {
      ++out.skipped;
      out.partial = true;
    }
  }
  return out;
}

}  // namespace covering::harness
