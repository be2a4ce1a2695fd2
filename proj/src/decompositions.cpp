#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "covering/cover_solver.hpp"
#include "covering/errors.hpp"
#include "fixed_bits.hpp"

namespace covering {

namespace {

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return __builtin_mul_overflow(a, b, &out);
}

// Enumerates each set of exactly `length` distinct subspaces covering all
// points once: branch on the lowest uncovered point, forbid siblings already
// tried.
template <std::size_t W>
class CoverSetEnumerator {
 public:
  using B = detail::Bits<W>;

  CoverSetEnumerator(std::size_t n, std::vector<B> traces, std::size_t length, std::size_t keep)
      : traces_(std::move(traces)), length_(length), keep_(keep), forbidden_(traces_.size(), 0), point_cands_(n) {
    for (std::size_t c = 0; c < traces_.size(); ++c)
      traces_[c].for_each([&](std::size_t p) { point_cands_[p].push_back(c); });
  }

  void run(const B& all) { search(all); }
  std::uint64_t count() const noexcept { return count_; }
  const std::vector<std::vector<std::size_t>>& sets() const noexcept { return sets_; }

 private:
  void search(const B& u) {
    if (u.none()) {
      if (chosen_.size() == length_) {
        ++count_;
        if (sets_.size() < keep_) sets_.push_back(chosen_);
      }
      return;
    }
    if (chosen_.size() == length_) return;
    const auto p = static_cast<std::size_t>(u.first());
    std::vector<std::size_t> tried;
    for (auto c : point_cands_[p]) {
      if (forbidden_[c]) continue;
      chosen_.push_back(c);
      search(u.minus(traces_[c]));
      chosen_.pop_back();
      forbidden_[c] = 1;
      tried.push_back(c);
    }
    for (auto c : tried) forbidden_[c] = 0;
  }

  std::vector<B> traces_;
  std::size_t length_;
  std::size_t keep_;
  std::vector<char> forbidden_;
  std::vector<std::vector<std::size_t>> point_cands_;
  std::vector<std::size_t> chosen_;
  std::vector<std::vector<std::size_t>> sets_;
  std::uint64_t count_ = 0;
};

}  // namespace

DecompositionEnumeration enumerate_min_decompositions(const LatticeSubset& a, const PatternFamily& m,
                                                      std::size_t cap, const SolverOptions& opts) {
  DecompositionEnumeration out;
  const auto l = covering_number_exact(a, m, opts).value;
  out.length = l;
  const int d = a.shape().order();
  out.bound = std::pow(static_cast<long double>(m.size()) * std::pow(static_cast<long double>(l), d),
                       static_cast<long double>(l));
  if (l == 0) {
    out.distinct_sets = 1;
    out.count = 1;
    if (cap > 0) out.tuples.emplace_back(a, std::vector<Subspace>{});
    out.truncated = cap == 0;
    out.within_bound = out.count <= out.bound;
    return out;
  }

  // Minimal tuples consist of distinct subspaces meeting A (a repeated or
  // A-disjoint entry could be dropped, contradicting minimality).
  const auto cands = enumerate_subspaces_meeting(a, m);
  const auto length = static_cast<std::size_t>(l);
  std::vector<std::vector<std::size_t>> sets;
  detail::with_words(a.size(), [&](auto words) {
    constexpr std::size_t W = decltype(words)::value;
    using B = detail::Bits<W>;
    std::vector<B> traces(cands.size());
    for (std::size_t c = 0; c < cands.size(); ++c)
      for (auto i : cands[c].members) traces[c].set(i);
    B all;
    for (std::size_t i = 0; i < a.size(); ++i) all.set(i);
    CoverSetEnumerator<W> en(a.size(), std::move(traces), length, cap);
    en.run(all);
    out.distinct_sets = en.count();
    sets = en.sets();
  });

  std::uint64_t fact = 1;
  for (std::uint64_t k = 2; k <= length && !out.count_saturated; ++k) out.count_saturated = mul_overflows(fact, k, fact);
  if (!out.count_saturated) out.count_saturated = mul_overflows(out.distinct_sets, fact, out.count);
  if (out.count_saturated) out.count = std::numeric_limits<std::uint64_t>::max();
  out.within_bound = !out.count_saturated && static_cast<long double>(out.count) <= out.bound;
  out.truncated = out.count_saturated || out.count > cap;

  for (auto& set : sets) {
    std::vector<std::size_t> order(set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    do {
      if (out.tuples.size() >= cap) break;
      std::vector<Subspace> tuple;
      for (auto k : order) tuple.push_back(cands[set[k]].subspace);
      out.tuples.emplace_back(a, std::move(tuple));
    } while (std::next_permutation(order.begin(), order.end()));
    if (out.tuples.size() >= cap) break;
  }
  return out;
}

std::vector<Pattern> sub_patterns(const PatternFamily& m) {
  std::set<Pattern> cs;
  for (auto b : m) {
    const unsigned mask = b.mask();
    for (unsigned sub = mask; sub; sub = (sub - 1) & mask) cs.insert(Pattern(static_cast<AxisMask>(sub)));
  }
  return {cs.begin(), cs.end()};
}

std::optional<ForcedSubspace> forced_subspace_probe(const LatticeSubset& a, const PatternFamily& m, std::int64_t l,
                                                    const SolverOptions& opts) {
  if (m.order() != a.shape().order()) throw PreconditionError("family order differs from shape order");
  const int d = a.shape().order();
  for (auto c : sub_patterns(m)) {
    const auto star = star_family(c, d);
    for (const auto& st : enumerate_subspaces_meeting(a, PatternFamily(d, {c}))) {
      if (static_cast<std::int64_t>(st.members.size()) < l + 1) continue;
      const auto t = subset_by_indices(a, st.members);
      if (!covering_at_least(t, star, l + 1, opts)) continue;
      // Oversized traces report the certified lower bound.
      const auto value = t.size() <= opts.max_points ? covering_number_exact(t, star, opts).value : l + 1;
      return ForcedSubspace{st.subspace, c, value};
    }
  }
  return std::nullopt;
}

}  // namespace covering
