#include "covering/cover_solver.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "covering/errors.hpp"
#include "fixed_bits.hpp"

namespace covering {

using detail::Bits;

CoverDecomposition::CoverDecomposition(const LatticeSubset& target, std::vector<Subspace> subspaces)
    : subspaces_(std::move(subspaces)) {
  if (!covers(target)) throw PreconditionError("subspaces do not cover the target set");
}

bool CoverDecomposition::covers(const LatticeSubset& a) const noexcept {
  return std::all_of(a.begin(), a.end(), [&](const Point& p) {
    return std::any_of(subspaces_.begin(), subspaces_.end(), [&](const Subspace& s) { return s.contains(p); });
  });
}

namespace {

void check_family(const LatticeSubset& a, const PatternFamily& m) {
  if (m.order() != a.shape().order()) throw PreconditionError("family order differs from shape order");
}

void check_cap(const LatticeSubset& a, const SolverOptions& opts) {
  const auto cap = std::min(opts.max_points, kExactPointLimit);
  if (a.size() > cap)
    throw CapacityError("exact solver cap is " + std::to_string(cap) + " points but the set has " +
                        std::to_string(a.size()) + "; use the greedy mode for an upper bound");
}

// Branch-and-bound minimum set cover over the traces of maximal-pattern
// subspaces. Branches on the uncovered point with the fewest admissible
// subspaces; siblings already tried are forbidden in later branches.
template <std::size_t W>
class ExactCover {
 public:
  using B = Bits<W>;

  ExactCover(std::size_t n, std::vector<B> traces, std::uint64_t node_limit)
      : n_(n), traces_(std::move(traces)), node_limit_(node_limit), forbidden_(traces_.size(), 0), point_cands_(n) {
    for (std::size_t c = 0; c < traces_.size(); ++c) traces_[c].for_each([&](std::size_t p) { point_cands_[p].push_back(static_cast<int>(c)); });
    nb_.resize(n);
    allowed_.assign(n, 0);
  }

  /// Root lower bound; -1 if some point cannot be covered.
  int lower_bound(const B& u) {
    B rest = u;
    bool feasible = true;
    u.for_each([&](std::size_t p) {
      B acc;
      int allowed = 0;
      for (int c : point_cands_[p]) {
        if (forbidden_[static_cast<std::size_t>(c)]) continue;
        acc |= traces_[static_cast<std::size_t>(c)];
        ++allowed;
      }
      if (allowed == 0) feasible = false;
      nb_[p] = acc & u;
      allowed_[p] = allowed;
    });
    if (!feasible) return -1;
    int lb = 0;
    while (!rest.none()) {
      int best_p = -1;
      int best_sz = std::numeric_limits<int>::max();
      rest.for_each([&](std::size_t p) {
        const int sz = (nb_[p] & rest).count();
        if (sz < best_sz) {
          best_sz = sz;
          best_p = static_cast<int>(p);
        }
      });
      ++lb;
      rest = rest.minus(nb_[static_cast<std::size_t>(best_p)]);
    }
    return lb;
  }

  void run(const B& all, std::int64_t upper, std::vector<int> upper_witness) {
    best_ = upper;
    best_set_ = std::move(upper_witness);
    search(all, 0);
  }

  std::int64_t best() const noexcept { return best_; }
  const std::vector<int>& best_set() const noexcept { return best_set_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  void search(const B& u, std::int64_t depth) {
    if (node_limit_ && nodes_ >= node_limit_) throw CapacityError("exact solver node limit exceeded");
    ++nodes_;
    if (u.none()) {
      if (depth < best_) {
        best_ = depth;
        best_set_ = chosen_;
      }
      return;
    }
    if (depth + 1 >= best_) return;
    const int lb = lower_bound(u);
    if (lb < 0 || depth + lb >= best_) return;

    // Fail-first: fewest admissible subspaces, lowest index on ties.
    int pivot = -1;
    int fewest = std::numeric_limits<int>::max();
    u.for_each([&](std::size_t p) {
      if (allowed_[p] < fewest) {
        fewest = allowed_[p];
        pivot = static_cast<int>(p);
      }
    });

    std::vector<std::pair<int, int>> children;  // (-gain, candidate)
    for (int c : point_cands_[static_cast<std::size_t>(pivot)]) {
      if (forbidden_[static_cast<std::size_t>(c)]) continue;
      children.emplace_back(-(traces_[static_cast<std::size_t>(c)] & u).count(), c);
    }
    std::sort(children.begin(), children.end());

    std::vector<int> tried;
    for (auto [neg_gain, c] : children) {
      chosen_.push_back(c);
      search(u.minus(traces_[static_cast<std::size_t>(c)]), depth + 1);
      chosen_.pop_back();
      forbidden_[static_cast<std::size_t>(c)] = 1;
      tried.push_back(c);
      if (depth + 1 >= best_) break;
    }
    for (int c : tried) forbidden_[static_cast<std::size_t>(c)] = 0;
  }

  std::size_t n_;
  std::vector<B> traces_;
  std::uint64_t node_limit_;
  std::vector<char> forbidden_;
  std::vector<std::vector<int>> point_cands_;
  std::vector<B> nb_;
  std::vector<int> allowed_;
  std::vector<int> chosen_;
  std::vector<int> best_set_;
  std::int64_t best_ = 0;
  std::uint64_t nodes_ = 0;
};

// Greedy set cover: repeatedly take the subspace covering the most uncovered
// points; ties go to the canonically first subspace.
std::vector<std::size_t> greedy_cover(std::size_t n, const std::vector<SubspaceTrace>& cands) {
  std::vector<char> covered(n, 0);
  std::size_t remaining = n;
  std::vector<std::size_t> picked;
  while (remaining > 0) {
    std::size_t best_c = 0;
    std::size_t best_gain = 0;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      std::size_t gain = 0;
      for (auto i : cands[c].members) gain += covered[i] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best_c = c;
      }
    }
    picked.push_back(best_c);
    for (auto i : cands[best_c].members) {
      if (!covered[i]) {
        covered[i] = 1;
        --remaining;
      }
    }
  }
  return picked;
}

std::vector<Subspace> canonical(std::vector<Subspace> subs) {
  std::sort(subs.begin(), subs.end());
  return subs;
}

}  // namespace

CoverResult covering_number_greedy(const LatticeSubset& a, const PatternFamily& m) {
  check_family(a, m);
  CoverResult r;
  const auto reduced = m.maximal();
  r.stats.family_size = m.size();
  r.stats.reduced_family_size = reduced.size();
  if (a.empty()) {
    r.witness = CoverDecomposition(a, {});
    return r;
  }
  const auto cands = enumerate_subspaces_meeting(a, reduced);
  r.stats.candidates = cands.size();
  std::vector<Subspace> subs;
  for (auto c : greedy_cover(a.size(), cands)) subs.push_back(cands[c].subspace);
  r.value = static_cast<std::int64_t>(subs.size());
  r.stats.greedy_upper_bound = r.value;
  r.witness = CoverDecomposition(a, canonical(std::move(subs)));
  return r;
}

CoverResult covering_number_exact(const LatticeSubset& a, const PatternFamily& m, const SolverOptions& opts) {
  check_family(a, m);
  check_cap(a, opts);
  CoverResult r;
  const auto reduced = m.maximal();
  r.stats.family_size = m.size();
  r.stats.reduced_family_size = reduced.size();
  if (a.empty()) {
    r.witness = CoverDecomposition(a, {});
    return r;
  }

  const auto all_cands = enumerate_subspaces_meeting(a, reduced);
  const auto greedy = greedy_cover(a.size(), all_cands);
  r.stats.greedy_upper_bound = static_cast<std::int64_t>(greedy.size());

  detail::with_words(a.size(), [&](auto words) {
    constexpr std::size_t W = decltype(words)::value;
    using B = Bits<W>;
    std::vector<B> traces(all_cands.size());
    for (std::size_t c = 0; c < all_cands.size(); ++c)
      for (auto i : all_cands[c].members) traces[c].set(i);

    // Drop candidates whose trace is contained in an earlier-or-larger one.
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < traces.size(); ++c) {
      bool dominated = false;
      for (std::size_t o = 0; o < traces.size() && !dominated; ++o) {
        if (o == c || !traces[c].subset_of(traces[o])) continue;
        dominated = traces[c] != traces[o] || o < c;
      }
      if (!dominated) kept.push_back(c);
    }
    std::vector<B> kept_traces;
    for (auto c : kept) kept_traces.push_back(traces[c]);
    r.stats.candidates = kept.size();

    // Greedy witness expressed over kept candidates: map each greedy pick to a
    // kept candidate containing its trace.
    std::vector<int> upper_witness;
    for (auto g : greedy) {
      for (std::size_t k = 0; k < kept.size(); ++k) {
        if (traces[g].subset_of(kept_traces[k])) {
          upper_witness.push_back(static_cast<int>(k));
          break;
        }
      }
    }

    B all;
    for (std::size_t i = 0; i < a.size(); ++i) all.set(i);
    ExactCover<W> solver(a.size(), std::move(kept_traces), opts.node_limit);
    r.stats.lower_bound = solver.lower_bound(all);
    solver.run(all, static_cast<std::int64_t>(upper_witness.size()), upper_witness);
    r.stats.nodes = solver.nodes();
    r.value = solver.best();
    std::vector<Subspace> subs;
    for (int k : solver.best_set()) subs.push_back(all_cands[kept[static_cast<std::size_t>(k)]].subspace);
    r.witness = CoverDecomposition(a, canonical(std::move(subs)));
  });
  return r;
}

bool covering_at_least(const LatticeSubset& a, const PatternFamily& m, std::int64_t k, const SolverOptions& opts) {
  if (k <= 0) return true;
  if (static_cast<std::int64_t>(a.size()) < k) return false;
  if (independence_greedy(a, m).value >= k) return true;
  if (covering_number_greedy(a, m).value < k) return false;
  return covering_number_exact(a, m, opts).value >= k;
}

std::int64_t subspace_covering_closed_form(Pattern b, const PatternFamily& m, const LatticeShape& shape) {
  if (m.order() != shape.order()) throw PreconditionError("family order differs from shape order");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (auto bp : m) {
    std::int64_t prod = 1;
    for (int j = 0; j < shape.order(); ++j)
      if (b.is_free(j) && !bp.is_free(j)) prod *= shape.extent(j);
    best = std::min(best, prod);
  }
  return best;
}

MeetBoundReport meet_bound_check(const LatticeSubset& a, const PatternFamily& m1, const PatternFamily& m2,
                                 const SolverOptions& opts) {
  const auto r1 = covering_number_exact(a, m1, opts);
  const auto r2 = covering_number_exact(a, m2, opts);
  const auto r = covering_number_exact(a, meet_family(m1, m2), opts);
  MeetBoundReport rep;
  rep.k1 = r1.value;
  rep.k2 = r2.value;
  rep.k = r.value;
  std::vector<Subspace> pieces;
  for (const auto& s1 : r1.witness.subspaces()) {
    for (const auto& s2 : r2.witness.subspaces()) {
      auto s = intersect(s1, s2);
      if (!s) continue;
      if (std::none_of(a.begin(), a.end(), [&](const Point& p) { return s->contains(p); })) continue;
      pieces.push_back(*s);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
  rep.intersection_cover = CoverDecomposition(a, std::move(pieces));
  const auto product = rep.k1 * rep.k2;
  rep.holds = rep.k <= product && static_cast<std::int64_t>(rep.intersection_cover.length()) <= product;
  return rep;
}

}  // namespace covering
