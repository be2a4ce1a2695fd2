#include <algorithm>
#include <string>

#include "covering/cover_solver.hpp"
#include "covering/errors.hpp"
#include "fixed_bits.hpp"

namespace covering {

namespace {

// Maximum independent set of the conflict graph by branch and bound; the
// bound is a greedy clique cover of the remaining vertices.
template <std::size_t W>
class MaxIndependent {
 public:
  using B = detail::Bits<W>;

  explicit MaxIndependent(std::vector<B> adj) : adj_(std::move(adj)) {}

  void run(const B& all) { search(all, 0); }
  const std::vector<std::size_t>& best() const noexcept { return best_; }

 private:
  int clique_cover(B rest) const {
    int cliques = 0;
    while (!rest.none()) {
      const auto v = static_cast<std::size_t>(rest.first());
      rest.reset(v);
      B cand = rest & adj_[v];
      while (!cand.none()) {
        const auto u = static_cast<std::size_t>(cand.first());
        rest.reset(u);
        cand.reset(u);
        cand &= adj_[u];
      }
      ++cliques;
    }
    return cliques;
  }

  void search(B p, std::size_t depth) {
    if (p.none()) {
      if (current_.size() > best_.size()) best_ = current_;
      return;
    }
    if (current_.size() + static_cast<std::size_t>(clique_cover(p)) <= best_.size()) return;

    int pivot = -1;
    int max_deg = -1;
    p.for_each([&](std::size_t v) {
      const int deg = (adj_[v] & p).count();
      if (deg > max_deg) {
        max_deg = deg;
        pivot = static_cast<int>(v);
      }
    });
    const auto v = static_cast<std::size_t>(pivot);
    if (max_deg == 0) {
      const auto saved = current_.size();
      p.for_each([&](std::size_t u) { current_.push_back(u); });
      if (current_.size() > best_.size()) best_ = current_;
      current_.resize(saved);
      return;
    }
    current_.push_back(v);
    B with = p.minus(adj_[v]);
    with.reset(v);
    search(with, depth + 1);
    current_.pop_back();
    B without = p;
    without.reset(v);
    search(without, depth + 1);
  }

  std::vector<B> adj_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
};

}  // namespace

bool is_independent(const LatticeSubset& a, const PatternFamily& m) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = i + 1; k < a.size(); ++k)
      if (conflict(a[i], a[k], m)) return false;
  return true;
}

IndependenceResult independence_greedy(const LatticeSubset& a, const PatternFamily& m, std::size_t limit) {
  if (m.order() != a.shape().order()) throw PreconditionError("family order differs from shape order");
  IndependenceResult r;
  r.method = IndependenceMethod::greedy;
  std::vector<char> absorbed(a.size(), 0);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (absorbed[i]) continue;
    if (limit && chosen.size() == limit) break;
    chosen.push_back(i);
    for (std::size_t k = i; k < a.size(); ++k)
      if (!absorbed[k] && in_union_through(a[i], a[k], m)) absorbed[k] = 1;
  }
  r.witness = subset_by_indices(a, chosen);
  r.value = static_cast<std::int64_t>(chosen.size());
  // Certify A ⊆ M(u^1) ∪ ... ∪ M(u^t) independently of the loop above.
  r.covered_by_unions = std::all_of(a.begin(), a.end(), [&](const Point& q) {
    return std::any_of(r.witness.begin(), r.witness.end(),
                       [&](const Point& u) { return in_union_through(u, q, m); });
  });
  return r;
}

IndependenceResult independence_exact(const LatticeSubset& a, const PatternFamily& m, const SolverOptions& opts) {
  if (m.order() != a.shape().order()) throw PreconditionError("family order differs from shape order");
  const auto cap = std::min(opts.max_points, kExactPointLimit);
  if (a.size() > cap)
    throw CapacityError("exact independence cap is " + std::to_string(cap) + " points but the set has " +
                        std::to_string(a.size()));
  IndependenceResult r;
  r.method = IndependenceMethod::exact;
  if (a.empty()) {
    r.witness = a;
    return r;
  }
  detail::with_words(a.size(), [&](auto words) {
    constexpr std::size_t W = decltype(words)::value;
    using B = detail::Bits<W>;
    std::vector<B> adj(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = i + 1; k < a.size(); ++k)
        if (conflict(a[i], a[k], m)) {
          adj[i].set(k);
          adj[k].set(i);
        }
    B all;
    for (std::size_t i = 0; i < a.size(); ++i) all.set(i);
    MaxIndependent<W> mis(std::move(adj));
    mis.run(all);
    auto idx = mis.best();
    std::sort(idx.begin(), idx.end());
    r.witness = subset_by_indices(a, idx);
    r.value = static_cast<std::int64_t>(idx.size());
  });
  return r;
}

}  // namespace covering
