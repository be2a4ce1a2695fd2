#include <algorithm>
#include <cmath>
#include <string>

#include "covering/errors.hpp"
#include "covering/restrictions.hpp"

namespace covering {

std::string_view to_string(LeafReason r) noexcept {
  switch (r) {
    case LeafReason::none: return "none";
    case LeafReason::case2: return "case-2";
    case LeafReason::depth_limit: return "depth-limit";
  }
  return "?";
}

std::size_t DescentTreeNode::node_count() const noexcept {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

long double same_cover_size_bound(int d, std::int64_t l, std::size_t family_size) {
  if (d <= 1) return static_cast<long double>(l);
  const auto m = static_cast<long double>(family_size);
  long double geometric = 0;
  for (std::int64_t i = 0; i <= l; ++i) geometric += std::pow(m, static_cast<long double>(i));
  return geometric * same_cover_size_bound(d - 1, l + 1, static_cast<std::size_t>(d - 1)) +
         std::pow(m, static_cast<long double>(l)) * std::pow(static_cast<long double>(l), static_cast<long double>(d));
}

namespace {

// Drops the lexicographically last point whose removal keeps Mc >= target,
// until Mc == target.
LatticeSubset trim_to(LatticeSubset a, const PatternFamily& m, std::int64_t target, const SolverOptions& opts) {
  auto mc = covering_number_exact(a, m, opts).value;
  while (mc > target) {
    bool removed = false;
    for (std::size_t i = a.size(); i-- > 0;) {
      std::vector<Point> pts(a.begin(), a.end());
      pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
      LatticeSubset candidate(a.shape(), std::move(pts));
      const auto v = covering_number_exact(candidate, m, opts).value;
      if (v >= target) {
        a = std::move(candidate);
        mc = v;
        removed = true;
        break;
      }
    }
    if (!removed) break;
  }
  return a;
}

AxisSets union_axes(AxisSets acc, const AxisSets& more) {
  for (std::size_t j = 0; j < acc.size(); ++j) {
    acc[j].insert(acc[j].end(), more[j].begin(), more[j].end());
    std::sort(acc[j].begin(), acc[j].end());
    acc[j].erase(std::unique(acc[j].begin(), acc[j].end()), acc[j].end());
  }
  return acc;
}

class DescentBuilder {
 public:
  DescentBuilder(const PatternFamily& m, std::int64_t l, const SolverOptions& opts) : m_(m), l_(l), opts_(opts) {}

  /// Axis sets for A with Mc(A) == l; fills the tree rooted at `node`.
  AxisSets build(const LatticeSubset& a, DescentTreeNode& node, int depth) {
    const int d = a.shape().order();
    node.subset = a;
    node.depth = depth;
    node.box = AxisSets(static_cast<std::size_t>(d));
    if (depth >= l_) {
      node.leaf_reason = LeafReason::depth_limit;
      return node.box;
    }
    const auto forced = forced_subspace_probe(a, m_, l_, opts_);
    if (!forced) {
      node.leaf_reason = LeafReason::case2;
      node.box = projections(a);
      return node.box;
    }

    const auto& s = forced->subspace;
    const auto c = forced->c;
    node.chosen_subspace = s;
    const auto star = star_family(c, d);
    auto t = trim_to(trace(a, s), star, l_ + 1, opts_);
    node.star_covering = forced->star_covering;

    // The trace lives in an order-|C| box; C* becomes its slice family.
    const auto axes = c.axes();
    std::vector<int> dims;
    for (int j : axes) dims.push_back(a.shape().extent(j));
    const LatticeShape sub_shape{std::span<const int>(dims)};
    std::vector<Point> projected;
    for (const auto& p : t) {
      std::vector<int> coords;
      for (int j : axes) coords.push_back(p[j]);
      projected.emplace_back(std::span<const int>(coords));
    }
    const LatticeSubset sub(sub_shape, std::move(projected));
    DescentTreeNode inner_root;
    DescentBuilder inner(slice_family(static_cast<int>(axes.size())), l_ + 1, opts_);
    const auto inner_axes = inner.build(sub, inner_root, 0);
    for (std::size_t k = 0; k < axes.size(); ++k) node.box[static_cast<std::size_t>(axes[k])] = inner_axes[k];
    for (int j = 0; j < d; ++j)
      if (!c.is_free(j)) node.box[static_cast<std::size_t>(j)] = {s.fixed(j)};

    AxisSets acc = node.box;
    const Point through = t[0];
    for (auto b : m_) {
      if (!c.subset_of(b)) continue;
      const Subspace sp(a.shape(), b, through);
      std::vector<Point> rest;
      for (const auto& p : a)
        if (!sp.contains(p)) rest.push_back(p);
      node.children.emplace_back();
      acc = union_axes(std::move(acc), build(LatticeSubset(a.shape(), std::move(rest)), node.children.back(), depth + 1));
    }
    return acc;
  }

 private:
  PatternFamily m_;
  std::int64_t l_;
  const SolverOptions& opts_;
};

}  // namespace

SameCoverResult restrict_same_cover(const LatticeSubset& a, const PatternFamily& m, std::optional<std::int64_t> target,
                                    const SolverOptions& opts) {
  if (m.order() != a.shape().order()) throw PreconditionError("family order differs from shape order");
  const auto mc = covering_number_exact(a, m, opts).value;
  const auto l = target.value_or(mc);
  if (l < 0) throw RangeError("l must be nonnegative");
  if (l > mc)
    throw HypothesisNotMet("Mc(A) = " + std::to_string(mc) + " is below the requested l = " + std::to_string(l), mc, l);

  SameCoverResult out;
  out.trimmed = trim_to(a, m, l, opts);
  DescentBuilder builder(m, l, opts);
  const auto xs = builder.build(out.trimmed, out.tree, 0);

  auto& cert = out.certificate;
  cert.theorem = RestrictionTheorem::same_cover;
  cert.claimed_lower_bound = l;
  cert.restriction = restrict(out.trimmed, xs);
  cert.verified_value = covering_number_exact(cert.restriction.induced, m, opts).value;
  out.size_bound = same_cover_size_bound(a.shape().order(), l, m.size());
  cert.sizes_ok = std::all_of(xs.begin(), xs.end(),
                              [&](const AxisSet& x) { return static_cast<long double>(x.size()) <= out.size_bound; });
  out.exact_match = cert.verified_value == l;
  return out;
}

}  // namespace covering
