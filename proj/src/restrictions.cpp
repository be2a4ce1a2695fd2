#include "covering/restrictions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covering/errors.hpp"

namespace covering {

std::string_view to_string(RestrictionTheorem t) noexcept {
  switch (t) {
    case RestrictionTheorem::linear: return "linear";
    case RestrictionTheorem::offdiag: return "offdiag";
    case RestrictionTheorem::same_cover: return "same-cover";
  }
  return "?";
}

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

AxisSets empty_axes(int d) { return AxisSets(static_cast<std::size_t>(d)); }

RestrictionCertificate trivial_certificate(const LatticeSubset& a, RestrictionTheorem t) {
  RestrictionCertificate cert;
  cert.restriction = restrict(a, empty_axes(a.shape().order()));
  cert.theorem = t;
  cert.sizes_ok = true;
  return cert;
}

// Mc reported by a failed hypothesis check: exact when it fits the solver,
// otherwise the greedy upper bound.
std::int64_t reported_covering(const LatticeSubset& a, const PatternFamily& m, const SolverOptions& opts) {
  if (a.size() <= std::min(opts.max_points, kExactPointLimit)) return covering_number_exact(a, m, opts).value;
  return covering_number_greedy(a, m).value;
}

bool pairwise_disjoint(const AxisSets& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = i + 1; k < xs.size(); ++k) {
      AxisSet both;
      std::set_intersection(xs[i].begin(), xs[i].end(), xs[k].begin(), xs[k].end(), std::back_inserter(both));
      if (!both.empty()) return false;
    }
  return true;
}

}  // namespace

RestrictionCertificate restrict_linear(const LatticeSubset& a, const PatternFamily& m, std::int64_t l,
                                       const SolverOptions& opts) {
  if (l < 0) throw RangeError("l must be nonnegative");
  if (l == 0) return trivial_certificate(a, RestrictionTheorem::linear);
  const auto threshold = static_cast<std::int64_t>(m.size()) * l;
  if (!covering_at_least(a, m, threshold, opts)) {
    const auto mc = reported_covering(a, m, opts);
    throw HypothesisNotMet("Mc(A) = " + std::to_string(mc) + " is below |M| l = " + std::to_string(threshold), mc,
                           threshold);
  }
  const auto indep = independence_greedy(a, m, static_cast<std::size_t>(l));
  RestrictionCertificate cert;
  cert.theorem = RestrictionTheorem::linear;
  cert.claimed_lower_bound = l;
  cert.restriction = restrict(a, projections(indep.witness));
  cert.sizes_ok = std::all_of(cert.restriction.axis_sets.begin(), cert.restriction.axis_sets.end(),
                              [&](const AxisSet& x) { return static_cast<std::int64_t>(x.size()) <= l; });
  cert.verified_value = covering_number_exact(cert.restriction.induced, m, opts).value;
  return cert;
}

RestrictionCertificate restrict_offdiagonal(const LatticeSubset& a, const PatternFamily& m, std::int64_t l,
                                            const SolverOptions& opts) {
  if (l < 0) throw RangeError("l must be nonnegative");
  if (l == 0) return trivial_certificate(a, RestrictionTheorem::offdiag);
  const int d = a.shape().order();
  const auto off = without_repeated_coordinates(a);
  const auto per_point = ipow(d, d);
  const auto threshold = per_point * static_cast<std::int64_t>(m.size()) * l;
  if (!covering_at_least(off, m, threshold, opts)) {
    const auto mc = reported_covering(off, m, opts);
    throw HypothesisNotMet("Mc(A \\ E) = " + std::to_string(mc) + " is below d^d |M| l = " + std::to_string(threshold),
                           mc, threshold);
  }
  // d^d l independent off-diagonal points; a coloring captures at least l.
  const auto indep = independence_greedy(off, m, static_cast<std::size_t>(per_point * l));
  const auto coloring = disjoint_coloring(indep.witness);

  RestrictionCertificate cert;
  cert.theorem = RestrictionTheorem::offdiag;
  cert.claimed_lower_bound = l;
  cert.restriction = restrict(a, projections(coloring.captured));
  cert.sizes_ok = pairwise_disjoint(cert.restriction.axis_sets);
  cert.verified_value = covering_number_exact(cert.restriction.induced, m, opts).value;
  return cert;
}

BoundedSizeReport bounded_size_check(const LatticeSubset& a, const PatternFamily& m, std::int64_t l,
                                     const SolverOptions& opts) {
  if (l < 0) throw RangeError("l must be nonnegative");
  const int d = a.shape().order();
  BoundedSizeReport rep;
  for (auto c : sub_patterns(m)) {
    const auto star = star_family(c, d);
    for (const auto& st : enumerate_subspaces_meeting(a, PatternFamily(d, {c}))) {
      if (static_cast<std::int64_t>(st.members.size()) <= l) continue;
      const auto t = subset_by_indices(a, st.members);
      if (!covering_at_least(t, star, l + 1, opts)) continue;
      rep.hypothesis_holds = false;
      rep.violating_subspace = st.subspace;
      rep.violating_value = reported_covering(t, star, opts);
      break;
    }
    if (!rep.hypothesis_holds) break;
  }
  rep.tau = m.max_order();
  rep.size = static_cast<std::int64_t>(a.size());
  rep.covering = covering_number_exact(a, m, opts).value;
  rep.bound = std::pow(static_cast<long double>(l), rep.tau) * static_cast<long double>(rep.covering);
  rep.inequality_holds = static_cast<long double>(rep.size) <= rep.bound;
  return rep;
}

OptimalRestriction optimal_restriction_search(const LatticeSubset& a, const PatternFamily& m,
                                              const std::vector<int>& caps, std::uint64_t budget,
                                              const SolverOptions& opts) {
  const int d = a.shape().order();
  if (caps.size() != static_cast<std::size_t>(d)) throw PreconditionError("need one cap per axis");

  // Only values in proj_j(A) matter, and larger X_j never hurt, so each X_j
  // ranges over subsets of proj_j(A) of size min(cap_j, |proj_j(A)|).
  const auto universe = projections(a);
  std::vector<std::vector<AxisSet>> choices(static_cast<std::size_t>(d));
  long double total = 1;
  for (int j = 0; j < d; ++j) {
    const auto& u = universe[static_cast<std::size_t>(j)];
    if (caps[static_cast<std::size_t>(j)] < 0) throw RangeError("caps must be nonnegative");
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(caps[static_cast<std::size_t>(j)]), u.size());
    long double binom = 1;
    for (std::size_t i = 0; i < k; ++i) binom = binom * static_cast<long double>(u.size() - i) / static_cast<long double>(i + 1);
    total *= binom;
    if (total > static_cast<long double>(budget))
      throw CapacityError("restriction search needs more than " + std::to_string(budget) + " candidates");
    std::vector<char> mask(u.size(), 0);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
      AxisSet xs;
      for (std::size_t i = 0; i < u.size(); ++i)
        if (mask[i]) xs.push_back(u[i]);
      choices[static_cast<std::size_t>(j)].push_back(std::move(xs));
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }

  std::int64_t ceiling = -1;
  if (a.size() <= std::min(opts.max_points, kExactPointLimit)) ceiling = covering_number_exact(a, m, opts).value;

  OptimalRestriction best;
  best.value = -1;
  std::vector<std::size_t> odo(static_cast<std::size_t>(d), 0);
  while (true) {
    AxisSets xs;
    for (int j = 0; j < d; ++j) xs.push_back(choices[static_cast<std::size_t>(j)][odo[static_cast<std::size_t>(j)]]);
    auto r = restrict(a, std::move(xs));
    ++best.examined;
    const auto v = covering_number_exact(r.induced, m, opts).value;
    if (v > best.value) {
      best.value = v;
      best.restriction = std::move(r);
      if (v == ceiling) break;
    }
    int j = d - 1;
    for (; j >= 0; --j) {
      auto& o = odo[static_cast<std::size_t>(j)];
      if (++o < choices[static_cast<std::size_t>(j)].size()) break;
      o = 0;
    }
    if (j < 0) break;
  }
  return best;
}

}  // namespace covering
