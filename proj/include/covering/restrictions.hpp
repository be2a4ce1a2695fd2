#pragma once

// Constructive extraction of sub-boxes X_1 x ... x X_d whose restriction keeps
// a covering-number lower bound. Every certificate's value is recomputed with
// the exact solver; nothing is trusted from the construction.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "covering/cover_solver.hpp"
#include "covering/lattice.hpp"
#include "covering/subspaces.hpp"

namespace covering {

enum class RestrictionTheorem { linear, offdiag, same_cover };

std::string_view to_string(RestrictionTheorem t) noexcept;

struct RestrictionCertificate {
  Restriction restriction;
  std::int64_t claimed_lower_bound = 0;
  std::int64_t verified_value = 0;
  RestrictionTheorem theorem = RestrictionTheorem::linear;
  /// linear: |X_j| <= l; offdiag: X_j pairwise disjoint; same-cover:
  /// |X_j| <= J(d, l, |M|).
  bool sizes_ok = false;

  bool verified() const noexcept { return verified_value >= claimed_lower_bound; }
};

/// Requires Mc(A) >= |M| l. Projects l greedy-independent points.
RestrictionCertificate restrict_linear(const LatticeSubset& a, const PatternFamily& m, std::int64_t l,
                                       const SolverOptions& opts = {});

struct Coloring {
  /// colors[i - 1] in [1, d] for every i in [max_j n_j].
  std::vector<int> colors;
  /// X_j = { i <= n_j : colors[i - 1] = j + 1 }, pairwise disjoint.
  AxisSets axis_sets;
  LatticeSubset captured;
  /// |A \ E| and ceil(|A \ E| / d^d).
  std::int64_t off_diagonal = 0;
  std::int64_t guaranteed = 0;
};

/// Colors the common coordinate universe one value at a time, each time
/// maximizing the conditional expectation of the captured count. The final
/// capture is at least the initial expectation |A \ E| / d^d.
Coloring disjoint_coloring(const LatticeSubset& a);

/// Uniform random coloring; no capture guarantee.
Coloring disjoint_coloring_sampled(const LatticeSubset& a, std::uint64_t seed);

/// Requires Mc(A \ E) >= d^d |M| l. Pairwise-disjoint axis sets.
RestrictionCertificate restrict_offdiagonal(const LatticeSubset& a, const PatternFamily& m, std::int64_t l,
                                            const SolverOptions& opts = {});

struct BoundedSizeReport {
  bool hypothesis_holds = true;
  /// First C-subspace whose trace has C*-covering number > l.
  std::optional<Subspace> violating_subspace;
  std::int64_t violating_value = 0;
  int tau = 0;
  std::int64_t size = 0;
  std::int64_t covering = 0;
  long double bound = 0;  // l^tau * Mc(A)
  bool inequality_holds = false;

  /// False would contradict the size bound.
  bool consistent() const noexcept { return !hypothesis_holds || inequality_holds; }
};

BoundedSizeReport bounded_size_check(const LatticeSubset& a, const PatternFamily& m, std::int64_t l,
                                     const SolverOptions& opts = {});

enum class LeafReason { none, case2, depth_limit };

std::string_view to_string(LeafReason r) noexcept;

struct DescentTreeNode {
  LatticeSubset subset;
  int depth = 0;
  /// Case 1: the C-subspace whose trace forces a covering subspace.
  std::optional<Subspace> chosen_subspace;
  std::int64_t star_covering = 0;
  /// Axis sets contributed by this node.
  AxisSets box;
  std::vector<DescentTreeNode> children;
  LeafReason leaf_reason = LeafReason::none;

  std::size_t node_count() const noexcept;
};

struct SameCoverResult {
  RestrictionCertificate certificate;
  DescentTreeNode tree;
  LatticeSubset trimmed;
  /// J(d, l, |M|) and whether every |X_j| respects it.
  long double size_bound = 0;
  /// Exact Mc of the induced set equals the trimmed l.
  bool exact_match = false;
};

/// J(1, l, m) = l; J(d, l, m) = (1 + m + ... + m^l) J(d-1, l+1, d-1) + m^l l^d.
long double same_cover_size_bound(int d, std::int64_t l, std::size_t family_size);

/// With `target` unset, l = Mc(A); otherwise A is trimmed (last points first)
/// until Mc(A) = target. Throws HypothesisNotMet if target > Mc(A).
SameCoverResult restrict_same_cover(const LatticeSubset& a, const PatternFamily& m,
                                    std::optional<std::int64_t> target = std::nullopt,
                                    const SolverOptions& opts = {});

struct OptimalRestriction {
  Restriction restriction;
  std::int64_t value = 0;
  std::uint64_t examined = 0;
};

/// Exhaustive max of Mc(A(X)) subject to |X_j| <= caps[j].
OptimalRestriction optimal_restriction_search(const LatticeSubset& a, const PatternFamily& m,
                                              const std::vector<int>& caps, std::uint64_t budget = 1'000'000,
                                              const SolverOptions& opts = {});

}  // namespace covering
