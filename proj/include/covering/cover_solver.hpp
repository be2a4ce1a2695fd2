#pragma once

// M-covering numbers (exact and greedy), the closed form for B-subspaces, the
// meet-family product bound, M-independence numbers, and enumeration of
// minimal-length covering decompositions.

#include <cstdint>
#include <optional>
#include <vector>

#include "covering/lattice.hpp"
#include "covering/subspaces.hpp"

namespace covering {

struct SolverOptions {
  /// Largest |A| accepted by the exact solvers.
  std::size_t max_points = 64;
  /// Branch-and-bound node limit, 0 for none. Exceeding it throws CapacityError.
  std::uint64_t node_limit = 0;
};

/// Hard upper bound on SolverOptions::max_points.
inline constexpr std::size_t kExactPointLimit = 1024;

/// An ordered tuple of subspaces whose union contains a target set.
class CoverDecomposition {
 public:
  CoverDecomposition() = default;
  /// Throws PreconditionError unless the subspaces cover `target`.
  CoverDecomposition(const LatticeSubset& target, std::vector<Subspace> subspaces);

  std::size_t length() const noexcept { return subspaces_.size(); }
  const std::vector<Subspace>& subspaces() const noexcept { return subspaces_; }
  bool covers(const LatticeSubset& a) const noexcept;

 private:
  std::vector<Subspace> subspaces_;
};

struct CoverStats {
  std::uint64_t nodes = 0;
  std::int64_t greedy_upper_bound = 0;
  std::int64_t lower_bound = 0;
  /// |M| as given, and the size of the maximal-pattern family searched.
  std::size_t family_size = 0;
  std::size_t reduced_family_size = 0;
  std::size_t candidates = 0;
};

struct CoverResult {
  std::int64_t value = 0;
  CoverDecomposition witness;
  CoverStats stats;
};

CoverResult covering_number_exact(const LatticeSubset& a, const PatternFamily& m, const SolverOptions& opts = {});
CoverResult covering_number_greedy(const LatticeSubset& a, const PatternFamily& m);

/// Decides Mc(A) >= k, consulting the independence lower bound and the greedy
/// upper bound before falling back to the exact solver.
bool covering_at_least(const LatticeSubset& a, const PatternFamily& m, std::int64_t k, const SolverOptions& opts = {});

/// min over B' in M of prod_{j in B \ B'} n_j.
std::int64_t subspace_covering_closed_form(Pattern b, const PatternFamily& m, const LatticeShape& shape);

struct MeetBoundReport {
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;
  std::int64_t k = 0;
  bool holds = false;
  /// Non-empty pairwise intersections of the two witnesses that meet A.
  CoverDecomposition intersection_cover;
};

MeetBoundReport meet_bound_check(const LatticeSubset& a, const PatternFamily& m1, const PatternFamily& m2,
                                 const SolverOptions& opts = {});

enum class IndependenceMethod { exact, greedy };

struct IndependenceResult {
  std::int64_t value = 0;
  LatticeSubset witness;
  IndependenceMethod method = IndependenceMethod::greedy;
  /// Greedy only: A ⊆ M(u^1) ∪ ... ∪ M(u^t) was checked.
  bool covered_by_unions = false;
};

/// No two distinct points of `a` share an M-subspace.
bool is_independent(const LatticeSubset& a, const PatternFamily& m);

/// Picks the lexicographically first point outside M(u^1) ∪ ... ∪ M(u^{m-1})
/// until none is left. Stops early once `limit` points are chosen (0: no limit).
IndependenceResult independence_greedy(const LatticeSubset& a, const PatternFamily& m, std::size_t limit = 0);
IndependenceResult independence_exact(const LatticeSubset& a, const PatternFamily& m, const SolverOptions& opts = {});

struct DecompositionEnumeration {
  std::int64_t length = 0;
  /// Emitted ordered tuples, at most `cap`.
  std::vector<CoverDecomposition> tuples;
  /// Number of covering sets of `length` distinct subspaces.
  std::uint64_t distinct_sets = 0;
  /// Exact number of ordered tuples (distinct_sets * length!).
  std::uint64_t count = 0;
  bool count_saturated = false;
  bool truncated = false;
  /// (|M| l^d)^l.
  long double bound = 0;
  bool within_bound = false;
};

DecompositionEnumeration enumerate_min_decompositions(const LatticeSubset& a, const PatternFamily& m,
                                                      std::size_t cap, const SolverOptions& opts = {});

struct ForcedSubspace {
  Subspace subspace;
  Pattern c;
  std::int64_t star_covering = 0;
};

/// Non-empty patterns C contained in some B in M, in canonical order.
std::vector<Pattern> sub_patterns(const PatternFamily& m);

/// The first C-subspace S (canonical order) whose trace on A has
/// C*-covering number >= l + 1.
std::optional<ForcedSubspace> forced_subspace_probe(const LatticeSubset& a, const PatternFamily& m, std::int64_t l,
                                                    const SolverOptions& opts = {});

}  // namespace covering
