#pragma once

// Coordinate patterns B ⊆ [d], pattern families M, and concrete B-subspaces:
// the points agreeing with a fixed assignment on the axes outside B.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "covering/lattice.hpp"

namespace covering {

/// Bit j set means axis j (0-based) is free.
using AxisMask = std::uint8_t;

class Pattern {
 public:
  constexpr Pattern() = default;
  constexpr explicit Pattern(AxisMask mask) : mask_(mask) {}
  /// From 0-based axis indices.
  static Pattern from_axes(std::span<const int> axes);
  static constexpr Pattern full(int d) { return Pattern(static_cast<AxisMask>((1u << d) - 1u)); }

  constexpr AxisMask mask() const noexcept { return mask_; }
  constexpr int order() const noexcept { return std::popcount(static_cast<unsigned>(mask_)); }
  constexpr bool is_free(int axis) const noexcept { return (mask_ >> axis) & 1u; }
  constexpr bool subset_of(Pattern other) const noexcept { return (mask_ & ~other.mask_) == 0; }
  constexpr Pattern operator&(Pattern other) const noexcept { return Pattern(mask_ & other.mask_); }
  std::vector<int> axes() const;

  constexpr bool operator==(const Pattern&) const = default;
  /// Canonical order: by size, then by bitmask.
  constexpr std::strong_ordering operator<=>(const Pattern& o) const noexcept {
    if (auto c = order() <=> o.order(); c != 0) return c;
    return mask_ <=> o.mask_;
  }

 private:
  AxisMask mask_ = 0;
};

/// A non-empty set of patterns over [d], sorted canonically.
class PatternFamily {
 public:
  PatternFamily() = default;
  PatternFamily(int order, std::vector<Pattern> patterns);

  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return patterns_.size(); }
  std::span<const Pattern> patterns() const noexcept { return patterns_; }
  auto begin() const noexcept { return patterns_.begin(); }
  auto end() const noexcept { return patterns_.end(); }
  const Pattern& operator[](std::size_t i) const noexcept { return patterns_[i]; }

  bool contains(Pattern b) const noexcept;
  /// Largest pattern order (tau).
  int max_order() const noexcept;
  /// Patterns not strictly contained in another member. Covers by M and by
  /// maximal(M) have the same minimum length.
  PatternFamily maximal() const;

  bool operator==(const PatternFamily&) const = default;

 private:
  int order_ = 0;
  std::vector<Pattern> patterns_;
};

/// { [d] \ {j} : j in [d] }.
PatternFamily slice_family(int d);
/// {∅}: subspaces are single points.
PatternFamily point_family(int d);
/// { {j} : j in [d] }.
PatternFamily line_family(int d);
/// {[d]}: the only subspace is the whole box.
PatternFamily full_family(int d);

/// { B1 ∩ B2 : B1 in M1, B2 in M2 }.
PatternFamily meet_family(const PatternFamily& m1, const PatternFamily& m2);

/// C* = { C \ {j} : j in C }. Throws PreconditionError for empty C.
PatternFamily star_family(Pattern c, int d);

class Subspace {
 public:
  Subspace() = default;
  /// The unique B-subspace through u.
  Subspace(const LatticeShape& shape, Pattern pattern, const Point& u);

  const LatticeShape& shape() const noexcept { return shape_; }
  Pattern pattern() const noexcept { return pattern_; }
  /// Fixed coordinate on a non-free axis.
  std::int32_t fixed(int axis) const noexcept { return anchor_[axis]; }
  /// Fixed coordinates with zeros on free axes.
  const Point& anchor() const noexcept { return anchor_; }

  bool contains(const Point& p) const noexcept;
  std::int64_t size() const noexcept;
  /// Materialized point set. Throws CapacityError for oversized subspaces.
  LatticeSubset points() const;
  /// S ⊆ other.
  bool inside(const Subspace& other) const noexcept;

  bool operator==(const Subspace& o) const noexcept {
    return pattern_ == o.pattern_ && anchor_ == o.anchor_ && shape_ == o.shape_;
  }
  std::strong_ordering operator<=>(const Subspace& o) const noexcept {
    if (auto c = pattern_ <=> o.pattern_; c != 0) return c;
    return anchor_ <=> o.anchor_;
  }

 private:
  LatticeShape shape_;
  Pattern pattern_;
  Point anchor_;
};

/// S1 ∩ S2, a (B1 ∩ B2)-subspace, or nullopt when the fixings disagree.
std::optional<Subspace> intersect(const Subspace& s1, const Subspace& s2);

/// p != q lie in a common M-subspace: they agree off B for some B in M.
bool conflict(const Point& p, const Point& q, const PatternFamily& m) noexcept;

/// q ∈ M(u), the union of the M-subspaces through u.
inline bool in_union_through(const Point& u, const Point& q, const PatternFamily& m) noexcept {
  return u == q || conflict(u, q, m);
}

/// One subspace per pattern of M, in family order.
std::vector<Subspace> subspaces_through(const LatticeShape& shape, const Point& u, const PatternFamily& m);

/// M(u) materialized.
LatticeSubset union_through(const LatticeShape& shape, const Point& u, const PatternFamily& m);

struct SubspaceTrace {
  Subspace subspace;
  /// Indices into A of the points of S ∩ A, ascending.
  std::vector<std::size_t> members;
};

/// Every M-subspace meeting A with its trace; ordered by pattern, then anchor.
std::vector<SubspaceTrace> enumerate_subspaces_meeting(const LatticeSubset& a, const PatternFamily& m);

/// Every B-subspace of the box, ordered by anchor.
std::vector<Subspace> enumerate_subspaces(const LatticeShape& shape, Pattern b);

/// Indices of A inside S.
std::vector<std::size_t> trace_indices(const LatticeSubset& a, const Subspace& s);
LatticeSubset trace(const LatticeSubset& a, const Subspace& s);

}  // namespace covering
