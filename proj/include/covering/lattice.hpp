#pragma once

// Ambient-box geometry: shapes, points, finite point sets, restriction to
// product sets, the repeated-coordinate set, antichains and diagonal sums.
//
// Coordinate values are 1-based (x_j in [n_j]). Axis indices in the C++ API
// are 0-based array positions; the external file formats use 1-based axes.

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace covering {

inline constexpr int kMaxOrder = 8;
inline constexpr std::int64_t kMaxBoxVolume = std::int64_t{1} << 24;

/// The box [n_1] x ... x [n_d], 1 <= d <= kMaxOrder, volume <= kMaxBoxVolume.
class LatticeShape {
 public:
  LatticeShape() = default;
  LatticeShape(std::initializer_list<int> dims);
  explicit LatticeShape(std::span<const int> dims);

  int order() const noexcept { return order_; }
  int extent(int axis) const noexcept { return dims_[static_cast<std::size_t>(axis)]; }
  std::vector<int> dims() const { return {dims_.begin(), dims_.begin() + order_}; }
  std::int64_t volume() const noexcept;
  int max_extent() const noexcept;

  bool operator==(const LatticeShape&) const = default;

 private:
  std::array<int, kMaxOrder> dims_{};
  int order_ = 0;
};

/// A lattice point with 1-based coordinates. Unused trailing slots are zero,
/// so the defaulted ordering is lexicographic on the coordinates.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<int> coords);
  explicit Point(std::span<const int> coords);

  int order() const noexcept { return order_; }
  std::int32_t operator[](int axis) const noexcept { return c_[static_cast<std::size_t>(axis)]; }
  std::int32_t& operator[](int axis) noexcept { return c_[static_cast<std::size_t>(axis)]; }
  std::vector<int> coords() const { return {c_.begin(), c_.begin() + order_}; }

  /// True iff all d coordinates are pairwise distinct.
  bool has_distinct_coords() const noexcept;

  auto operator<=>(const Point&) const = default;

 private:
  std::array<std::int32_t, kMaxOrder> c_{};
  int order_ = 0;
};

bool in_range(const LatticeShape& shape, const Point& p) noexcept;

/// Row-major (last axis fastest) 0-based linear index of p in the box.
std::int64_t linear_index(const LatticeShape& shape, const Point& p) noexcept;
Point point_at(const LatticeShape& shape, std::int64_t index);

/// Finite set of points of a box, kept sorted lexicographically and
/// deduplicated.
class LatticeSubset {
 public:
  LatticeSubset() = default;
  explicit LatticeSubset(const LatticeShape& shape) : shape_(shape) {}
  /// Throws RangeError for out-of-range points. Duplicates are dropped; their
  /// number is reported through `duplicates` when non-null.
  LatticeSubset(const LatticeShape& shape, std::vector<Point> points,
                std::size_t* duplicates = nullptr);

  const LatticeShape& shape() const noexcept { return shape_; }
  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](std::size_t i) const noexcept { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  bool contains(const Point& p) const noexcept;
  std::optional<std::size_t> index_of(const Point& p) const noexcept;

  bool operator==(const LatticeSubset&) const = default;

 private:
  LatticeShape shape_;
  std::vector<Point> points_;
};

/// Sorted coordinate values for one axis.
using AxisSet = std::vector<std::int32_t>;
using AxisSets = std::vector<AxisSet>;

struct Restriction {
  AxisSets axis_sets;
  LatticeSubset induced;
};

/// A(X_1 x ... x X_d). Axis sets are normalized (sorted, deduplicated).
Restriction restrict(const LatticeSubset& a, AxisSets axis_sets);

/// All points of the box. Throws CapacityError above kMaxBoxVolume.
LatticeSubset full_box(const LatticeShape& shape);

/// E: points whose coordinates are not pairwise distinct.
LatticeSubset repeated_coordinate_set(const LatticeShape& shape);

/// A \ E, computed pointwise without materializing E.
LatticeSubset without_repeated_coordinates(const LatticeSubset& a);

/// A pair x != y of A with x <= y componentwise, if any.
std::optional<std::pair<Point, Point>> comparable_pair(const LatticeSubset& a);
bool is_antichain(const LatticeSubset& a);

/// proj_j(A1) and proj_j(A2) disjoint for every axis j.
bool in_diagonal_sum(const LatticeSubset& a1, const LatticeSubset& a2);

AxisSet projection(const LatticeSubset& a, int axis);
AxisSets projections(const LatticeSubset& a);

LatticeSubset set_union(const LatticeSubset& a, const LatticeSubset& b);
LatticeSubset set_difference(const LatticeSubset& a, const LatticeSubset& b);
LatticeSubset set_intersection(const LatticeSubset& a, const LatticeSubset& b);

/// The subset keeping points at the given (ascending) indices.
LatticeSubset subset_by_indices(const LatticeSubset& a, std::span<const std::size_t> indices);

}  // namespace covering
