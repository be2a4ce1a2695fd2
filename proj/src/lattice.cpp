#include "covering/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "covering/errors.hpp"

namespace covering {

namespace {

std::string point_string(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (int j = 0; j < p.order(); ++j) os << (j ? "," : "") << p[j];
  os << ')';
  return os.str();
}

void check_same_shape(const LatticeSubset& a, const LatticeSubset& b) {
  if (a.shape() != b.shape()) throw PreconditionError("lattice subsets have different shapes");
}

}  // namespace

LatticeShape::LatticeShape(std::initializer_list<int> dims)
    : LatticeShape(std::span<const int>(dims.begin(), dims.size())) {}

LatticeShape::LatticeShape(std::span<const int> dims) {
  if (dims.empty()) throw RangeError("shape must have at least one axis");
  if (dims.size() > static_cast<std::size_t>(kMaxOrder))
    throw CapacityError("shape order " + std::to_string(dims.size()) + " exceeds the supported maximum " +
                        std::to_string(kMaxOrder));
  std::int64_t vol = 1;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (dims[j] < 1) throw RangeError("shape extents must be positive");
    vol *= dims[j];
    if (vol > kMaxBoxVolume) throw CapacityError("box volume exceeds 2^24 points");
    dims_[j] = dims[j];
  }
  order_ = static_cast<int>(dims.size());
}

std::int64_t LatticeShape::volume() const noexcept {
  std::int64_t vol = 1;
  for (int j = 0; j < order_; ++j) vol *= extent(j);
  return vol;
}

int LatticeShape::max_extent() const noexcept {
  int m = 0;
  for (int j = 0; j < order_; ++j) m = std::max(m, extent(j));
  return m;
}

Point::Point(std::initializer_list<int> coords) : Point(std::span<const int>(coords.begin(), coords.size())) {}

Point::Point(std::span<const int> coords) {
  if (coords.size() > static_cast<std::size_t>(kMaxOrder)) throw CapacityError("point order exceeds maximum");
  std::copy(coords.begin(), coords.end(), c_.begin());
  order_ = static_cast<int>(coords.size());
}

bool Point::has_distinct_coords() const noexcept {
  for (int i = 0; i < order_; ++i)
    for (int j = i + 1; j < order_; ++j)
      if (c_[static_cast<std::size_t>(i)] == c_[static_cast<std::size_t>(j)]) return false;
  return true;
}

bool in_range(const LatticeShape& shape, const Point& p) noexcept {
  if (p.order() != shape.order()) return false;
  for (int j = 0; j < shape.order(); ++j)
    if (p[j] < 1 || p[j] > shape.extent(j)) return false;
  return true;
}

std::int64_t linear_index(const LatticeShape& shape, const Point& p) noexcept {
  std::int64_t idx = 0;
  for (int j = 0; j < shape.order(); ++j) idx = idx * shape.extent(j) + (p[j] - 1);
  return idx;
}

Point point_at(const LatticeShape& shape, std::int64_t index) {
  std::array<int, kMaxOrder> c{};
  for (int j = shape.order() - 1; j >= 0; --j) {
    c[static_cast<std::size_t>(j)] = static_cast<int>(index % shape.extent(j)) + 1;
    index /= shape.extent(j);
  }
  return Point(std::span<const int>(c.data(), static_cast<std::size_t>(shape.order())));
}

LatticeSubset::LatticeSubset(const LatticeShape& shape, std::vector<Point> points, std::size_t* duplicates)
    : shape_(shape), points_(std::move(points)) {
  for (const auto& p : points_)
    if (!in_range(shape_, p)) throw RangeError("point " + point_string(p) + " is outside the box");
  std::sort(points_.begin(), points_.end());
  const auto before = points_.size();
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  if (duplicates) *duplicates = before - points_.size();
}

bool LatticeSubset::contains(const Point& p) const noexcept {
  return std::binary_search(points_.begin(), points_.end(), p);
}

std::optional<std::size_t> LatticeSubset::index_of(const Point& p) const noexcept {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

Restriction restrict(const LatticeSubset& a, AxisSets axis_sets) {
  const auto& shape = a.shape();
  if (axis_sets.size() != static_cast<std::size_t>(shape.order()))
    throw PreconditionError("restriction needs one axis set per axis");
  std::vector<std::vector<char>> member(axis_sets.size());
  for (std::size_t j = 0; j < axis_sets.size(); ++j) {
    auto& xs = axis_sets[j];
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const int n = shape.extent(static_cast<int>(j));
    member[j].assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto x : xs) {
      if (x < 1 || x > n)
        throw RangeError("axis value " + std::to_string(x) + " outside [1," + std::to_string(n) + "] on axis " +
                         std::to_string(j + 1));
      member[j][static_cast<std::size_t>(x)] = 1;
    }
  }
  std::vector<Point> kept;
  for (const auto& p : a) {
    bool inside = true;
    for (int j = 0; j < shape.order() && inside; ++j) inside = member[static_cast<std::size_t>(j)][static_cast<std::size_t>(p[j])];
    if (inside) kept.push_back(p);
  }
  return {std::move(axis_sets), LatticeSubset(shape, std::move(kept))};
}

LatticeSubset full_box(const LatticeShape& shape) {
  const auto vol = shape.volume();
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(vol));
  for (std::int64_t i = 0; i < vol; ++i) pts.push_back(point_at(shape, i));
  return LatticeSubset(shape, std::move(pts));
}

LatticeSubset repeated_coordinate_set(const LatticeShape& shape) {
  std::vector<Point> pts;
  const auto vol = shape.volume();
  for (std::int64_t i = 0; i < vol; ++i) {
    auto p = point_at(shape, i);
    if (!p.has_distinct_coords()) pts.push_back(p);
  }
  return LatticeSubset(shape, std::move(pts));
}

LatticeSubset without_repeated_coordinates(const LatticeSubset& a) {
  std::vector<Point> pts;
  for (const auto& p : a)
    if (p.has_distinct_coords()) pts.push_back(p);
  return LatticeSubset(a.shape(), std::move(pts));
}

std::optional<std::pair<Point, Point>> comparable_pair(const LatticeSubset& a) {
  const int d = a.shape().order();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = i + 1; k < a.size(); ++k) {
      // Lexicographic order means only a[i] <= a[k] is possible.
      bool le = true;
      for (int j = 0; j < d && le; ++j) le = a[i][j] <= a[k][j];
      if (le) return std::make_pair(a[i], a[k]);
    }
  }
  return std::nullopt;
}

bool is_antichain(const LatticeSubset& a) { return !comparable_pair(a).has_value(); }

AxisSet projection(const LatticeSubset& a, int axis) {
  AxisSet xs;
  xs.reserve(a.size());
  for (const auto& p : a) xs.push_back(p[axis]);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

AxisSets projections(const LatticeSubset& a) {
  AxisSets out;
  for (int j = 0; j < a.shape().order(); ++j) out.push_back(projection(a, j));
  return out;
}

bool in_diagonal_sum(const LatticeSubset& a1, const LatticeSubset& a2) {
  check_same_shape(a1, a2);
  for (int j = 0; j < a1.shape().order(); ++j) {
    const auto x1 = projection(a1, j);
    const auto x2 = projection(a2, j);
    AxisSet both;
    std::set_intersection(x1.begin(), x1.end(), x2.begin(), x2.end(), std::back_inserter(both));
    if (!both.empty()) return false;
  }
  return true;
}

LatticeSubset set_union(const LatticeSubset& a, const LatticeSubset& b) {
  check_same_shape(a, b);
  std::vector<Point> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return LatticeSubset(a.shape(), std::move(out));
}

LatticeSubset set_difference(const LatticeSubset& a, const LatticeSubset& b) {
  check_same_shape(a, b);
  std::vector<Point> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return LatticeSubset(a.shape(), std::move(out));
}

LatticeSubset set_intersection(const LatticeSubset& a, const LatticeSubset& b) {
  check_same_shape(a, b);
  std::vector<Point> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return LatticeSubset(a.shape(), std::move(out));
}

LatticeSubset subset_by_indices(const LatticeSubset& a, std::span<const std::size_t> indices) {
  std::vector<Point> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(a[i]);
  return LatticeSubset(a.shape(), std::move(out));
}

}  // namespace covering
