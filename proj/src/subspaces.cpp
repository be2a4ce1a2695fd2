#include "covering/subspaces.hpp"

#include <algorithm>
#include <string>

#include "covering/errors.hpp"

namespace covering {

namespace {

void check_order(int d) {
  if (d < 1 || d > kMaxOrder) throw RangeError("order must lie in [1," + std::to_string(kMaxOrder) + "]");
}

}  // namespace

Pattern Pattern::from_axes(std::span<const int> axes) {
  unsigned mask = 0;
  for (int a : axes) {
    if (a < 0 || a >= kMaxOrder) throw RangeError("axis index out of range");
    mask |= 1u << a;
  }
  return Pattern(static_cast<AxisMask>(mask));
}

std::vector<int> Pattern::axes() const {
  std::vector<int> out;
  for (int j = 0; j < kMaxOrder; ++j)
    if (is_free(j)) out.push_back(j);
  return out;
}

PatternFamily::PatternFamily(int order, std::vector<Pattern> patterns) : order_(order), patterns_(std::move(patterns)) {
  check_order(order);
  if (patterns_.empty()) throw PreconditionError("pattern family must be non-empty");
  const auto full = Pattern::full(order);
  for (auto b : patterns_)
    if (!b.subset_of(full)) throw RangeError("pattern uses an axis beyond the family order");
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
}

bool PatternFamily::contains(Pattern b) const noexcept {
  return std::binary_search(patterns_.begin(), patterns_.end(), b);
}

int PatternFamily::max_order() const noexcept {
  int tau = 0;
  for (auto b : patterns_) tau = std::max(tau, b.order());
  return tau;
}

PatternFamily PatternFamily::maximal() const {
  std::vector<Pattern> keep;
  for (auto b : patterns_) {
    const bool dominated = std::any_of(patterns_.begin(), patterns_.end(),
                                       [&](Pattern o) { return o != b && b.subset_of(o); });
    if (!dominated) keep.push_back(b);
  }
  return PatternFamily(order_, std::move(keep));
}

PatternFamily slice_family(int d) {
  check_order(d);
  std::vector<Pattern> ps;
  const auto full = Pattern::full(d).mask();
  for (int j = 0; j < d; ++j) ps.emplace_back(static_cast<AxisMask>(full & ~(1u << j)));
  return PatternFamily(d, std::move(ps));
}

PatternFamily point_family(int d) { return PatternFamily(d, {Pattern(0)}); }

PatternFamily line_family(int d) {
  check_order(d);
  std::vector<Pattern> ps;
  for (int j = 0; j < d; ++j) ps.emplace_back(static_cast<AxisMask>(1u << j));
  return PatternFamily(d, std::move(ps));
}

PatternFamily full_family(int d) {
  check_order(d);
  return PatternFamily(d, {Pattern::full(d)});
}

PatternFamily meet_family(const PatternFamily& m1, const PatternFamily& m2) {
  if (m1.order() != m2.order()) throw PreconditionError("meet of families with different orders");
  std::vector<Pattern> ps;
  for (auto b1 : m1)
    for (auto b2 : m2) ps.push_back(b1 & b2);
  return PatternFamily(m1.order(), std::move(ps));
}

PatternFamily star_family(Pattern c, int d) {
  if (c.order() == 0) throw PreconditionError("C* needs a non-empty C");
  if (!c.subset_of(Pattern::full(d))) throw RangeError("pattern uses an axis beyond the order");
  std::vector<Pattern> ps;
  for (int j : c.axes()) ps.emplace_back(static_cast<AxisMask>(c.mask() & ~(1u << j)));
  return PatternFamily(d, std::move(ps));
}

Subspace::Subspace(const LatticeShape& shape, Pattern pattern, const Point& u)
    : shape_(shape), pattern_(pattern), anchor_(u) {
  if (!in_range(shape, u)) throw RangeError("point outside the box");
  for (int j = 0; j < shape.order(); ++j)
    if (pattern.is_free(j)) anchor_[j] = 0;
}

bool Subspace::contains(const Point& p) const noexcept {
  for (int j = 0; j < shape_.order(); ++j)
    if (!pattern_.is_free(j) && p[j] != anchor_[j]) return false;
  return true;
}

std::int64_t Subspace::size() const noexcept {
  std::int64_t s = 1;
  for (int j = 0; j < shape_.order(); ++j)
    if (pattern_.is_free(j)) s *= shape_.extent(j);
  return s;
}

LatticeSubset Subspace::points() const {
  const int d = shape_.order();
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(size()));
  Point p = anchor_;
  for (int j = 0; j < d; ++j)
    if (pattern_.is_free(j)) p[j] = 1;
  while (true) {
    pts.push_back(p);
    int j = d - 1;
    for (; j >= 0; --j) {
      if (!pattern_.is_free(j)) continue;
      if (p[j] < shape_.extent(j)) {
        ++p[j];
        break;
      }
      p[j] = 1;
    }
    if (j < 0) break;
  }
  return LatticeSubset(shape_, std::move(pts));
}

bool Subspace::inside(const Subspace& other) const noexcept {
  if (!pattern_.subset_of(other.pattern_)) return false;
  for (int j = 0; j < shape_.order(); ++j)
    if (!other.pattern_.is_free(j) && anchor_[j] != other.anchor_[j]) return false;
  return true;
}

std::optional<Subspace> intersect(const Subspace& s1, const Subspace& s2) {
  if (s1.shape() != s2.shape()) throw PreconditionError("subspaces of different boxes");
  const auto& shape = s1.shape();
  Point u;
  std::vector<int> c(static_cast<std::size_t>(shape.order()));
  for (int j = 0; j < shape.order(); ++j) {
    const bool f1 = s1.pattern().is_free(j);
    const bool f2 = s2.pattern().is_free(j);
    if (!f1 && !f2 && s1.fixed(j) != s2.fixed(j)) return std::nullopt;
    c[static_cast<std::size_t>(j)] = !f1 ? s1.fixed(j) : (!f2 ? s2.fixed(j) : 1);
  }
  return Subspace(shape, s1.pattern() & s2.pattern(), Point(std::span<const int>(c)));
}

bool conflict(const Point& p, const Point& q, const PatternFamily& m) noexcept {
  unsigned differ = 0;
  for (int j = 0; j < m.order(); ++j)
    if (p[j] != q[j]) differ |= 1u << j;
  if (differ == 0) return false;
  for (auto b : m)
    if ((differ & ~static_cast<unsigned>(b.mask())) == 0) return true;
  return false;
}

std::vector<Subspace> subspaces_through(const LatticeShape& shape, const Point& u, const PatternFamily& m) {
  if (m.order() != shape.order()) throw PreconditionError("family order differs from shape order");
  std::vector<Subspace> out;
  out.reserve(m.size());
  for (auto b : m) out.emplace_back(shape, b, u);
  return out;
}

LatticeSubset union_through(const LatticeShape& shape, const Point& u, const PatternFamily& m) {
  LatticeSubset acc(shape);
  for (const auto& s : subspaces_through(shape, u, m)) acc = set_union(acc, s.points());
  return acc;
}

std::vector<SubspaceTrace> enumerate_subspaces_meeting(const LatticeSubset& a, const PatternFamily& m) {
  const auto& shape = a.shape();
  if (m.order() != shape.order()) throw PreconditionError("family order differs from shape order");
  std::vector<SubspaceTrace> out;
  std::vector<std::pair<Point, std::size_t>> keyed(a.size());
  for (auto b : m) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      Point key = a[i];
      for (int j = 0; j < shape.order(); ++j)
        if (b.is_free(j)) key[j] = 0;
      keyed[i] = {key, i};
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size();) {
      SubspaceTrace st{Subspace(shape, b, a[keyed[i].second]), {}};
      std::size_t k = i;
      for (; k < keyed.size() && keyed[k].first == keyed[i].first; ++k) st.members.push_back(keyed[k].second);
      out.push_back(std::move(st));
      i = k;
    }
  }
  return out;
}

std::vector<Subspace> enumerate_subspaces(const LatticeShape& shape, Pattern b) {
  std::vector<int> fixed_dims(static_cast<std::size_t>(shape.order()));
  for (int j = 0; j < shape.order(); ++j) fixed_dims[static_cast<std::size_t>(j)] = b.is_free(j) ? 1 : shape.extent(j);
  const LatticeShape frame{std::span<const int>(fixed_dims)};
  std::vector<Subspace> out;
  for (std::int64_t i = 0; i < frame.volume(); ++i) out.emplace_back(shape, b, point_at(frame, i));
  return out;
}

std::vector<std::size_t> trace_indices(const LatticeSubset& a, const Subspace& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (s.contains(a[i])) out.push_back(i);
  return out;
}

LatticeSubset trace(const LatticeSubset& a, const Subspace& s) {
  const auto idx = trace_indices(a, s);
  return subset_by_indices(a, idx);
}

}  // namespace covering
