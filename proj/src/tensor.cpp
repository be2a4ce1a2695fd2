#include "covering/tensor.hpp"

#include <algorithm>
#include <string>

#include "covering/errors.hpp"
#include "covering/simd/kernels.hpp"

namespace covering {

PrimeField::PrimeField(int p) : p_(p) {
  if (p != 2 && p != 3 && p != 5 && p != 7) throw RangeError("supported primes are 2, 3, 5 and 7, got " + std::to_string(p));
}

std::uint8_t PrimeField::inv(std::uint8_t a) const {
  if (a % p_ == 0) throw RangeError("zero has no inverse");
  for (int b = 1; b < p_; ++b)
    if ((a * b) % p_ == 1) return static_cast<std::uint8_t>(b);
  return 0;
}

FieldTensor::FieldTensor(const LatticeShape& shape, PrimeField field)
    : shape_(shape), field_(field), entries_(static_cast<std::size_t>(shape.volume()), 0) {}

FieldTensor::FieldTensor(const LatticeShape& shape, PrimeField field, std::vector<std::uint8_t> entries)
    : shape_(shape), field_(field), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(shape_.volume()))
    throw RangeError("tensor needs " + std::to_string(shape_.volume()) + " entries, got " +
                     std::to_string(entries_.size()));
  for (auto v : entries_)
    if (v >= field_.p()) throw RangeError("tensor entry " + std::to_string(v) + " is not reduced mod p");
}

void FieldTensor::set(const Point& p, std::uint8_t v) {
  if (!in_range(shape_, p)) throw RangeError("point outside the tensor box");
  if (v >= field_.p()) throw RangeError("entry is not reduced mod p");
  entries_[static_cast<std::size_t>(linear_index(shape_, p))] = v;
}

LatticeSubset support(const FieldTensor& t) {
  std::vector<Point> pts;
  const auto e = t.entries();
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) pts.push_back(point_at(t.shape(), static_cast<std::int64_t>(i)));
  return LatticeSubset(t.shape(), std::move(pts));
}

FieldTensor indicator_tensor(const LatticeSubset& a, PrimeField field) {
  FieldTensor t(a.shape(), field);
  for (const auto& p : a) t.set(p, 1);
  return t;
}

int matrix_rank(std::span<const std::uint8_t> entries, int rows, int cols, PrimeField field) {
  if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != entries.size())
    throw PreconditionError("matrix dimensions do not match the entry count");
  const auto& k = simd::kernels();
  const auto p = static_cast<std::uint8_t>(field.p());
  std::vector<std::uint8_t> m(entries.begin(), entries.end());
  const auto row = [&](int r) { return m.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(cols); };
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (row(r)[c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank) std::swap_ranges(row(pivot), row(pivot) + cols, row(rank));
    const auto inv = field.inv(row(rank)[c]);
    for (int j = 0; j < cols; ++j) row(rank)[j] = field.mul(row(rank)[j], inv);
    for (int r = rank + 1; r < rows; ++r) {
      const auto v = row(r)[c];
      if (v != 0) k.axpy_mod_p(row(r), row(rank), field.neg(v), p, static_cast<std::size_t>(cols));
    }
    ++rank;
  }
  return rank;
}

int flattening_rank(const FieldTensor& t, int axis) {
  const auto& shape = t.shape();
  if (axis < 0 || axis >= shape.order()) throw RangeError("axis out of range");
  const int rows = shape.extent(axis);
  const auto vol = shape.volume();
  const int cols = static_cast<int>(vol / rows);
  // Column index: row-major index over the remaining axes.
  std::int64_t inner = 1;
  for (int j = axis + 1; j < shape.order(); ++j) inner *= shape.extent(j);
  std::vector<std::uint8_t> m(static_cast<std::size_t>(vol));
  const auto e = t.entries();
  for (std::int64_t i = 0; i < vol; ++i) {
    const auto r = (i / inner) % rows;
    const auto col = (i / (inner * rows)) * inner + i % inner;
    m[static_cast<std::size_t>(r * cols + col)] = e[static_cast<std::size_t>(i)];
  }
  return matrix_rank(m, rows, cols, t.field());
}

std::string_view to_string(SliceRankMethod m) noexcept {
  switch (m) {
    case SliceRankMethod::oracle: return "oracle";
    case SliceRankMethod::antichain_bridge: return "antichain-bridge";
    case SliceRankMethod::matrix: return "matrix";
  }
  return "?";
}

SliceRankResult slice_rank_antichain(const FieldTensor& t, const SolverOptions& opts) {
  const int d = t.shape().order();
  if (d < 2) throw PreconditionError("the antichain bridge needs order d >= 2");
  const auto z = support(t);
  if (auto pair = comparable_pair(z)) {
    std::string msg = "support is not an antichain: ";
    for (const auto* p : {&pair->first, &pair->second}) {
      msg += '(';
      for (int j = 0; j < d; ++j) msg += (j ? "," : "") + std::to_string((*p)[j]);
      msg += p == &pair->first ? ") <= " : ")";
    }
    throw PreconditionError(msg);
  }
  auto cover = covering_number_exact(z, slice_family(d), opts);
  return {cover.value, SliceRankMethod::antichain_bridge, std::move(cover.witness)};
}

FieldTensor restrict_tensor(const FieldTensor& t, const AxisSets& axis_sets) {
  const auto& shape = t.shape();
  if (axis_sets.size() != static_cast<std::size_t>(shape.order())) throw PreconditionError("need one axis set per axis");
  std::vector<int> dims;
  for (const auto& xs : axis_sets) {
    if (xs.empty()) throw PreconditionError("restricted tensor needs non-empty axis sets");
    dims.push_back(static_cast<int>(xs.size()));
  }
  const LatticeShape sub{std::span<const int>(dims)};
  FieldTensor out(sub, t.field());
  for (std::int64_t i = 0; i < sub.volume(); ++i) {
    const auto q = point_at(sub, i);
    Point p = q;
    for (int j = 0; j < shape.order(); ++j) {
      const auto x = axis_sets[static_cast<std::size_t>(j)][static_cast<std::size_t>(q[j] - 1)];
      if (x < 1 || x > shape.extent(j)) throw RangeError("axis value outside the box");
      p[j] = x;
    }
    out.set(q, t.at(p));
  }
  return out;
}

FieldTensor mask_tensor(const FieldTensor& t, const AxisSets& axis_sets) {
  const auto kept = restrict(support(t), axis_sets).induced;
  FieldTensor out(t.shape(), t.field());
  for (const auto& p : kept) out.set(p, t.at(p));
  return out;
}

CorollaryResult corollary_pipeline(const FieldTensor& t, CorollaryMode mode, std::int64_t l, const SolverOptions& opts) {
  const int d = t.shape().order();
  if (d < 2) throw PreconditionError("tensor restriction statements need order d >= 2");
  const auto z = support(t);
  if (!is_antichain(z)) throw PreconditionError("tensor support is not an antichain");
  const auto m = slice_family(d);
  RestrictionCertificate cert;
  switch (mode) {
    case CorollaryMode::linear: cert = restrict_linear(z, m, l, opts); break;
    case CorollaryMode::offdiag: cert = restrict_offdiagonal(z, m, l, opts); break;
    case CorollaryMode::same_cover: cert = restrict_same_cover(z, m, l, opts).certificate; break;
  }
  auto restricted = mask_tensor(t, cert.restriction.axis_sets);
  // The restricted support is a sub-antichain, so the bridge applies.
  const auto sr = l == 0 && support(restricted).empty()
                      ? std::int64_t{0}
                      : slice_rank_antichain(restricted, opts).value;
  return {std::move(cert), std::move(restricted), sr};
}

}  // namespace covering
