#pragma once

// Tensors over small prime fields: supports, flattening ranks, an exact
// slice-rank oracle for tiny shapes, and slice rank of antichain-supported
// tensors through the slice covering number of the support.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "covering/cover_solver.hpp"
#include "covering/lattice.hpp"
#include "covering/restrictions.hpp"

namespace covering {

/// F_p for p in {2, 3, 5, 7}; residues are 0..p-1.
class PrimeField {
 public:
  explicit PrimeField(int p = 2);

  int p() const noexcept { return p_; }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const noexcept { return static_cast<std::uint8_t>((a + b) % p_); }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const noexcept {
    return static_cast<std::uint8_t>((a + p_ - b) % p_);
  }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept { return static_cast<std::uint8_t>((a * b) % p_); }
  std::uint8_t neg(std::uint8_t a) const noexcept { return static_cast<std::uint8_t>((p_ - a) % p_); }
  /// Multiplicative inverse of a non-zero residue.
  std::uint8_t inv(std::uint8_t a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  int p_;
};

/// Dense row-major (last axis fastest) tensor of residues.
class FieldTensor {
 public:
  FieldTensor(const LatticeShape& shape, PrimeField field);
  /// Throws RangeError for unreduced residues or a wrong entry count.
  FieldTensor(const LatticeShape& shape, PrimeField field, std::vector<std::uint8_t> entries);

  const LatticeShape& shape() const noexcept { return shape_; }
  const PrimeField& field() const noexcept { return field_; }
  std::span<const std::uint8_t> entries() const noexcept { return entries_; }
  std::uint8_t at(const Point& p) const noexcept { return entries_[static_cast<std::size_t>(linear_index(shape_, p))]; }
  void set(const Point& p, std::uint8_t v);

  bool operator==(const FieldTensor&) const = default;

 private:
  LatticeShape shape_;
  PrimeField field_;
  std::vector<std::uint8_t> entries_;
};

/// Z(T): the points with non-zero entries.
LatticeSubset support(const FieldTensor& t);

/// 0/1 tensor with the given support.
FieldTensor indicator_tensor(const LatticeSubset& a, PrimeField field);

/// Rank over F_p of a row-major rows x cols matrix (Gaussian elimination).
int matrix_rank(std::span<const std::uint8_t> entries, int rows, int cols, PrimeField field);

/// Rank of the n_axis x (prod_{i != axis} n_i) unfolding; axis is 0-based.
int flattening_rank(const FieldTensor& t, int axis);

enum class SliceRankMethod { oracle, antichain_bridge, matrix };

std::string_view to_string(SliceRankMethod m) noexcept;

struct SliceRankResult {
  std::int64_t value = 0;
  SliceRankMethod method = SliceRankMethod::oracle;
  /// For the bridge: a minimum slice cover of the support.
  std::optional<CoverDecomposition> witness;
};

/// Default work budget for the oracle, (d-1) p^(2N) with N = prod n_j.
inline constexpr std::uint64_t kOracleBudget = std::uint64_t{1} << 28;

/// Exact slice rank: matrix rank for d <= 2; otherwise
/// min over T = T_1 + ... + T_d of sum_j flattening_rank(T_j, j), evaluated
/// once per (shape, p) as an iterated min-plus convolution over F_p^N and
/// cached. Throws CapacityError when (d-1) p^(2N) exceeds `budget`.
SliceRankResult slice_rank_oracle(const FieldTensor& t, std::uint64_t budget = kOracleBudget);

/// Requires d >= 2 and an antichain support; returns the slice covering
/// number of the support.
SliceRankResult slice_rank_antichain(const FieldTensor& t, const SolverOptions& opts = {});

/// T(X_1 x ... x X_d) as a tensor on |X_1| x ... x |X_d|. Axis sets must be
/// non-empty.
FieldTensor restrict_tensor(const FieldTensor& t, const AxisSets& axis_sets);

/// T with every entry outside X_1 x ... x X_d zeroed; same slice rank as the
/// restricted tensor.
FieldTensor mask_tensor(const FieldTensor& t, const AxisSets& axis_sets);

enum class CorollaryMode { linear, offdiag, same_cover };

struct CorollaryResult {
  RestrictionCertificate certificate;
  FieldTensor restricted;
  /// Slice rank of the restriction through the bridge.
  std::int64_t restricted_slice_rank = 0;
};

/// Restriction statements for antichain-supported tensors, translated to the
/// slice covering number of the support. Hypotheses: linear sr(T) >= d l,
/// offdiag Mc(Z(T) \ E) >= d^(d+1) l, same-cover sr(T) >= l.
CorollaryResult corollary_pipeline(const FieldTensor& t, CorollaryMode mode, std::int64_t l,
                                   const SolverOptions& opts = {});

}  // namespace covering
