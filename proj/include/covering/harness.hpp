#pragma once

// Instance generators, verification suites that recompute both sides of each
// covering-number relation, the empirical search for c in I_M(A) >= c Mc(A),
// and a search for sets whose small restrictions all lose covering number.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "covering/cover_solver.hpp"
#include "covering/lattice.hpp"
#include "covering/subspaces.hpp"

namespace covering::harness {

enum class GeneratorKind { exhaustive, random, diagonal, antichain, custom };

std::string_view to_string(GeneratorKind k) noexcept;
/// Throws PreconditionError for unknown names.
GeneratorKind generator_kind(std::string_view name);

/// Largest exhaustive frame, in subsets.
inline constexpr std::uint64_t kMaxExhaustive = std::uint64_t{1} << 20;

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::random;
  LatticeShape shape;
  /// Inclusion probability for random and antichain frames.
  double density = 0.3;
  /// Instances for random/antichain frames; largest l for diagonal frames.
  std::size_t count = 100;
  std::uint64_t seed = 1;
  std::vector<LatticeSubset> custom;
};

/// Deterministic given the spec. Exhaustive frames list every subset of the
/// box, the empty one included. Antichain frames sample like random ones, then
/// drop each point comparable to an earlier (lexicographically smaller) kept
/// point. Throws CapacityError when the frame exceeds min(budget, 2^20).
std::vector<LatticeSubset> generate(const GeneratorSpec& spec, std::uint64_t budget = kMaxExhaustive);

/// Human-readable frame description for reports.
std::string describe(const GeneratorSpec& spec);

struct Violation {
  std::size_t instance = 0;
  std::string points;
  std::string relation;
  std::string observed;
};

struct VerificationReport {
  std::string suite;
  std::string frame;
  std::uint64_t seed = 0;
  std::uint64_t instances_checked = 0;
  /// Instances skipped because a solver cap was hit; the report is partial.
  std::uint64_t skipped = 0;
  bool partial = false;
  std::vector<Violation> violations;
  double runtime_seconds = 0;
};

struct SuiteOptions {
  SolverOptions solver;
  std::uint64_t budget = kMaxExhaustive;
  /// Field for the tensor suite.
  int p = 2;
};

const std::vector<std::string>& suite_names();

/// Runs one named suite over the generated frame and every family (the
/// meet-bound suite pairs family i with family i+1, cyclically). An empty
/// family list means the slice family. Throws PreconditionError for unknown
/// suites.
VerificationReport verify_suite(std::string_view name, const GeneratorSpec& gen,
                                const std::vector<PatternFamily>& families, const SuiteOptions& opts = {});

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool operator==(const Rational&) const = default;
};

std::string to_string(const Rational& r);

struct ConstantSearch {
  /// min I_M(A) / Mc(A) over generated A with Mc(A) > 0; unset when none.
  bool found = false;
  Rational c_min;
  LatticeSubset witness;
  std::uint64_t examined = 0;
  std::uint64_t skipped = 0;
  /// True only for exhaustive frames with nothing skipped.
  bool exhaustive = false;
};

ConstantSearch search_constant(const PatternFamily& m, const GeneratorSpec& gen, const SuiteOptions& opts = {});

struct HuntTarget {
  /// Mc(A) >= full_value, yet every restriction with |X_j| <= cap_size has
  /// Mc <= restricted_cap.
  std::int64_t full_value = 0;
  int cap_size = 0;
  std::int64_t restricted_cap = 0;
};

struct HuntResult {
  std::vector<LatticeSubset> findings;
  std::uint64_t examined = 0;
  std::uint64_t skipped = 0;
  bool partial = false;
};

HuntResult counterexample_hunt(const PatternFamily& m, const GeneratorSpec& gen, const HuntTarget& target,
                               const SuiteOptions& opts = {});

}  // namespace covering::harness
