#include <random>

#include "covering/restrictions.hpp"

namespace covering {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

Coloring finish(const LatticeSubset& a, std::vector<int> colors, std::int64_t off_diagonal) {
  const auto& shape = a.shape();
  const int d = shape.order();
  Coloring out;
  out.axis_sets.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j)
    for (int i = 1; i <= shape.extent(j); ++i)
      if (colors[static_cast<std::size_t>(i - 1)] == j + 1) out.axis_sets[static_cast<std::size_t>(j)].push_back(i);
  out.colors = std::move(colors);
  out.captured = restrict(a, out.axis_sets).induced;
  out.off_diagonal = off_diagonal;
  const auto dd = ipow(d, d);
  out.guaranteed = (off_diagonal + dd - 1) / dd;
  return out;
}

}  // namespace

Coloring disjoint_coloring(const LatticeSubset& a) {
  const auto& shape = a.shape();
  const int d = shape.order();
  const int n = shape.max_extent();
  const auto off = without_repeated_coordinates(a);

  // Scaled by d^d, a point's conditional capture probability is
  // d^(d - unassigned coordinates) while all assigned ones carry the right
  // color, and 0 otherwise. Coloring value i with c lifts the points holding i
  // at axis c by one step and kills the rest; the best c does no worse than
  // the average, which is the current expectation.
  std::vector<std::int64_t> pow_d(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) pow_d[static_cast<std::size_t>(k)] = ipow(d, k);

  std::vector<std::vector<std::pair<std::size_t, int>>> occurrences(static_cast<std::size_t>(n) + 1);
  for (std::size_t x = 0; x < off.size(); ++x)
    for (int j = 0; j < d; ++j) occurrences[static_cast<std::size_t>(off[x][j])].emplace_back(x, j);
  std::vector<char> alive(off.size(), 1);
  std::vector<int> unassigned(off.size(), d);

  std::vector<int> colors(static_cast<std::size_t>(n), 1);
  std::vector<std::int64_t> gain(static_cast<std::size_t>(d));
  for (int i = 1; i <= n; ++i) {
    std::fill(gain.begin(), gain.end(), 0);
    for (auto [x, j] : occurrences[static_cast<std::size_t>(i)])
      if (alive[x]) gain[static_cast<std::size_t>(j)] += pow_d[static_cast<std::size_t>(d - unassigned[x] + 1)];
    int best = 0;
    for (int c = 1; c < d; ++c)
      if (gain[static_cast<std::size_t>(c)] > gain[static_cast<std::size_t>(best)]) best = c;
    colors[static_cast<std::size_t>(i - 1)] = best + 1;
    for (auto [x, j] : occurrences[static_cast<std::size_t>(i)]) {
      if (j == best)
        --unassigned[x];
      else
        alive[x] = 0;
    }
  }
  return finish(a, std::move(colors), static_cast<std::int64_t>(off.size()));
}

Coloring disjoint_coloring_sampled(const LatticeSubset& a, std::uint64_t seed) {
  const int d = a.shape().order();
  const int n = a.shape().max_extent();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> color(1, d);
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (auto& c : colors) c = color(rng);
  const auto off = static_cast<std::int64_t>(without_repeated_coordinates(a).size());
  return finish(a, std::move(colors), off);
}

}  // namespace covering
