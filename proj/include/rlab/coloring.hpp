#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rlab/graph.hpp"

namespace rlab {

/// Number of proper colorings with colors {0..q-1}, counted exactly up to
/// cutoff: the search stops once the count exceeds cutoff and returns
/// cutoff + 1.
std::uint64_t count_proper_colorings(
    const Graph& g, int q,
    std::uint64_t cutoff = std::numeric_limits<std::uint64_t>::max() - 1);

inline std::uint64_t count_proper_3_colorings(
    const Graph& g, std::uint64_t cutoff = std::numeric_limits<std::uint64_t>::max() - 1) {
  return count_proper_colorings(g, 3, cutoff);
}

struct ColoringCount {
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
  /// False when node_cap stopped the search; count is then a lower bound.
  bool complete = true;
};

/// As count_proper_colorings, but gives up after node_cap search nodes
/// (0 = unlimited).
ColoringCount count_proper_colorings_capped(const Graph& g, int q, std::uint64_t cutoff,
                                            std::uint64_t node_cap);

/// Connected and exactly 6 proper 3-colorings.
bool uniquely_3_colorable(const Graph& g);

/// If g is uniquely 3-colorable: its partition as part labels, normalized so
/// that vertex 0 is in A and the first vertex outside A's class is in B.
std::optional<std::vector<Part>> unique_3_partition(const Graph& g);

/// Calls visit(coloring) for every proper q-coloring (colors 0..q-1); visit
/// returns false to stop. Returns the number visited.
std::uint64_t for_each_proper_coloring(const Graph& g, int q,
                                       const std::function<bool(std::span<const int>)>& visit);

/// Exact chromatic number (0 for the empty graph).
int chromatic_number(const Graph& g);

/// A cycle v1..vs (s >= 3) with c(v1) < ... < c(vs), or nullopt.
std::optional<std::vector<int>> find_increasing_cycle(const Graph& g,
                                                      std::span<const int> coloring);

struct IncreasingResult {
  bool unavoidable = false;
  /// Proper t-coloring without an increasing cycle (when !unavoidable).
  std::vector<int> witness;
  std::uint64_t colorings_checked = 0;
};

/// Every proper t-coloring has an increasing cycle? Throws
/// std::invalid_argument unless chromatic_number(g) == t.
IncreasingResult increasing_cycle_unavoidable(const Graph& g, int t);

}  // namespace rlab
