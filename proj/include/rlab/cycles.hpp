#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rlab/graph.hpp"

namespace rlab {

enum class SearchStatus { Found, NotFound, BudgetExceeded };

struct CycleSearch {
  SearchStatus status = SearchStatus::NotFound;
  std::vector<int> cycle;
  std::uint64_t nodes = 0;
};

/// Finds a cycle of exactly `length` vertices inside the vertex set `allowed`
/// (all vertices if empty) by depth-first path extension from each start
/// vertex in increasing order, with every other cycle vertex larger than the
/// start. Paths are pruned when the remaining steps cannot reach the start
/// (breadth-first distances). The first cycle found is the lexicographically
/// smallest under that canonical rotation. node_cap = 0 means unlimited.
CycleSearch find_cycle(const Graph& g, int length, const Bitset& allowed = {},
                       std::uint64_t node_cap = 0);

/// Greedy maximal packing of edge-disjoint cycles of the given odd length.
/// Start vertices are scanned in increasing order; for each, the smallest
/// cycle through it (all other vertices larger) in the residual graph is
/// packed until none remains. The result is maximal: the residual graph has
/// no cycle of that length.
CyclePacking greedy_edge_disjoint_packing(const Graph& g, int cycle_length);

enum class PeelOutcome { OddCycle, RemainderBipartite, RemainderEmpty };

struct PeelResult {
  PeelOutcome outcome = PeelOutcome::RemainderEmpty;
  std::vector<int> remaining;  ///< surviving vertices, increasing
  std::vector<int> cycle;      ///< shortest odd cycle of the remainder
  double threshold = 0.0;      ///< epsilon * n
};

/// Deletes vertices of current degree < epsilon*n (n = original count) until
/// none remain, then returns a shortest odd cycle of what is left, found by
/// breadth-first parity layers from every surviving vertex.
PeelResult shortest_odd_cycle_peel(const Graph& g, double epsilon);

/// Shortest odd cycle of g (empty if g is bipartite).
std::vector<int> shortest_odd_cycle(const Graph& g);

}  // namespace rlab
