#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rlab/graph.hpp"

namespace rlab {

/// Triangle as increasing vertex ids. For a TripartiteGraph this is
/// (a, b, c) in global ids.
using Triangle = std::array<int, 3>;

/// All triangles, lexicographically ordered.
std::vector<Triangle> list_triangles(const Graph& g);
std::uint64_t count_triangles(const Graph& g);
inline std::vector<Triangle> list_triangles(const TripartiteGraph& g) {
  return list_triangles(g.graph());
}

/// Number of triangles through each vertex.
std::vector<int> triangles_per_vertex(const Graph& g);

struct HomOptions {
  bool injective = false;
  /// Search-tree node cap; 0 means unlimited.
  std::uint64_t node_cap = 0;
  /// Optional allowed image set per pattern vertex (size = host vertex count).
  std::vector<Bitset> domains;
};

struct HomCount {
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
  /// False when node_cap stopped the search; count is then a lower bound.
  bool complete = true;
};

/// Counts adjacency-preserving maps pattern -> host by backtracking. Pattern
/// vertices are placed in a connectivity-first order so each candidate set is
/// the intersection of the host rows of already-placed neighbors.
HomCount count_homomorphisms(const Graph& pattern, const Graph& host,
                             const HomOptions& options = {});

/// Calls visit(map) for each homomorphism (map[pattern vertex] = host
/// vertex); visit returns false to stop. Returns the same statistics as
/// count_homomorphisms.
HomCount for_each_homomorphism(
    const Graph& pattern, const Graph& host, const HomOptions& options,
    const std::function<bool(std::span<const int>)>& visit);

std::uint64_t count_automorphisms(const Graph& g);

/// Unlabeled copies of pattern in host: injective homs / |Aut(pattern)|.
/// nullopt if node_cap was hit.
std::optional<std::uint64_t> count_copies(const Graph& pattern, const Graph& host,
                                          std::uint64_t node_cap = 0);

/// Balanced blowup: vertex v becomes clones v*t .. v*t+t-1.
Graph blowup(const Graph& g, int t);
/// Tripartite blowup: part sizes scale by t, local index i becomes i*t+j.
TripartiteGraph blowup(const TripartiteGraph& g, int t);

}  // namespace rlab
