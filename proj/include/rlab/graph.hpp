#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace rlab {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

enum class Part : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<Part, 3> kParts = {Part::A, Part::B, Part::C};

inline int index_of(Part p) { return static_cast<int>(p); }
char part_letter(Part p);

/// roles[index_of(X)] = the part that part X is sent to (or plays the role
/// of). The six bijections, in the order ABC, ACB, BAC, BCA, CAB, CBA, are
/// kRoleMaps.
using RoleMap = std::array<Part, 3>;
inline constexpr RoleMap kIdentityRoles = {Part::A, Part::B, Part::C};
inline constexpr std::array<RoleMap, 6> kRoleMaps = {{
    {Part::A, Part::B, Part::C}, {Part::A, Part::C, Part::B}, {Part::B, Part::A, Part::C},
    {Part::B, Part::C, Part::A}, {Part::C, Part::A, Part::B}, {Part::C, Part::B, Part::A}}};

/// Undirected edge with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph on vertices 0..n-1, immutable after construction.
///
/// Edges are stored sorted and carry a stable index (their position in the
/// sorted list); the cycle-space and coloring modules use that index as the
/// variable id of the edge. Neighborhoods are available both as sorted lists
/// and as bit-rows for fast intersection. An optional part label per vertex
/// records a tripartition.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges,
        std::vector<Part> parts = {});

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }

  bool adjacent(int u, int v) const { return rows_[u].test(v); }
  const Bitset& row(int v) const { return rows_[v]; }
  std::span<const int> neighbors(int v) const { return nbrs_[v]; }
  /// Edge ids parallel to neighbors(v).
  std::span<const int> incident_edges(int v) const { return inc_[v]; }
  int degree(int v) const { return static_cast<int>(nbrs_[v].size()); }
  /// Index of edge {u,v}, or -1.
  int edge_id(int u, int v) const;

  bool has_parts() const { return !parts_.empty(); }
  Part part(int v) const { return parts_[v]; }
  std::span<const Part> parts() const { return parts_; }

  Graph with_parts(std::vector<Part> parts) const;
  Graph induced(std::span<const int> vertices) const;
  Graph without_edges(std::span<const int> edge_ids) const;

  bool connected() const;
  /// Component id per vertex (0-based, numbered by lowest vertex).
  std::vector<int> components() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.parts_ == b.parts_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Part> parts_;
  std::vector<Bitset> rows_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<std::vector<int>> inc_;
};

/// Global vertex reference inside a tripartite graph.
struct PartVertex {
  Part part = Part::A;
  int index = 0;
  friend bool operator==(const PartVertex&, const PartVertex&) = default;
  friend auto operator<=>(const PartVertex&, const PartVertex&) = default;
};

/// Graph with a fixed labeled tripartition A/B/C.
///
/// Global vertex ids are A-vertices first, then B, then C. Edges only run
/// between different parts; they are grouped as AB, BC and CA pair-sets, each
/// pair stored as (index in first part, index in second part).
class TripartiteGraph {
 public:
  using PairList = std::vector<std::pair<int, int>>;

  TripartiteGraph() : TripartiteGraph({0, 0, 0}, {}, {}, {}) {}
  TripartiteGraph(std::array<int, 3> part_sizes, PairList ab, PairList bc,
                  PairList ca);
  /// From global-id edges; both endpoints must be in different parts.
  static TripartiteGraph from_global(std::array<int, 3> part_sizes,
                                     std::span<const std::pair<int, int>> edges);

  const std::array<int, 3>& part_sizes() const { return sizes_; }
  int part_size(Part p) const { return sizes_[index_of(p)]; }
  int vertex_count() const { return graph_.vertex_count(); }
  int edge_count() const { return graph_.edge_count(); }

  int vertex(Part p, int index) const { return offset(p) + index; }
  int offset(Part p) const;
  PartVertex locate(int v) const;

  const PairList& edges_ab() const { return ab_; }
  const PairList& edges_bc() const { return bc_; }
  const PairList& edges_ca() const { return ca_; }

  /// Underlying general graph with part labels attached.
  const Graph& graph() const { return graph_; }

  const std::optional<std::vector<std::int64_t>>& labels() const {
    return labels_;
  }
  TripartiteGraph with_labels(std::vector<std::int64_t> labels) const;

  friend bool operator==(const TripartiteGraph& a, const TripartiteGraph& b) {
    return a.sizes_ == b.sizes_ && a.ab_ == b.ab_ && a.bc_ == b.bc_ &&
           a.ca_ == b.ca_;
  }

 private:
  std::array<int, 3> sizes_{};
  PairList ab_, bc_, ca_;
  Graph graph_;
  std::optional<std::vector<std::int64_t>> labels_;
};

/// Edge-disjoint family of cycles of one odd length.
struct CyclePacking {
  int cycle_length = 3;
  std::vector<std::vector<int>> cycles;

  std::size_t size() const { return cycles.size(); }
};

/// Checks the CyclePacking invariants against g; returns a description of the
/// first violation, or nullopt if the packing is valid.
std::optional<std::string> validate_packing(const Graph& g,
                                            const CyclePacking& packing);

/// True if seq is a cycle of g (distinct vertices, consecutive adjacency,
/// closing edge, length >= 3).
bool is_cycle(const Graph& g, std::span<const int> seq);

}  // namespace rlab
