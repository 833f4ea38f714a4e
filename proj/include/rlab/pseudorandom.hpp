#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rlab/graph.hpp"

namespace rlab {

/// n^{-3/4}.
double default_density(int n);

/// Each of the 3n^2 cross pairs is kept with probability p, drawn from
/// Rng(seed) in the order AB (a-major), BC (b-major), CA (c-major).
TripartiteGraph sample_tripartite(int n, double p, std::uint64_t seed);

enum class DeletionRule {
  Lexicographic,  // the AB edge of each triangle (AB < BC < CA)
  CaFirst,        // the CA edge; for sensitivity checks
};

struct PipelineRecord {
  int n = 0;
  double p = 0;
  std::uint64_t seed = 0;
  DeletionRule rule = DeletionRule::Lexicographic;
  /// Deleted edges as global vertex pairs (u < v), in deletion order.
  std::vector<std::pair<int, int>> deleted_edges;
  std::uint64_t triangle_count_before = 0;
  /// Triangles through each vertex of the input graph.
  std::vector<int> triangles_per_vertex;
  /// Deleted edges incident to each vertex.
  std::vector<int> deleted_per_vertex;

  int max_triangles_per_vertex() const;
  int max_deleted_per_vertex() const;
};

struct PipelineResult {
  TripartiteGraph graph;
  PipelineRecord record;
};

/// Walks the triangles in lexicographic order and, for each one that is
/// still intact, deletes one of its edges chosen by `rule`. The result is
/// triangle-free. The n/p/seed fields of the record are left for the caller.
PipelineResult delete_one_edge_per_triangle(const TripartiteGraph& g,
                                            DeletionRule rule = DeletionRule::Lexicographic);

/// sample_tripartite followed by delete_one_edge_per_triangle.
PipelineResult run_pipeline(int n, double p, std::uint64_t seed,
                            DeletionRule rule = DeletionRule::Lexicographic);

enum class Property {
  HalfSubgraphConnectivity,
  CommonNeighborhood,
  Expansion,
  BigSets,
  TriangleFree,
  UniqueColoring,
};

const char* property_name(Property p);
std::optional<Property> parse_property(const std::string& name);
inline constexpr Property kAllProperties[] = {
    Property::HalfSubgraphConnectivity, Property::CommonNeighborhood, Property::Expansion,
    Property::BigSets, Property::TriangleFree, Property::UniqueColoring};

enum class CheckStatus { Pass, Fail, Inconclusive };
const char* check_status_name(CheckStatus s);

struct CheckOptions {
  /// Exact checking is available only for triangle-free and unique-coloring;
  /// requesting it for another property throws std::invalid_argument.
  bool exact = false;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  /// Half-subgraph connectivity: keep a third of the edges instead of half.
  bool third_of_edges = false;
  /// Expansion: require |N(Z)| > factor * |Z| (2, or 6 before deletion).
  int expansion_factor = 2;
  /// Big sets: require one edge between the sets instead of n.
  bool one_edge = false;
  /// Search-node cap for the unique-coloring count.
  std::uint64_t coloring_node_cap = 50'000'000;
};

/// Sets are global vertex ids; edges are global pairs.
struct PropertyWitness {
  std::vector<int> x, y, z;
  std::vector<std::pair<int, int>> edges;
};

struct CheckResult {
  Property property = Property::TriangleFree;
  CheckStatus status = CheckStatus::Inconclusive;
  /// True when the verdict is a proof; false means "not falsified" for Pass.
  bool exact = false;
  std::uint64_t trials_run = 0;
  std::string detail;
  PropertyWitness witness;
};

/// Falsification checks (see CheckOptions): half-subgraph connectivity
/// samples random edge subsets of H[A u B]; common-neighborhood samples
/// sets of size ceil(n/10) (the binding size, by monotonicity) for all three
/// part pairs; expansion enumerates |Z| <= 2 exactly, then grows Z greedily
/// and tries random sets up to n/12; big-sets samples sets of size
/// ceil(n/100). Each falsifier also tries the lowest-degree vertices first.
CheckResult property_check(const TripartiteGraph& h, Property property,
                           const CheckOptions& options = {});

/// Vertices of part q with a neighbour in x and a neighbour in y.
std::vector<int> common_neighborhood(const TripartiteGraph& h, Part q, const std::vector<int>& x,
                                     const std::vector<int>& y);

}  // namespace rlab
