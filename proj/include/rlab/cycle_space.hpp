#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rlab/equations.hpp"
#include "rlab/graph.hpp"

namespace rlab {

/// "ABC", "ACB", ... : letter i is the role of part i.
std::string role_map_name(const RoleMap& roles);
std::optional<RoleMap> parse_role_map(std::string_view name);

/// Signed weight of an edge traversed from a vertex playing role `from` to
/// one playing role `to`: A->B +1, B->C +1, C->A -2, reversed traversals
/// negated. Throws GraphError if from == to.
Coeff edge_weight(Part from, Part to);

/// Weight equation of one cycle (vertex sequence) of a part-labelled graph;
/// variables are edge ids.
LinearEquation cycle_equation(const Graph& h, const RoleMap& roles, std::span<const int> cycle);

/// Fundamental cycles of a BFS spanning tree rooted at vertex 0, one row per
/// non-tree edge (in edge-id order): the row walks the non-tree edge u->v
/// (u < v) and returns along the tree. Variables are edge ids. Requires part
/// labels and a connected graph (GraphError otherwise).
EquationSystem cycle_equation_system(const Graph& h, const RoleMap& roles = kIdentityRoles);
EquationSystem cycle_equation_system(const TripartiteGraph& h,
                                     const RoleMap& roles = kIdentityRoles);

/// One system per entry of kRoleMaps.
std::vector<EquationSystem> all_six_systems(const Graph& h);
std::vector<EquationSystem> all_six_systems(const TripartiteGraph& h);

/// The subgraph induced on the largest connected component (ties: the one
/// containing the smallest vertex), with the map new id -> old id.
struct Component {
  Graph graph;
  std::vector<int> vertices;
};
Component largest_component(const Graph& g);

}  // namespace rlab
