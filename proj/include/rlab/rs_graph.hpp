#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rlab/graph.hpp"

namespace rlab {

/// RS(m, R): parts A, B, C each identified with [3m]. Local index i of a
/// part carries the integer label i + 1.
struct RsParameters {
  std::int64_t m = 0;
  std::vector<std::int64_t> r;  // subset of [m]; sorted and deduplicated on use
};

/// Throws std::invalid_argument if m < 1 or R is not a subset of [m].
RsParameters normalized(const RsParameters& p);

/// Edges (a,b) with b-a in R, (b,c) with c-b in R, (c,a) with c-a in 2R.
/// Vertex labels (1..3m in each part) are attached.
TripartiteGraph build_rs_graph(const RsParameters& p);

/// Triangles (a, a+r, a+2r) for a in [m], r in R, as global vertex ids
/// (A-vertex, B-vertex, C-vertex), ordered by (a, r).
CyclePacking canonical_triangle_family(const RsParameters& p);

/// Reads an R file: one integer per line, '#' comments and blank lines ignored.
std::vector<std::int64_t> parse_r_file(std::string_view text);

/// roles[index_of(X)] = part of RS(m, R) that H's part X maps into.
/// Label of each H edge (indexed by H's edge id) under hom: b-a for an AB
/// image, c-b for BC, (c-a)/2 for CA. Throws GraphError naming the first
/// H edge whose image is not an RS edge, or a vertex outside its role's part.
std::vector<std::int64_t> hom_to_assignment(const TripartiteGraph& h, const RoleMap& roles,
                                            std::span<const int> hom,
                                            const TripartiteGraph& rs);

}  // namespace rlab
