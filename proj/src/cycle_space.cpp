#include "rlab/cycle_space.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace rlab {

std::string role_map_name(const RoleMap& roles) {
  std::string s;
  for (Part p : roles) s += static_cast<char>(std::toupper(part_letter(p)));
  return s;
}

std::optional<RoleMap> parse_role_map(std::string_view name) {
  for (const RoleMap& r : kRoleMaps)
    if (role_map_name(r) == name) return r;
  return std::nullopt;
}

Coeff edge_weight(Part from, Part to) {
  // potential f(A)=0, f(B)=1, f(C)=2; C->A wraps around with -2
  static constexpr Coeff w[3][3] = {{0, 1, 2}, {-1, 0, 1}, {-2, -1, 0}};
  if (from == to) throw GraphError("edge inside a part has no weight");
  return w[index_of(from)][index_of(to)];
}

namespace {

Part role(const Graph& h, const RoleMap& roles, int v) { return roles[index_of(h.part(v))]; }

void require_parts(const Graph& h) {
  if (!h.has_parts() && h.vertex_count() > 0)
    throw GraphError("cycle equations need part labels");
}

}  // namespace

LinearEquation cycle_equation(const Graph& h, const RoleMap& roles, std::span<const int> cycle) {
  require_parts(h);
  if (!is_cycle(h, cycle)) throw GraphError("not a cycle");
  std::map<int, Coeff> terms;
  const std::size_t len = cycle.size();
  for (std::size_t i = 0; i < len; ++i) {
    const int u = cycle[i], v = cycle[(i + 1) % len];
    terms[h.edge_id(u, v)] += edge_weight(role(h, roles, u), role(h, roles, v));
  }
  return LinearEquation(h.edge_count(), terms);
}

EquationSystem cycle_equation_system(const Graph& h, const RoleMap& roles) {
  require_parts(h);
  const int n = h.vertex_count();
  if (n > 0 && !h.connected()) throw GraphError("cycle equations need a connected graph");
  std::vector<int> parent(n, -1), depth(n, 0), parent_edge(n, -1);
  std::vector<char> tree_edge(h.edge_count(), 0), seen(n, 0);
  if (n > 0) {
    std::deque<int> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int id : h.incident_edges(u)) {
        const Edge& e = h.edge(id);
        const int w = e.u == u ? e.v : e.u;
        if (seen[w]) continue;
        seen[w] = 1;
        parent[w] = u;
        parent_edge[w] = id;
        depth[w] = depth[u] + 1;
        tree_edge[id] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<LinearEquation> rows;
  for (int id = 0; id < h.edge_count(); ++id) {
    if (tree_edge[id]) continue;
    const Edge& e = h.edge(id);
    std::map<int, Coeff> terms;
    terms[id] += edge_weight(role(h, roles, e.u), role(h, roles, e.v));
    // Tree path v -> u: climb from both ends to the common ancestor.
    int a = e.v, b = e.u;
    std::vector<int> down;  // vertices from u side, walked later in reverse
    while (a != b) {
      if (depth[a] >= depth[b]) {
        const int p = parent[a];
        terms[parent_edge[a]] += edge_weight(role(h, roles, a), role(h, roles, p));
        a = p;
      } else {
        down.push_back(b);
        b = parent[b];
      }
    }
    for (auto it = down.rbegin(); it != down.rend(); ++it) {
      const int x = *it;
      terms[parent_edge[x]] += edge_weight(role(h, roles, parent[x]), role(h, roles, x));
    }
    rows.emplace_back(h.edge_count(), terms);
  }
  return EquationSystem(h.edge_count(), std::move(rows));
}

EquationSystem cycle_equation_system(const TripartiteGraph& h, const RoleMap& roles) {
  return cycle_equation_system(h.graph(), roles);
}

std::vector<EquationSystem> all_six_systems(const Graph& h) {
  std::vector<EquationSystem> out;
  for (const RoleMap& r : kRoleMaps) {
    out.push_back(cycle_equation_system(h, r));
    out.back().set_name(role_map_name(r));
  }
  return out;
}

std::vector<EquationSystem> all_six_systems(const TripartiteGraph& h) {
  return all_six_systems(h.graph());
}

Component largest_component(const Graph& g) {
  Component out;
  const auto comp = g.components();
  const int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<int> size(count, 0);
  for (int c : comp) ++size[c];
  const int best = count == 0 ? -1
                              : static_cast<int>(std::max_element(size.begin(), size.end()) -
                                                 size.begin());
  for (int v = 0; v < g.vertex_count(); ++v)
    if (comp[v] == best) out.vertices.push_back(v);
  out.graph = g.induced(out.vertices);
  return out;
}

}  // namespace rlab
