#include "rlab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rlab {

char part_letter(Part p) { return "abc"[index_of(p)]; }

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges,
             std::vector<Part> parts)
    : n_(vertex_count), parts_(std::move(parts)) {
  if (n_ < 0) throw GraphError("negative vertex count");
  if (!parts_.empty() && static_cast<int>(parts_.size()) != n_)
    throw GraphError("part label count does not match vertex count");

  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_)
      throw GraphError("edge endpoint out of range: " + std::to_string(a) +
                       " " + std::to_string(b));
    if (a == b) throw GraphError("self-loop at vertex " + std::to_string(a));
    edges_.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw GraphError("duplicate edge " + std::to_string(dup->u) + " " +
                     std::to_string(dup->v));

  rows_.assign(n_, Bitset(n_));
  nbrs_.assign(n_, {});
  inc_.assign(n_, {});
  for (int id = 0; id < edge_count(); ++id) {
    auto [u, v] = edges_[id];
    rows_[u].set(v);
    rows_[v].set(u);
    nbrs_[u].push_back(v);
    nbrs_[v].push_back(u);
    inc_[u].push_back(id);
    inc_[v].push_back(id);
  }
  for (int v = 0; v < n_; ++v) {
    std::vector<int> order(nbrs_[v].size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return nbrs_[v][x] < nbrs_[v][y]; });
    std::vector<int> nb, ic;
    for (int i : order) {
      nb.push_back(nbrs_[v][i]);
      ic.push_back(inc_[v][i]);
    }
    nbrs_[v] = std::move(nb);
    inc_[v] = std::move(ic);
  }
}

int Graph::edge_id(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || !rows_[u].test(v)) return -1;
  const auto& nb = nbrs_[u];
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  return inc_[u][it - nb.begin()];
}

Graph Graph::with_parts(std::vector<Part> parts) const {
  std::vector<std::pair<int, int>> e;
  for (auto [u, v] : edges_) e.emplace_back(u, v);
  return Graph(n_, std::move(e), std::move(parts));
}

Graph Graph::induced(std::span<const int> vertices) const {
  std::vector<int> map(n_, -1);
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
    if (map[vertices[i]] != -1) throw GraphError("repeated vertex in induced");
    map[vertices[i]] = i;
  }
  std::vector<std::pair<int, int>> e;
  for (auto [u, v] : edges_)
    if (map[u] >= 0 && map[v] >= 0) e.emplace_back(map[u], map[v]);
  std::vector<Part> p;
  if (has_parts())
    for (int v : vertices) p.push_back(parts_[v]);
  return Graph(static_cast<int>(vertices.size()), std::move(e), std::move(p));
}

Graph Graph::without_edges(std::span<const int> edge_ids) const {
  std::vector<char> drop(edges_.size(), 0);
  for (int id : edge_ids) drop[id] = 1;
  std::vector<std::pair<int, int>> e;
  for (int id = 0; id < edge_count(); ++id)
    if (!drop[id]) e.emplace_back(edges_[id].u, edges_[id].v);
  return Graph(n_, std::move(e), parts_);
}

std::vector<int> Graph::components() const {
  std::vector<int> comp(n_, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < n_; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : nbrs_[x])
        if (comp[y] == -1) {
          comp[y] = next;
          stack.push_back(y);
        }
    }
    ++next;
  }
  return comp;
}

bool Graph::connected() const {
  if (n_ == 0) return true;
  auto comp = components();
  return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

namespace {

void check_pairs(const TripartiteGraph::PairList& pairs, int n_first,
                 int n_second, const char* name) {
  std::set<std::pair<int, int>> seen;
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= n_first || y < 0 || y >= n_second)
      throw GraphError(std::string("edge index out of range in ") + name +
                       ": " + std::to_string(x) + " " + std::to_string(y));
    if (!seen.insert({x, y}).second)
      throw GraphError(std::string("duplicate edge in ") + name + ": " +
                       std::to_string(x) + " " + std::to_string(y));
  }
}

}  // namespace

TripartiteGraph::TripartiteGraph(std::array<int, 3> part_sizes, PairList ab,
                                 PairList bc, PairList ca)
    : sizes_(part_sizes), ab_(std::move(ab)), bc_(std::move(bc)),
      ca_(std::move(ca)) {
  for (int s : sizes_)
    if (s < 0) throw GraphError("negative part size");
  check_pairs(ab_, sizes_[0], sizes_[1], "AB");
  check_pairs(bc_, sizes_[1], sizes_[2], "BC");
  check_pairs(ca_, sizes_[2], sizes_[0], "CA");
  std::sort(ab_.begin(), ab_.end());
  std::sort(bc_.begin(), bc_.end());
  std::sort(ca_.begin(), ca_.end());

  const int n = sizes_[0] + sizes_[1] + sizes_[2];
  std::vector<Part> parts(n);
  for (int v = 0; v < n; ++v) parts[v] = locate(v).part;
  std::vector<std::pair<int, int>> e;
  e.reserve(ab_.size() + bc_.size() + ca_.size());
  for (auto [a, b] : ab_) e.emplace_back(vertex(Part::A, a), vertex(Part::B, b));
  for (auto [b, c] : bc_) e.emplace_back(vertex(Part::B, b), vertex(Part::C, c));
  for (auto [c, a] : ca_) e.emplace_back(vertex(Part::C, c), vertex(Part::A, a));
  graph_ = Graph(n, std::move(e), std::move(parts));
}

TripartiteGraph TripartiteGraph::from_global(
    std::array<int, 3> part_sizes, std::span<const std::pair<int, int>> edges) {
  TripartiteGraph shell(part_sizes, {}, {}, {});
  PairList ab, bc, ca;
  for (auto [x, y] : edges) {
    if (x < 0 || y < 0 || x >= shell.vertex_count() || y >= shell.vertex_count())
      throw GraphError("edge endpoint out of range");
    PartVertex px = shell.locate(x), py = shell.locate(y);
    if (px.part == py.part) throw GraphError("edge inside a part");
    if (px.part > py.part) std::swap(px, py);
    if (px.part == Part::A && py.part == Part::B)
      ab.emplace_back(px.index, py.index);
    else if (px.part == Part::B && py.part == Part::C)
      bc.emplace_back(px.index, py.index);
    else
      ca.emplace_back(py.index, px.index);
  }
  return TripartiteGraph(part_sizes, std::move(ab), std::move(bc), std::move(ca));
}

int TripartiteGraph::offset(Part p) const {
  switch (p) {
    case Part::A: return 0;
    case Part::B: return sizes_[0];
    case Part::C: return sizes_[0] + sizes_[1];
  }
  return 0;
}

PartVertex TripartiteGraph::locate(int v) const {
  if (v < sizes_[0]) return {Part::A, v};
  if (v < sizes_[0] + sizes_[1]) return {Part::B, v - sizes_[0]};
  return {Part::C, v - sizes_[0] - sizes_[1]};
}

TripartiteGraph TripartiteGraph::with_labels(std::vector<std::int64_t> labels) const {
  if (static_cast<int>(labels.size()) != vertex_count())
    throw GraphError("label count does not match vertex count");
  TripartiteGraph out = *this;
  out.labels_ = std::move(labels);
  return out;
}

bool is_cycle(const Graph& g, std::span<const int> seq) {
  const int len = static_cast<int>(seq.size());
  if (len < 3) return false;
  std::vector<char> seen(g.vertex_count(), 0);
  for (int v : seq) {
    if (v < 0 || v >= g.vertex_count() || seen[v]) return false;
    seen[v] = 1;
  }
  for (int i = 0; i < len; ++i)
    if (!g.adjacent(seq[i], seq[(i + 1) % len])) return false;
  return true;
}

std::optional<std::string> validate_packing(const Graph& g,
                                            const CyclePacking& packing) {
  if (packing.cycle_length < 3 || packing.cycle_length % 2 == 0)
    return "cycle length must be odd and at least 3";
  std::vector<char> used(g.edge_count(), 0);
  for (std::size_t i = 0; i < packing.cycles.size(); ++i) {
    const auto& c = packing.cycles[i];
    if (static_cast<int>(c.size()) != packing.cycle_length)
      return "cycle " + std::to_string(i) + " has wrong length";
    if (!is_cycle(g, c)) return "cycle " + std::to_string(i) + " is not a cycle";
    for (std::size_t j = 0; j < c.size(); ++j) {
      int id = g.edge_id(c[j], c[(j + 1) % c.size()]);
      if (used[id]) return "cycle " + std::to_string(i) + " reuses an edge";
      used[id] = 1;
    }
  }
  return std::nullopt;
}

}  // namespace rlab
