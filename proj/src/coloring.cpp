#include "rlab/coloring.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace rlab {

namespace {

// Vertex order: BFS from the highest-degree vertex of each component, so
// every vertex after a component's first has an already-colored neighbor.
std::vector<int> search_order(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> by_degree(n);
  for (int v = 0; v < n; ++v) by_degree[v] = v;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::vector<char> seen(n, 0);
  std::vector<int> order;
  for (int s : by_degree) {
    if (seen[s]) continue;
    std::deque<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      order.push_back(u);
      for (int w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
    }
  }
  return order;
}

class ColoringSearch {
 public:
  ColoringSearch(const Graph& g, int q,
                 const std::function<bool(std::span<const int>)>& visit,
                 std::uint64_t node_cap = 0)
      : g_(g),
        q_(q),
        visit_(visit),
        order_(search_order(g)),
        color_(g.vertex_count(), -1),
        node_cap_(node_cap) {}

  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

  std::uint64_t run() {
    if (q_ <= 0 && g_.vertex_count() > 0) return 0;
    dfs(0);
    return visited_;
  }

 private:
  bool dfs(std::size_t i) {
    if (node_cap_ && ++nodes_ > node_cap_) {
      aborted_ = true;
      return false;
    }
    if (i == order_.size()) {
      ++visited_;
      return visit_(color_);
    }
    const int v = order_[i];
    for (int c = 0; c < q_; ++c) {
      bool ok = true;
      for (int w : g_.neighbors(v))
        if (color_[w] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      color_[v] = c;
      if (!dfs(i + 1)) return false;
    }
    color_[v] = -1;
    return true;
  }

  const Graph& g_;
  int q_;
  const std::function<bool(std::span<const int>)>& visit_;
  std::vector<int> order_;
  std::vector<int> color_;
  std::uint64_t visited_ = 0;
  std::uint64_t node_cap_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

std::uint64_t for_each_proper_coloring(const Graph& g, int q,
                                       const std::function<bool(std::span<const int>)>& visit) {
  return ColoringSearch(g, q, visit).run();
}

std::uint64_t count_proper_colorings(const Graph& g, int q, std::uint64_t cutoff) {
  std::uint64_t count = 0;
  for_each_proper_coloring(g, q, [&](std::span<const int>) { return ++count <= cutoff; });
  return count;
}

ColoringCount count_proper_colorings_capped(const Graph& g, int q, std::uint64_t cutoff,
                                            std::uint64_t node_cap) {
  ColoringCount out;
  std::function<bool(std::span<const int>)> visit = [&](std::span<const int>) {
    return ++out.count <= cutoff;
  };
  ColoringSearch search(g, q, visit, node_cap);
  search.run();
  out.nodes = search.nodes();
  out.complete = !search.aborted();
  return out;
}

bool uniquely_3_colorable(const Graph& g) {
  return g.vertex_count() > 0 && g.connected() && count_proper_3_colorings(g, 6) == 6;
}

std::optional<std::vector<Part>> unique_3_partition(const Graph& g) {
  if (!uniquely_3_colorable(g)) return std::nullopt;
  std::vector<int> first;
  for_each_proper_coloring(g, 3, [&](std::span<const int> c) {
    first.assign(c.begin(), c.end());
    return false;
  });
  // relabel colors by first appearance
  std::vector<int> relabel(3, -1);
  int next = 0;
  std::vector<Part> out(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (relabel[first[v]] < 0) relabel[first[v]] = next++;
    out[v] = static_cast<Part>(relabel[first[v]]);
  }
  return out;
}

int chromatic_number(const Graph& g) {
  if (g.vertex_count() == 0) return 0;
  for (int q = 1;; ++q) {
    bool found = false;
    for_each_proper_coloring(g, q, [&](std::span<const int>) {
      found = true;
      return false;
    });
    if (found) return q;
  }
}

std::optional<std::vector<int>> find_increasing_cycle(const Graph& g,
                                                      std::span<const int> coloring) {
  // Orient every edge towards the larger color; an increasing cycle is a
  // directed path u -> ... -> w of >= 2 edges closed by the edge uw.
  const int n = g.vertex_count();
  std::vector<int> parent(n);
  for (const Edge& e : g.edges()) {
    int u = e.u, w = e.v;
    if (coloring[u] == coloring[w]) continue;
    if (coloring[u] > coloring[w]) std::swap(u, w);
    std::fill(parent.begin(), parent.end(), -2);
    std::deque<int> q;
    for (int x : g.neighbors(u))
      if (coloring[x] > coloring[u] && coloring[x] < coloring[w]) {
        parent[x] = u;
        q.push_back(x);
      }
    while (!q.empty()) {
      const int x = q.front();
      q.pop_front();
      if (g.adjacent(x, w)) {
        std::vector<int> cycle{w};
        for (int y = x; y != u; y = parent[y]) cycle.push_back(y);
        cycle.push_back(u);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      for (int y : g.neighbors(x))
        if (parent[y] == -2 && coloring[y] > coloring[x] && coloring[y] < coloring[w]) {
          parent[y] = x;
          q.push_back(y);
        }
    }
  }
  return std::nullopt;
}

IncreasingResult increasing_cycle_unavoidable(const Graph& g, int t) {
  const int chi = chromatic_number(g);
  if (chi != t)
    throw std::invalid_argument("chromatic number is " + std::to_string(chi) + ", not " +
                                std::to_string(t));
  IncreasingResult res;
  res.unavoidable = true;
  for_each_proper_coloring(g, t, [&](std::span<const int> c) {
    ++res.colorings_checked;
    if (find_increasing_cycle(g, c)) return true;
    res.unavoidable = false;
    res.witness.assign(c.begin(), c.end());
    return false;
  });
  return res;
}

}  // namespace rlab
