#include "rlab/counting.hpp"

#include <algorithm>
#include <numeric>

namespace rlab {

std::vector<Triangle> list_triangles(const Graph& g) {
  std::vector<Triangle> out;
  for (const Edge& e : g.edges()) {
    Bitset common = g.row(e.u) & g.row(e.v);
    for (auto w = common.find_next(static_cast<std::size_t>(e.v));
         w != Bitset::npos; w = common.find_next(w))
      out.push_back({e.u, e.v, static_cast<int>(w)});
  }
  return out;
}

std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t total = 0;
  for (const Edge& e : g.edges()) total += (g.row(e.u) & g.row(e.v)).count();
  return total / 3;
}

std::vector<int> triangles_per_vertex(const Graph& g) {
  std::vector<int> per(g.vertex_count(), 0);
  for (const Triangle& t : list_triangles(g))
    for (int v : t) ++per[v];
  return per;
}

namespace {

// Pattern vertices in BFS order from the highest-degree vertex of each
// component, so that every vertex after a component root has a placed
// neighbor.
std::vector<int> placement_order(const Graph& p) {
  const int n = p.vertex_count();
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  std::vector<int> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](int a, int b) { return p.degree(a) > p.degree(b); });
  for (int root : by_degree) {
    if (placed[root]) continue;
    placed[root] = 1;
    std::size_t head = order.size();
    order.push_back(root);
    while (head < order.size()) {
      int x = order[head++];
      for (int y : p.neighbors(x))
        if (!placed[y]) {
          placed[y] = 1;
          order.push_back(y);
        }
    }
  }
  return order;
}

class HomSearch {
 public:
  HomSearch(const Graph& pattern, const Graph& host, const HomOptions& opt,
            const std::function<bool(std::span<const int>)>* visit)
      : p_(pattern), h_(host), opt_(opt), visit_(visit),
        order_(placement_order(pattern)), map_(pattern.vertex_count(), -1),
        used_(host.vertex_count()) {
    if (!opt_.domains.empty() &&
        static_cast<int>(opt_.domains.size()) != pattern.vertex_count())
      throw std::invalid_argument("domain count must equal pattern vertex count");
  }

  HomCount run() {
    if (p_.vertex_count() == 0) {
      result_.count = 1;
      if (visit_) (*visit_)(map_);
      return result_;
    }
    extend(0);
    return result_;
  }

 private:
  bool extend(std::size_t depth) {
    if (opt_.node_cap && result_.nodes >= opt_.node_cap) {
      result_.complete = false;
      return false;
    }
    ++result_.nodes;
    if (depth == order_.size()) {
      ++result_.count;
      if (visit_ && !(*visit_)(map_)) return false;
      return true;
    }
    const int x = order_[depth];
    Bitset cand(h_.vertex_count());
    bool constrained = false;
    for (int y : p_.neighbors(x)) {
      if (map_[y] < 0) continue;
      if (!constrained) {
        cand = h_.row(map_[y]);
        constrained = true;
      } else {
        cand &= h_.row(map_[y]);
      }
    }
    if (!constrained) cand.set();
    if (!opt_.domains.empty()) cand &= opt_.domains[x];
    if (opt_.injective) cand -= used_;
    for (auto v = cand.find_first(); v != Bitset::npos; v = cand.find_next(v)) {
      map_[x] = static_cast<int>(v);
      if (opt_.injective) used_.set(v);
      bool go_on = extend(depth + 1);
      if (opt_.injective) used_.reset(v);
      map_[x] = -1;
      if (!go_on) return false;
    }
    return true;
  }

  const Graph& p_;
  const Graph& h_;
  const HomOptions& opt_;
  const std::function<bool(std::span<const int>)>* visit_;
  std::vector<int> order_;
  std::vector<int> map_;
  Bitset used_;
  HomCount result_;
};

}  // namespace

HomCount count_homomorphisms(const Graph& pattern, const Graph& host,
                             const HomOptions& options) {
  return HomSearch(pattern, host, options, nullptr).run();
}

HomCount for_each_homomorphism(
    const Graph& pattern, const Graph& host, const HomOptions& options,
    const std::function<bool(std::span<const int>)>& visit) {
  return HomSearch(pattern, host, options, &visit).run();
}

std::uint64_t count_automorphisms(const Graph& g) {
  HomOptions opt;
  opt.injective = true;
  return count_homomorphisms(g, g, opt).count;
}

std::optional<std::uint64_t> count_copies(const Graph& pattern, const Graph& host,
                                          std::uint64_t node_cap) {
  HomOptions opt;
  opt.injective = true;
  opt.node_cap = node_cap;
  HomCount inj = count_homomorphisms(pattern, host, opt);
  if (!inj.complete) return std::nullopt;
  return inj.count / count_automorphisms(pattern);
}

Graph blowup(const Graph& g, int t) {
  if (t < 1) throw std::invalid_argument("blowup factor must be positive");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(g.edge_count()) * t * t);
  for (const Edge& e : g.edges())
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) edges.emplace_back(e.u * t + i, e.v * t + j);
  std::vector<Part> parts;
  if (g.has_parts())
    for (int v = 0; v < g.vertex_count(); ++v)
      for (int i = 0; i < t; ++i) parts.push_back(g.part(v));
  return Graph(g.vertex_count() * t, std::move(edges), std::move(parts));
}

TripartiteGraph blowup(const TripartiteGraph& g, int t) {
  if (t < 1) throw std::invalid_argument("blowup factor must be positive");
  auto scale = [t](const TripartiteGraph::PairList& pairs) {
    TripartiteGraph::PairList out;
    out.reserve(pairs.size() * t * t);
    for (auto [x, y] : pairs)
      for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) out.emplace_back(x * t + i, y * t + j);
    return out;
  };
  const auto& s = g.part_sizes();
  return TripartiteGraph({s[0] * t, s[1] * t, s[2] * t}, scale(g.edges_ab()),
                         scale(g.edges_bc()), scale(g.edges_ca()));
}

}  // namespace rlab
