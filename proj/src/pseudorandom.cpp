#include "rlab/pseudorandom.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "rlab/coloring.hpp"
#include "rlab/counting.hpp"
#include "rlab/random.hpp"

namespace rlab {

double default_density(int n) { return n > 0 ? std::pow(static_cast<double>(n), -0.75) : 0.0; }

TripartiteGraph sample_tripartite(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("part size must be non-negative");
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0, 1]");
  Rng rng(seed);
  TripartiteGraph::PairList ab, bc, ca;
  for (auto* list : {&ab, &bc, &ca})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rng.bernoulli(p)) list->emplace_back(i, j);
  return TripartiteGraph({n, n, n}, std::move(ab), std::move(bc), std::move(ca));
}

int PipelineRecord::max_triangles_per_vertex() const {
  return triangles_per_vertex.empty()
             ? 0
             : *std::max_element(triangles_per_vertex.begin(), triangles_per_vertex.end());
}

int PipelineRecord::max_deleted_per_vertex() const {
  return deleted_per_vertex.empty()
             ? 0
             : *std::max_element(deleted_per_vertex.begin(), deleted_per_vertex.end());
}

PipelineResult delete_one_edge_per_triangle(const TripartiteGraph& g, DeletionRule rule) {
  const Graph& graph = g.graph();
  PipelineRecord rec;
  rec.rule = rule;
  rec.triangles_per_vertex = triangles_per_vertex(graph);
  rec.deleted_per_vertex.assign(graph.vertex_count(), 0);
  std::vector<char> gone(graph.edge_count(), 0);
  for (const Triangle& t : list_triangles(graph)) {
    ++rec.triangle_count_before;
    // t = (a, b, c) in global ids; A < B < C
    const int ab = graph.edge_id(t[0], t[1]), bc = graph.edge_id(t[1], t[2]),
              ca = graph.edge_id(t[0], t[2]);
    if (gone[ab] || gone[bc] || gone[ca]) continue;
    const int id = rule == DeletionRule::Lexicographic ? ab : ca;
    gone[id] = 1;
    const Edge& e = graph.edge(id);
    rec.deleted_edges.emplace_back(e.u, e.v);
    ++rec.deleted_per_vertex[e.u];
    ++rec.deleted_per_vertex[e.v];
  }

  const int oa = g.offset(Part::A), ob = g.offset(Part::B), oc = g.offset(Part::C);
  auto keep = [&](const TripartiteGraph::PairList& in, int o1, int o2) {
    TripartiteGraph::PairList out;
    for (auto [i, j] : in)
      if (!gone[graph.edge_id(o1 + i, o2 + j)]) out.emplace_back(i, j);
    return out;
  };
  TripartiteGraph out(g.part_sizes(), keep(g.edges_ab(), oa, ob), keep(g.edges_bc(), ob, oc),
                      keep(g.edges_ca(), oc, oa));
  return {std::move(out), std::move(rec)};
}

PipelineResult run_pipeline(int n, double p, std::uint64_t seed, DeletionRule rule) {
  PipelineResult res = delete_one_edge_per_triangle(sample_tripartite(n, p, seed), rule);
  res.record.n = n;
  res.record.p = p;
  res.record.seed = seed;
  return res;
}

const char* property_name(Property p) {
  switch (p) {
    case Property::HalfSubgraphConnectivity: return "half-subgraph-connectivity";
    case Property::CommonNeighborhood: return "common-neighborhood";
    case Property::Expansion: return "expansion";
    case Property::BigSets: return "big-sets";
    case Property::TriangleFree: return "triangle-free";
    default: return "unique-3-coloring";
  }
}

std::optional<Property> parse_property(const std::string& name) {
  for (Property p : kAllProperties)
    if (name == property_name(p)) return p;
  return std::nullopt;
}

const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "inconclusive";
  }
}

std::vector<int> common_neighborhood(const TripartiteGraph& h, Part q, const std::vector<int>& x,
                                     const std::vector<int>& y) {
  const Graph& g = h.graph();
  std::vector<char> mark(g.vertex_count(), 0);
  for (int v : x)
    for (int w : g.neighbors(v))
      if (g.part(w) == q) mark[w] |= 1;
  for (int v : y)
    for (int w : g.neighbors(v))
      if (g.part(w) == q) mark[w] |= 2;
  std::vector<int> out;
  for (int i = 0; i < h.part_size(q); ++i)
    if (mark[h.vertex(q, i)] == 3) out.push_back(h.vertex(q, i));
  return out;
}

namespace {

std::vector<int> part_vertices(const TripartiteGraph& h, Part p) {
  std::vector<int> out(h.part_size(p));
  std::iota(out.begin(), out.end(), h.offset(p));
  return out;
}

Bitset part_mask(const TripartiteGraph& h, Part p) {
  Bitset m(h.vertex_count());
  for (int i = 0; i < h.part_size(p); ++i) m.set(h.vertex(p, i));
  return m;
}

// k distinct elements of pool, uniformly (partial Fisher-Yates on a copy).
std::vector<int> sample(std::vector<int> pool, std::size_t k, Rng& rng) {
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

// The k vertices of pool with fewest neighbours in part q.
std::vector<int> lowest_degree(const TripartiteGraph& h, std::vector<int> pool, Part q,
                               std::size_t k) {
  const Bitset mask = part_mask(h, q);
  std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
    return (h.graph().row(a) & mask).count() < (h.graph().row(b) & mask).count();
  });
  pool.resize(std::min(k, pool.size()));
  std::sort(pool.begin(), pool.end());
  return pool;
}

char letter(Part p) { return "ABC"[index_of(p)]; }

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::string set_text(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size() && i < 12; ++i) out += (i ? "," : "") + std::to_string(s[i]);
  if (s.size() > 12) out += ",...";
  return out + "}";
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
};

constexpr std::array<std::array<Part, 3>, 3> kPairs = {{
    {Part::A, Part::B, Part::C}, {Part::A, Part::C, Part::B}, {Part::B, Part::C, Part::A}}};

void check_half_subgraph(const TripartiteGraph& h, const CheckOptions& opt, CheckResult& res) {
  const Graph& g = h.graph();
  std::vector<std::pair<int, int>> ab;
  for (auto [a, b] : h.edges_ab()) ab.emplace_back(h.vertex(Part::A, a), h.vertex(Part::B, b));
  const std::size_t keep = ceil_div(ab.size(), opt.third_of_edges ? 3 : 2);
  const int na = h.part_size(Part::A), nb = h.part_size(Part::B);

  auto large_component = [&](const std::vector<std::pair<int, int>>& f) {
    UnionFind uf(g.vertex_count());
    for (auto [u, v] : f) uf.p[uf.find(u)] = uf.find(v);
    std::vector<int> ca(g.vertex_count(), 0), cb(g.vertex_count(), 0);
    for (int i = 0; i < na; ++i) ++ca[uf.find(h.vertex(Part::A, i))];
    for (int i = 0; i < nb; ++i) ++cb[uf.find(h.vertex(Part::B, i))];
    for (int r = 0; r < g.vertex_count(); ++r)
      if (10 * ca[r] >= na && 10 * cb[r] >= nb) return true;
    return false;
  };
  auto fail = [&](std::vector<std::pair<int, int>> f, const char* how) {
    res.status = CheckStatus::Fail;
    res.detail = std::string(how) + " subgraph with " + std::to_string(f.size()) + " of " +
                 std::to_string(ab.size()) +
                 " A-B edges has no component with n/10 vertices on both sides";
    res.witness.edges = std::move(f);
  };

  // Adversary: drop edges at the highest-degree vertices first.
  std::vector<std::pair<int, int>> f = ab;
  std::stable_sort(f.begin(), f.end(), [&](auto x, auto y) {
    return std::max(g.degree(x.first), g.degree(x.second)) <
           std::max(g.degree(y.first), g.degree(y.second));
  });
  f.resize(keep);
  ++res.trials_run;
  if (!large_component(f)) return fail(f, "hub-avoiding");

  std::vector<int> idx(ab.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    Rng rng(opt.seed, t);
    f.clear();
    for (int i : sample(idx, keep, rng)) f.push_back(ab[i]);
    ++res.trials_run;
    if (!large_component(f)) return fail(f, "random");
  }
  res.status = CheckStatus::Pass;
}

void check_common_neighborhood(const TripartiteGraph& h, const CheckOptions& opt,
                               CheckResult& res) {
  for (const auto& [p1, p2, q] : kPairs) {
    const auto v1 = part_vertices(h, p1), v2 = part_vertices(h, p2);
    const std::size_t s1 = ceil_div(v1.size(), 10), s2 = ceil_div(v2.size(), 10);
    const std::size_t need = ceil_div(99 * h.part_size(q), 100);
    auto test = [&](std::vector<int> x, std::vector<int> y) {
      ++res.trials_run;
      auto nbh = common_neighborhood(h, q, x, y);
      if (nbh.size() >= need) return true;
      res.status = CheckStatus::Fail;
      res.detail = std::string("|N(") + letter(p1) + "," + letter(p2) +
                   ")| = " + std::to_string(nbh.size()) + " < 99|" + letter(q) +
                   "|/100 for X = " + set_text(x) + ", Y = " + set_text(y);
      res.witness.x = std::move(x);
      res.witness.y = std::move(y);
      res.witness.z = std::move(nbh);
      return false;
    };
    if (!test(lowest_degree(h, v1, q, s1), lowest_degree(h, v2, q, s2))) return;
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
      Rng rng(opt.seed, t * 3 + index_of(q));
      if (!test(sample(v1, s1, rng), sample(v2, s2, rng))) return;
    }
  }
  res.status = CheckStatus::Pass;
}

void check_expansion(const TripartiteGraph& h, const CheckOptions& opt, CheckResult& res) {
  const Graph& g = h.graph();
  const int f = opt.expansion_factor;
  for (Part p : kParts)
    for (Part q : kParts) {
      if (p == q) continue;
      const auto zs = part_vertices(h, p);
      const std::size_t max_size = zs.size() / 12;  // |Z| <= n/12
      const Bitset mask = part_mask(h, q);
      auto fail = [&](std::vector<int> z, std::size_t got) {
        res.status = CheckStatus::Fail;
        res.detail = std::string("|N_") + letter(q) + "(Z)| = " + std::to_string(got) +
                     " <= " + std::to_string(f) + "|Z| for Z = " + set_text(z) + " in " +
                     letter(p);
        res.witness.z = std::move(z);
        return false;
      };
      auto test = [&](const std::vector<int>& z) {
        ++res.trials_run;
        Bitset n(g.vertex_count());
        for (int v : z) n |= g.row(v);
        n &= mask;
        const std::size_t got = n.count();
        return got > static_cast<std::size_t>(f) * z.size() || fail(z, got);
      };
      if (max_size == 0) continue;
      for (std::size_t i = 0; i < zs.size(); ++i) {
        if (!test({zs[i]})) return;
        if (max_size >= 2)
          for (std::size_t j = i + 1; j < zs.size(); ++j)
            if (!test({zs[i], zs[j]})) return;
      }
      // Greedy: start from the weakest vertex, add the vertex that grows the
      // neighbourhood least.
      std::vector<int> z{lowest_degree(h, zs, q, 1)[0]};
      Bitset cur = g.row(z[0]) & mask;
      std::vector<char> in(g.vertex_count(), 0);
      in[z[0]] = 1;
      while (z.size() < max_size) {
        int best = -1;
        std::size_t best_gain = 0;
        for (int v : zs) {
          if (in[v]) continue;
          const std::size_t gain = (g.row(v) & mask & ~cur).count();
          if (best < 0 || gain < best_gain) best = v, best_gain = gain;
        }
        z.push_back(best);
        in[best] = 1;
        cur |= g.row(best) & mask;
        ++res.trials_run;
        if (cur.count() <= static_cast<std::size_t>(f) * z.size()) {
          auto sorted = z;
          std::sort(sorted.begin(), sorted.end());
          fail(sorted, cur.count());
          return;
        }
      }
      for (std::uint64_t t = 0; t < opt.trials; ++t) {
        Rng rng(opt.seed, t * 9 + index_of(p) * 3 + index_of(q));
        if (!test(sample(zs, 1 + rng.below(max_size), rng))) return;
      }
    }
  res.status = CheckStatus::Pass;
}

void check_big_sets(const TripartiteGraph& h, const CheckOptions& opt, CheckResult& res) {
  const Graph& g = h.graph();
  for (const auto& [p1, p2, q] : kPairs) {
    (void)q;
    const auto v1 = part_vertices(h, p1), v2 = part_vertices(h, p2);
    const std::size_t s1 = ceil_div(v1.size(), 100), s2 = ceil_div(v2.size(), 100);
    const std::size_t need = opt.one_edge ? 1 : static_cast<std::size_t>(h.part_size(p1));
    auto test = [&](std::vector<int> x, std::vector<int> y) {
      ++res.trials_run;
      Bitset ym(g.vertex_count());
      for (int v : y) ym.set(v);
      std::size_t e = 0;
      for (int v : x) e += (g.row(v) & ym).count();
      if (e >= need) return true;
      res.status = CheckStatus::Fail;
      res.detail = std::string("e(X,Y) = ") + std::to_string(e) + " < " + std::to_string(need) +
                   " for X = " + set_text(x) + " in " + letter(p1) + ", Y = " + set_text(y) +
                   " in " + letter(p2);
      res.witness.x = std::move(x);
      res.witness.y = std::move(y);
      return false;
    };
    if (!test(lowest_degree(h, v1, p2, s1), lowest_degree(h, v2, p1, s2))) return;
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
      Rng rng(opt.seed, t * 3 + index_of(q));
      if (!test(sample(v1, s1, rng), sample(v2, s2, rng))) return;
    }
  }
  res.status = CheckStatus::Pass;
}

void check_triangle_free(const TripartiteGraph& h, CheckResult& res) {
  res.exact = true;
  ++res.trials_run;
  auto tri = list_triangles(h.graph());
  if (tri.empty()) {
    res.status = CheckStatus::Pass;
    res.detail = "no triangles";
    return;
  }
  res.status = CheckStatus::Fail;
  res.witness.x.assign(tri[0].begin(), tri[0].end());
  res.detail = std::to_string(tri.size()) + " triangles; first " + set_text(res.witness.x);
}

void check_unique_coloring(const TripartiteGraph& h, const CheckOptions& opt, CheckResult& res) {
  const Graph& g = h.graph();
  res.exact = true;
  ++res.trials_run;
  if (!g.connected()) {
    res.status = CheckStatus::Fail;
    auto comp = g.components();
    for (int v = 0; v < g.vertex_count(); ++v)
      if (comp[v] != comp[0]) res.witness.x.push_back(v);
    res.detail = "disconnected; " + std::to_string(res.witness.x.size()) +
                 " vertices outside the component of vertex 0";
    return;
  }
  // A vertex whose neighbours all lie in one part can switch to the third
  // part, giving a second partition.
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::set<Part> seen;
    for (int w : g.neighbors(v)) seen.insert(g.part(w));
    if (seen.size() <= 1 && g.vertex_count() >= 3) {
      res.status = CheckStatus::Fail;
      res.witness.x = {v};
      res.detail = "vertex " + std::to_string(v) + " has neighbours in at most one part";
      return;
    }
  }
  auto count = count_proper_colorings_capped(g, 3, 6, opt.coloring_node_cap);
  if (!count.complete) {
    res.status = CheckStatus::Inconclusive;
    res.exact = false;
    res.detail = "coloring search stopped after " + std::to_string(count.nodes) +
                 " nodes with " + std::to_string(count.count) + " colorings found";
    return;
  }
  res.status = count.count == 6 ? CheckStatus::Pass : CheckStatus::Fail;
  res.detail = count.count > 6 ? "more than 6 proper 3-colorings"
                               : std::to_string(count.count) + " proper 3-colorings";
}

}  // namespace

CheckResult property_check(const TripartiteGraph& h, Property property,
                           const CheckOptions& options) {
  if (options.exact && property != Property::TriangleFree && property != Property::UniqueColoring)
    throw std::invalid_argument(std::string("exact mode is not available for ") +
                                property_name(property));
  CheckResult res;
  res.property = property;
  switch (property) {
    case Property::HalfSubgraphConnectivity: check_half_subgraph(h, options, res); break;
    case Property::CommonNeighborhood: check_common_neighborhood(h, options, res); break;
    case Property::Expansion: check_expansion(h, options, res); break;
    case Property::BigSets: check_big_sets(h, options, res); break;
    case Property::TriangleFree: check_triangle_free(h, res); break;
    case Property::UniqueColoring: check_unique_coloring(h, options, res); break;
  }
  if (res.status == CheckStatus::Pass && !res.exact)
    res.detail = "not falsified in " + std::to_string(res.trials_run) + " trials";
  return res;
}

}  // namespace rlab
