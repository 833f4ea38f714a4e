#include "rlab/tagged.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <numeric>

#include "rlab/coloring.hpp"
#include "rlab/parallel.hpp"
#include "rlab/random.hpp"

namespace rlab {

bool both_colors_present(std::span<const std::uint8_t> coloring) {
  bool white = false, black = false;
  for (auto c : coloring) (c ? black : white) = true;
  return white && black;
}

const char* certify_status_name(CertifyStatus s) {
  switch (s) {
    case CertifyStatus::Certified: return "certified";
    case CertifyStatus::Counterexample: return "counterexample";
    case CertifyStatus::NotUniquely3Colorable: return "not-uniquely-3-colorable";
    default: return "inconclusive";
  }
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Components of the subgraph of edges with color `on`, optionally with one
// vertex removed.
UnionFind on_components(const Graph& h, std::span<const std::uint8_t> col, std::uint8_t on,
                        int skip) {
  UnionFind uf(h.vertex_count());
  for (int id = 0; id < h.edge_count(); ++id) {
    if (col[id] != on) continue;
    const Edge& e = h.edge(id);
    if (e.u == skip || e.v == skip) continue;
    uf.unite(e.u, e.v);
  }
  return uf;
}

// Shortest path from s to t using edges of color `on`, avoiding `skip`.
std::vector<int> on_path(const Graph& h, std::span<const std::uint8_t> col, std::uint8_t on,
                         int s, int t, int skip) {
  std::vector<int> parent(h.vertex_count(), -2);
  std::deque<int> q{s};
  parent[s] = -1;
  while (!q.empty()) {
    const int x = q.front();
    q.pop_front();
    if (x == t) break;
    auto nb = h.neighbors(x);
    auto ids = h.incident_edges(x);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const int y = nb[i];
      if (col[ids[i]] != on || y == skip || parent[y] != -2) continue;
      parent[y] = x;
      q.push_back(y);
    }
  }
  std::vector<int> path;
  if (parent[t] == -2) return path;
  for (int x = t; x != -1; x = parent[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

// Off-color neighbours of v, as (neighbour) lists.
std::vector<int> off_neighbors(const Graph& h, std::span<const std::uint8_t> col,
                               std::uint8_t off, int v) {
  std::vector<int> out;
  auto nb = h.neighbors(v);
  auto ids = h.incident_edges(v);
  for (std::size_t i = 0; i < nb.size(); ++i)
    if (col[ids[i]] == off) out.push_back(nb[i]);
  return out;
}

// Search under one polarity; with build = false only existence is decided.
std::optional<TaggedCycleWitness> search(const Graph& h, std::span<const std::uint8_t> col,
                                         std::uint8_t off, bool build) {
  const std::uint8_t on = 1 - off;
  TaggedCycleWitness w;
  w.swap_applied = off == 0;
  {
    UnionFind uf = on_components(h, col, on, -1);
    for (int id = 0; id < h.edge_count(); ++id) {
      if (col[id] != off) continue;
      const Edge& e = h.edge(id);
      if (uf.find(e.u) != uf.find(e.v)) continue;
      w.kind = TaggedKind::OneOffEdge;
      if (build) w.cycle = on_path(h, col, on, e.v, e.u, -1);  // v ... u, closed by uv
      return w;
    }
  }
  for (int v = 0; v < h.vertex_count(); ++v) {
    auto nb = off_neighbors(h, col, off, v);
    // the middle vertex's part must differ from both ends (labels need not be proper)
    std::erase_if(nb, [&](int x) { return h.part(x) == h.part(v); });
    bool mixed = false;
    for (std::size_t i = 1; i < nb.size() && !mixed; ++i)
      mixed = h.part(nb[i]) != h.part(nb[0]);
    if (!mixed) continue;
    UnionFind uf = on_components(h, col, on, v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const int x = nb[i], y = nb[j];
        if (h.part(x) == h.part(y) || uf.find(x) != uf.find(y)) continue;
        w.kind = TaggedKind::TwoConsecutive;
        if (build) {
          w.cycle = on_path(h, col, on, x, y, v);
          w.cycle.push_back(v);
        }
        return w;
      }
  }
  return std::nullopt;
}

}  // namespace

std::optional<TaggedCycleWitness> find_tagged_cycle(const Graph& h,
                                                    std::span<const std::uint8_t> coloring) {
  if (static_cast<int>(coloring.size()) != h.edge_count())
    throw GraphError("coloring size differs from edge count");
  if (!h.has_parts() && h.vertex_count() > 0) throw GraphError("tagged cycles need part labels");
  for (std::uint8_t off : {1, 0})
    if (auto w = search(h, coloring, off, true)) {
      if (auto why = verify_tagged_witness(h, coloring, *w))
        throw std::logic_error("tagged witness failed verification: " + *why);
      return w;
    }
  return std::nullopt;
}

bool has_tagged_cycle(const Graph& h, std::span<const std::uint8_t> coloring) {
  return search(h, coloring, 1, false).has_value() || search(h, coloring, 0, false).has_value();
}

std::optional<std::string> verify_tagged_witness(const Graph& h,
                                                 std::span<const std::uint8_t> coloring,
                                                 const TaggedCycleWitness& w) {
  if (!is_cycle(h, w.cycle)) return "not a cycle";
  const std::uint8_t off = w.swap_applied ? 0 : 1;
  const std::size_t len = w.cycle.size();
  std::vector<std::size_t> off_pos;  // position i: edge cycle[i] -> cycle[i+1]
  for (std::size_t i = 0; i < len; ++i) {
    const int id = h.edge_id(w.cycle[i], w.cycle[(i + 1) % len]);
    if (coloring[id] == off) off_pos.push_back(i);
  }
  if (w.kind == TaggedKind::OneOffEdge)
    return off_pos.size() == 1 ? std::nullopt
                               : std::optional<std::string>("expected exactly one off-color edge");
  if (off_pos.size() != 2) return "expected exactly two off-color edges";
  std::size_t mid;
  if (off_pos[1] == off_pos[0] + 1)
    mid = off_pos[1];
  else if (off_pos[0] == 0 && off_pos[1] == len - 1)
    mid = 0;
  else
    return "off-color edges are not consecutive";
  const int a = w.cycle[(mid + len - 1) % len], b = w.cycle[mid], c = w.cycle[(mid + 1) % len];
  if (h.part(a) == h.part(b) || h.part(b) == h.part(c) || h.part(a) == h.part(c))
    return "endpoints do not lie in three parts";
  return std::nullopt;
}

CertifyResult certify_strongly_genus_one(const Graph& input, const CertifyOptions& options) {
  CertifyResult res;
  auto partition = unique_3_partition(input);
  if (!partition) {
    res.status = CertifyStatus::NotUniquely3Colorable;
    return res;
  }
  res.partition = *partition;
  const Graph h = input.with_parts(*partition);
  const int m = h.edge_count();
  EdgeColoring col(m, 0);

  if (m > options.exact_edge_cap) {
    res.mode = "monte-carlo";
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      Rng rng(options.seed, i);
      for (auto& c : col) c = static_cast<std::uint8_t>(rng() & 1);
      if (!both_colors_present(col)) continue;
      ++res.colorings_checked;
      if (!has_tagged_cycle(h, col)) {
        res.status = CertifyStatus::Counterexample;
        res.counterexample = col;
        return res;
      }
    }
    res.status = CertifyStatus::Inconclusive;
    res.note = "no counterexample among " + std::to_string(res.colorings_checked) +
               " random colorings; exact mode needs at most " +
               std::to_string(options.exact_edge_cap) + " edges";
    return res;
  }

  res.mode = "exact";
  if (m < 2) {  // no coloring has both colors
    res.status = CertifyStatus::Certified;
    return res;
  }
  // Coloring for mask x (edge 0 white): edge i (i >= 1) black iff bit i-1.
  const std::uint64_t total = (std::uint64_t{1} << (m - 1)) - 1;
  res.colorings_total = total;
  auto decode = [m](std::uint64_t mask, EdgeColoring& c) {
    c[0] = 0;
    for (int i = 1; i < m; ++i) c[i] = static_cast<std::uint8_t>(mask >> (i - 1) & 1);
  };

  // Seed: single black edge; these are cheap and catch most failures.
  for (int i = 1; i < m; ++i) {
    decode(std::uint64_t{1} << (i - 1), col);
    if (!has_tagged_cycle(h, col)) {
      // Still report the globally smallest mask: search below it.
      const std::uint64_t hit = std::uint64_t{1} << (i - 1);
      for (std::uint64_t mask = 1; mask <= hit; ++mask) {
        decode(mask, col);
        ++res.colorings_checked;
        if (!has_tagged_cycle(h, col)) {
          res.status = CertifyStatus::Counterexample;
          res.counterexample = col;
          return res;
        }
      }
    }
  }

  const std::uint64_t limit = options.budget ? std::min(total, options.budget) : total;
  constexpr std::uint64_t kChunk = 1 << 14;
  const std::uint64_t chunks = (limit + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> first_bad(chunks, 0);
  std::atomic<std::uint64_t> best{~std::uint64_t{0}};
  std::atomic<std::uint64_t> checked{0};
  parallel_for(chunks, options.threads, [&](std::size_t ci) {
    const std::uint64_t lo = 1 + ci * kChunk;
    if (lo > best.load()) return;  // a smaller counterexample is known
    const std::uint64_t hi = std::min(limit, lo + kChunk - 1);
    EdgeColoring c(m, 0);
    std::uint64_t local = 0;
    for (std::uint64_t mask = lo; mask <= hi; ++mask) {
      decode(mask, c);
      ++local;
      if (!has_tagged_cycle(h, c)) {
        first_bad[ci] = mask;
        std::uint64_t cur = best.load();
        while (mask < cur && !best.compare_exchange_weak(cur, mask)) {
        }
        break;
      }
    }
    checked += local;
  });
  res.colorings_checked += checked.load();
  for (std::uint64_t ci = 0; ci < chunks; ++ci)
    if (first_bad[ci]) {
      res.status = CertifyStatus::Counterexample;
      decode(first_bad[ci], col);
      res.counterexample = col;
      return res;
    }
  if (limit < total) {
    res.status = CertifyStatus::Inconclusive;
    res.note = "budget exhausted after " + std::to_string(limit) + " of " +
               std::to_string(total) + " colorings; raise the budget";
    return res;
  }
  res.status = CertifyStatus::Certified;
  return res;
}

}  // namespace rlab
