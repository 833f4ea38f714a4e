// Acceptance suite: one PASS/FAIL line per criterion. Every randomized
// criterion is seeded and returns a digest of its verdicts and witnesses;
// criterion 13 reruns them and compares digests.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rlab/coloring.hpp"
#include "rlab/convexity.hpp"
#include "rlab/counting.hpp"
#include "rlab/cycle_space.hpp"
#include "rlab/cycles.hpp"
#include "rlab/equations.hpp"
#include "rlab/pseudorandom.hpp"
#include "rlab/rs_graph.hpp"
#include "rlab/sampler.hpp"
#include "rlab/tagged.hpp"

using namespace rlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::uint64_t digest = 0;
};

class Digest {
 public:
  void add(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) h_ = (h_ ^ (x >> (8 * i) & 0xff)) * 0x100000001b3ULL;
  }
  void add(std::span<const int> xs) {
    add(xs.size());
    for (int x : xs) add(static_cast<std::uint64_t>(x));
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ------------------------------------------------------------------ 1
Outcome rs_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001);
  Digest d;
  int exact = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t m = rng.between(1, 50);
    std::vector<std::int64_t> r;
    const double density = rng.uniform();
    for (std::int64_t x = 1; x <= m; ++x)
      if (rng.bernoulli(density)) r.push_back(x);
    if (r.empty()) r.push_back(rng.between(1, m));
    const TripartiteGraph rs = build_rs_graph({m, r});
    const CyclePacking fam = canonical_triangle_family({m, r});
    const auto& labels = *rs.labels();

    std::set<std::pair<int, int>> present;
    for (const auto& e : rs.graph().edges()) present.insert({e.u, e.v});
    const std::set<std::int64_t> rset(r.begin(), r.end());
    std::set<std::pair<int, int>> used;
    bool ok = fam.size() == static_cast<std::size_t>(m) * r.size();
    for (const auto& c : fam.cycles) {
      if (c.size() != 3) {
        ok = false;
        continue;
      }
      const std::int64_t a = labels[c[0]], b = labels[c[1]], cc = labels[c[2]];
      ok &= rs.locate(c[0]).part == Part::A && rs.locate(c[1]).part == Part::B &&
            rs.locate(c[2]).part == Part::C;
      ok &= a >= 1 && a <= m && rset.count(b - a) && cc - b == b - a;
      for (int i = 0; i < 3; ++i) {
        std::pair<int, int> e = std::minmax(c[i], c[(i + 1) % 3]);
        ok &= present.count(e) == 1;
        ok &= used.insert(e).second;
      }
    }
    exact += ok;
    d.add(static_cast<std::uint64_t>(m));
    d.add(r.size());
    d.add(static_cast<std::uint64_t>(rs.edge_count()));
  }
  const double secs = seconds_since(t0);
  return {exact == 50 && secs < 5,
          fmt("%d/50 instances exact (m*|R| edge-disjoint triangles present), %.2f s", exact,
              secs),
          d.value()};
}

// ------------------------------------------------------------------ 2
std::vector<Coeff> zero_sum_vector(Rng& rng, const std::vector<int>& support) {
  std::vector<Coeff> a(support.size(), 0);
  if (support.size() < 2) return a;
  Coeff sum = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) sum += a[i] = rng.between(-4, 4);
  a.back() = -sum;
  return a;
}

EquationSystem random_system(Rng& rng) {
  const int k = static_cast<int>(rng.between(2, 16));
  const int s = static_cast<int>(rng.between(1, 5));
  auto mode = rng.below(3);
  std::vector<int> all(k);
  std::iota(all.begin(), all.end(), 0);
  // mode 1 plants a subset T on which every row vanishes
  std::vector<int> t, rest;
  for (int v : all) (rng.bernoulli(0.5) ? t : rest).push_back(v);
  if (t.empty()) t.push_back(rest.back()), rest.pop_back();
  if (rest.empty()) rest.push_back(t.back()), t.pop_back();
  if (t.size() < 2 && rest.size() < 2) mode = 0;  // every planted row would vanish

  std::vector<std::vector<Coeff>> rows;
  while (static_cast<int>(rows.size()) < s) {
    std::vector<Coeff> row(k, 0);
    if (mode == 1) {
      for (const auto* part : {&t, &rest}) {
        auto a = zero_sum_vector(rng, *part);
        for (std::size_t i = 0; i < a.size(); ++i) row[(*part)[i]] = a[i];
      }
    } else {
      std::vector<int> support = all;
      if (mode == 2) {
        std::shuffle(support.begin(), support.end(), rng);
        support.resize(std::min<std::size_t>(k, 2 + rng.below(3)));
      }
      auto a = zero_sum_vector(rng, support);
      for (std::size_t i = 0; i < a.size(); ++i) row[support[i]] = a[i];
    }
    if (std::any_of(row.begin(), row.end(), [](Coeff c) { return c != 0; })) rows.push_back(row);
  }
  return EquationSystem(k, [&] {
    std::vector<LinearEquation> out;
    for (const auto& r : rows) out.push_back(LinearEquation::from_dense(r));
    return out;
  }());
}

// Every proper non-empty subset, row sums by lowest-bit recurrence.
bool genus_one_by_subsets(const EquationSystem& s) {
  const int k = s.variable_count();
  const std::uint32_t full = (1u << k) - 1;
  std::vector<std::vector<Coeff>> sums;
  for (const auto& row : s.dense_rows()) {
    std::vector<Coeff> f(full + 1, 0);
    for (std::uint32_t mask = 1; mask <= full; ++mask)
      f[mask] = f[mask & (mask - 1)] + row[std::countr_zero(mask)];
    sums.push_back(std::move(f));
  }
  for (std::uint32_t mask = 1; mask < full; ++mask)
    if (std::all_of(sums.begin(), sums.end(), [&](const auto& f) { return f[mask] == 0; }))
      return false;
  return true;
}

bool subset_kills_every_row(const EquationSystem& s, const std::vector<int>& t) {
  std::set<int> ts(t.begin(), t.end());
  if (ts.empty() || static_cast<int>(ts.size()) >= s.variable_count()) return false;
  for (const auto& row : s.dense_rows()) {
    Coeff acc = 0;
    for (int v : ts) acc += row[v];
    if (acc != 0) return false;
  }
  return true;
}

Outcome genus_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(2002);
  Digest d;
  int agree = 0, yes = 0, bad_witness = 0;
  for (int i = 0; i < 500; ++i) {
    const EquationSystem s = random_system(rng);
    const bool expect = genus_one_by_subsets(s);
    const GenusResult r = is_genus_one(s);
    const bool got = r.verdict == Verdict::True;
    if (r.verdict != Verdict::Inconclusive && got == expect) ++agree;
    if (r.verdict == Verdict::False && !subset_kills_every_row(s, r.witness)) ++bad_witness;
    yes += expect;
    d.add(static_cast<std::uint64_t>(r.verdict));
    d.add(r.witness);
  }
  const double secs = seconds_since(t0);
  return {agree == 500 && bad_witness == 0 && secs < 30,
          fmt("%d/500 agree with 2^k enumeration (%d genus one, %d not), %d bad witnesses, "
              "%.2f s",
              agree, yes, 500 - yes, bad_witness, secs),
          d.value()};
}

// ------------------------------------------------------------------ 3
Outcome fixed_verdicts() {
  const auto ap = is_genus_one(three_ap_system());
  const EquationSystem four = EquationSystem::from_dense({{1, 1, -1, -1}});
  const auto r4 = is_genus_one(four);
  const EquationSystem two = EquationSystem::from_dense({{1, 1, -1, -1}, {1, -1, 0, 0}});
  const auto r2 = is_genus_one(two);
  const bool ok = ap.verdict == Verdict::True && r4.verdict == Verdict::False &&
                  subset_kills_every_row(four, r4.witness) &&
                  is_genus_witness(four, r4.witness) && r2.verdict == Verdict::True &&
                  genus_one_by_subsets(two) && !genus_one_by_subsets(four);
  std::string w;
  for (int v : r4.witness) w += (w.empty() ? "x" : ",x") + std::to_string(v + 1);
  return {ok,
          fmt("3-AP %s; x1+x2-x3-x4 %s with witness {%s}; two-row system %s",
              verdict_name(ap.verdict), verdict_name(r4.verdict), w.c_str(),
              verdict_name(r2.verdict)),
          0};
}

// ------------------------------------------------------------------ 4
struct BridgeTally {
  int graphs = 0, unique = 0, certified = 0, refuted = 0, inconclusive = 0, exceptions = 0;
};

void bridge_check(const Graph& g, BridgeTally& t, Digest& d) {
  ++t.graphs;
  CertifyOptions opt;
  opt.exact_edge_cap = 30;
  const CertifyResult r = certify_strongly_genus_one(g, opt);
  d.add(static_cast<std::uint64_t>(r.status));
  if (r.status == CertifyStatus::NotUniquely3Colorable) return;
  ++t.unique;
  if (r.status == CertifyStatus::Counterexample) ++t.refuted;
  if (r.status == CertifyStatus::Inconclusive) ++t.inconclusive;
  if (r.status != CertifyStatus::Certified) return;
  ++t.certified;
  for (const auto& s : all_six_systems(g.with_parts(r.partition)))
    if (is_genus_one(s).verdict != Verdict::True) ++t.exceptions;
}

Outcome lemma_bridge() {
  const auto t0 = std::chrono::steady_clock::now();
  Digest d;
  BridgeTally t;
  // A uniquely 3-colorable graph on v vertices has at least 2v - 3 edges, so
  // 12 edges allow at most 7 vertices. Part sizes are taken up to order: the
  // six systems cover every naming of the parts.
  int enumerated = 0;
  for (int a = 0; a <= 7; ++a)
    for (int b = std::max(a, 1); a + b <= 7; ++b)
      for (int c = b; a + b + c <= 7; ++c) {
        const int n = a + b + c;
        std::vector<Part> parts;
        for (int i = 0; i < n; ++i) parts.push_back(i < a ? Part::A : i < a + b ? Part::B : Part::C);
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (parts[u] != parts[v]) pairs.emplace_back(u, v);
        const int m = static_cast<int>(pairs.size());
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
          if (std::popcount(mask) > 12) continue;
          std::vector<std::pair<int, int>> e;
          std::vector<int> deg(n, 0);
          for (int i = 0; i < m; ++i)
            if (mask >> i & 1) e.push_back(pairs[i]), ++deg[pairs[i].first], ++deg[pairs[i].second];
          // a vertex of degree < 2 (with n >= 3) doubles the colorings
          if (n >= 3 && *std::min_element(deg.begin(), deg.end()) < 2) continue;
          if (n < 3 && *std::min_element(deg.begin(), deg.end()) < 1) continue;
          Graph g(n, e, parts);
          if (!g.connected()) continue;
          ++enumerated;
          bridge_check(g, t, d);
        }
      }
  // candidates from the random tripartite pipeline, before and after deletion
  int candidates = 0;
  for (int n : {2, 3, 4})
    for (double p : {0.5, 0.8})
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const PipelineResult pr = run_pipeline(n, p, seed);
        const TripartiteGraph before = sample_tripartite(n, p, seed);
        for (const Graph& g : {before.graph(), pr.graph.graph()}) {
          const Graph h = largest_component(g).graph;
          if (h.edge_count() == 0 || h.edge_count() > 16) continue;
          ++candidates;
          bridge_check(h, t, d);
        }
      }
  const double secs = seconds_since(t0);
  return {t.exceptions == 0 && t.certified > 0,
          fmt("%d tripartite graphs (<= 12 edges) + %d pipeline candidates: %d uniquely "
              "3-colorable, %d certified, %d counterexamples, %d inconclusive; %d certified "
              "graphs with a non-genus-one system, %.1f s",
              enumerated, candidates, t.unique, t.certified, t.refuted, t.inconclusive,
              t.exceptions, secs),
          d.value()};
}

// ------------------------------------------------------------------ 5
// Isomorphism classes of graphs on <= 8 vertices: colour refinement, then the
// largest adjacency code over orderings that respect the refined cells.
struct Small {
  int n = 0;
  std::array<std::uint8_t, 8> adj{};
};

std::uint32_t encode(const Small& g, const std::vector<int>& order) {
  std::uint32_t c = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) c = c << 1 | (g.adj[order[i]] >> order[j] & 1);
  return c;
}

Small decode(int n, std::uint32_t code) {
  Small g;
  g.n = n;
  int bit = n * (n - 1) / 2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (code >> --bit & 1) g.adj[i] |= 1 << j, g.adj[j] |= 1 << i;
  return g;
}

std::uint32_t canonical_code(const Small& g) {
  const int n = g.n;
  std::vector<int> col(n, 0);
  for (int classes = 1;;) {
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v].first = col[v];
      for (int u = 0; u < n; ++u)
        if (g.adj[v] >> u & 1) sig[v].second.push_back(col[u]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v = 0; v < n; ++v)
      col[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) -
                                distinct.begin());
    if (static_cast<int>(distinct.size()) == classes) break;
    classes = static_cast<int>(distinct.size());
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return col[x] < col[y]; });
  std::vector<int> cell_start;
  for (int i = 0; i < n; ++i)
    if (i == 0 || col[order[i]] != col[order[i - 1]]) cell_start.push_back(i);
  cell_start.push_back(n);
  std::uint32_t best = 0;
  auto rec = [&](auto&& self, std::size_t cell) -> void {
    if (cell + 1 == cell_start.size()) {
      best = std::max(best, encode(g, order));
      return;
    }
    auto lo = order.begin() + cell_start[cell], hi = order.begin() + cell_start[cell + 1];
    std::sort(lo, hi);
    do self(self, cell + 1);
    while (std::next_permutation(lo, hi));
  };
  rec(rec, 0);
  return best;
}

std::vector<std::vector<Small>> graph_classes(int max_n) {
  std::vector<std::vector<Small>> out(max_n + 1);
  out[1].push_back(decode(1, 0));
  for (int n = 2; n <= max_n; ++n) {
    std::set<std::uint32_t> codes;
    for (const Small& h : out[n - 1])
      for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        Small g = h;
        g.n = n;
        for (int u = 0; u < n - 1; ++u)
          if (mask >> u & 1) g.adj[u] |= 1 << (n - 1), g.adj[n - 1] |= 1 << u;
        codes.insert(canonical_code(g));
      }
    for (std::uint32_t c : codes) out[n].push_back(decode(n, c));
  }
  return out;
}

// Cycles as vertex sequences (smallest vertex first, second < last).
std::vector<std::vector<int>> small_cycles(const Small& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  auto dfs = [&](auto&& self, int s, unsigned on) -> void {
    const int last = path.back();
    for (int y = s + 1; y < g.n; ++y) {
      if (!(g.adj[last] >> y & 1) || (on >> y & 1)) continue;
      path.push_back(y);
      if (path.size() >= 3 && (g.adj[y] >> s & 1) && path[1] < y) out.push_back(path);
      self(self, s, on | 1u << y);
      path.pop_back();
    }
  };
  for (int s = 0; s < g.n; ++s) {
    path = {s};
    dfs(dfs, s, 1u << s);
  }
  return out;
}

struct CycleEdges {
  std::vector<int> vertices, edges;
};

bool tagged_by_cycles(const std::vector<CycleEdges>& cycles, const Graph& h,
                      const EdgeColoring& c) {
  for (const auto& cyc : cycles) {
    const std::size_t len = cyc.edges.size();
    for (std::uint8_t off = 0; off < 2; ++off) {
      std::size_t pos[3], cnt = 0;
      for (std::size_t i = 0; i < len && cnt < 3; ++i)
        if (c[cyc.edges[i]] == off) pos[cnt++] = i;
      if (cnt == 1) return true;
      if (cnt != 2) continue;
      std::size_t mid;
      if (pos[1] == pos[0] + 1) mid = pos[1];
      else if (pos[0] == 0 && pos[1] == len - 1) mid = 0;
      else continue;
      const Part a = h.part(cyc.vertices[(mid + len - 1) % len]), b = h.part(cyc.vertices[mid]),
                 d = h.part(cyc.vertices[(mid + 1) % len]);
      if (a != b && b != d && a != d) return true;
    }
  }
  return false;
}

Outcome tagged_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto classes = graph_classes(8);
  const std::array<std::size_t, 9> known = {0, 1, 2, 4, 11, 34, 156, 1044, 12346};
  bool counts_ok = true;
  for (int n = 1; n <= 8; ++n) counts_ok &= classes[n].size() == known[n];

  Rng rng(5005);
  Digest d;
  std::uint64_t checks = 0, agree = 0, with = 0, bad_witness = 0;
  int graphs = 0;
  for (int n = 2; n <= 8; ++n)
    for (const Small& s : classes[n]) {
      std::vector<std::pair<int, int>> e;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (s.adj[u] >> v & 1) e.emplace_back(u, v);
      if (e.empty()) continue;
      // parts: the first proper 3-coloring when there is one
      std::vector<Part> parts(n);
      for (int v = 0; v < n; ++v) parts[v] = static_cast<Part>(v % 3);
      const Graph plain(n, e);
      for_each_proper_coloring(plain, 3, [&](std::span<const int> col) {
        for (int v = 0; v < n; ++v) parts[v] = static_cast<Part>(col[v]);
        return false;
      });
      const Graph h(n, e, parts);
      ++graphs;
      std::vector<CycleEdges> cycles;
      for (auto& cyc : small_cycles(s)) {
        CycleEdges ce{cyc, {}};
        for (std::size_t i = 0; i < cyc.size(); ++i)
          ce.edges.push_back(h.edge_id(cyc[i], cyc[(i + 1) % cyc.size()]));
        cycles.push_back(std::move(ce));
      }
      for (int k = 0; k < 200; ++k) {
        EdgeColoring c(h.edge_count());
        for (auto& x : c) x = static_cast<std::uint8_t>(rng.below(2));
        const bool expect = tagged_by_cycles(cycles, h, c);
        const auto w = find_tagged_cycle(h, c);
        ++checks;
        agree += w.has_value() == expect;
        with += expect;
        if (w && verify_tagged_witness(h, c, *w)) ++bad_witness;
        d.add(w.has_value());
        if (w) d.add(w->cycle);
      }
    }
  const double secs = seconds_since(t0);
  return {counts_ok && agree == checks && bad_witness == 0,
          fmt("%d graphs (every isomorphism class on 2..8 vertices with an edge; class counts "
              "1,2,4,11,34,156,1044,12346 %s), %llu colorings: %llu agree (%llu with a tagged "
              "cycle), %llu bad witnesses, %.1f s",
              graphs, counts_ok ? "reproduced" : "NOT reproduced",
              static_cast<unsigned long long>(checks), static_cast<unsigned long long>(agree),
              static_cast<unsigned long long>(with), static_cast<unsigned long long>(bad_witness),
              secs),
          d.value()};
}

// ------------------------------------------------------------------ 6
Outcome unique_coloring() {
  const Graph tri = oracle::complete_graph(3), c5 = oracle::cycle_graph(5);
  const Graph p3(3, {{0, 1}, {1, 2}});
  const auto a = count_proper_3_colorings(tri), b = count_proper_3_colorings(c5),
             c = count_proper_3_colorings(p3);
  const bool ok = a == 6 && b == 30 && c == 12 && oracle::colorings(tri, 3) == 6 &&
                  oracle::colorings(c5, 3) == 30 && oracle::colorings(p3, 3) == 12 &&
                  uniquely_3_colorable(tri) && !uniquely_3_colorable(c5) &&
                  !uniquely_3_colorable(p3);
  return {ok,
          fmt("triangle %llu (unique), C5 %llu, P3 %llu", static_cast<unsigned long long>(a),
              static_cast<unsigned long long>(b), static_cast<unsigned long long>(c)),
          0};
}

// ------------------------------------------------------------------ 7
Graph grotzsch() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(5 + i, (i + 1) % 5);
    e.emplace_back(5 + i, (i + 4) % 5);
    e.emplace_back(10, 5 + i);
  }
  return Graph(11, e);
}

Outcome increasing_cycles() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto k3 = increasing_cycle_unavoidable(oracle::complete_graph(3), 3);
  const Graph c5 = oracle::cycle_graph(5);
  const auto r5 = increasing_cycle_unavoidable(c5, 3);
  bool witness_ok = !r5.unavoidable && r5.witness.size() == 5;
  if (witness_ok) {
    for (const auto& e : c5.edges()) witness_ok &= r5.witness[e.u] != r5.witness[e.v];
    witness_ok &= !find_increasing_cycle(c5, r5.witness).has_value();
  }
  const auto gr = increasing_cycle_unavoidable(grotzsch(), 4);
  const double secs = seconds_since(t0);
  return {k3.unavoidable && witness_ok && gr.unavoidable && secs < 60,
          fmt("K3 %s; C5 %s (witness coloring re-checked); Grotzsch %s after %llu colorings; "
              "%.1f s",
              k3.unavoidable ? "true" : "false", r5.unavoidable ? "true" : "false",
              gr.unavoidable ? "true" : "false",
              static_cast<unsigned long long>(gr.colorings_checked), secs),
          0};
}

// ------------------------------------------------------------------ 8
Outcome pipeline_soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  Digest d;
  bool all_free = true, counts_match = true, thresholds = true;
  std::string detail;
  for (int n : {50, 100, 200}) {
    const double p = default_density(n);
    int few_deletions = 0, few_triangles = 0;
    double mean_triangles = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const TripartiteGraph before = sample_tripartite(n, p, seed);
      const PipelineResult r = run_pipeline(n, p, seed);
      const int v = r.graph.vertex_count();
      // triangles through each vertex of the input, and of the output
      auto per_vertex = [v](const Graph& g) {
        std::vector<std::vector<char>> a(v, std::vector<char>(v, 0));
        for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
        std::vector<int> t(v, 0);
        for (const auto& e : g.edges())
          for (int w = e.v + 1; w < v; ++w)
            if (a[e.u][w] && a[e.v][w]) ++t[e.u], ++t[e.v], ++t[w];
        return t;
      };
      const auto tin = per_vertex(before.graph()), tout = per_vertex(r.graph.graph());
      all_free &= std::all_of(tout.begin(), tout.end(), [](int x) { return x == 0; });
      counts_match &= tin == r.record.triangles_per_vertex;
      const std::uint64_t total = std::accumulate(tin.begin(), tin.end(), 0ULL) / 3;
      counts_match &= total == r.record.triangle_count_before;
      mean_triangles += static_cast<double>(total) / 50;
      few_deletions += r.record.deleted_edges.size() <= std::pow(n, 0.8);
      few_triangles += *std::max_element(tin.begin(), tin.end()) <= 4;
      d.add(r.record.deleted_edges.size());
      for (auto [a, b] : r.record.deleted_edges) d.add(static_cast<std::uint64_t>(a) << 32 | b);
    }
    if (n == 200) thresholds &= few_deletions >= 40;
    thresholds &= few_triangles >= 43;  // 85% of 50, rounded up
    detail += fmt("n=%d: mean triangles %.1f, deletions <= n^0.8 in %d/50, max per-vertex "
                  "triangles <= 4 in %d/50; ",
                  n, mean_triangles, few_deletions, few_triangles);
  }
  const double secs = seconds_since(t0);
  detail += fmt("outputs triangle-free: %s, %.1f s", all_free ? "all" : "NOT ALL", secs);
  return {all_free && counts_match && thresholds, detail, d.value()};
}

// ------------------------------------------------------------------ 9
Outcome convex_span() {
  const auto t0 = std::chrono::steady_clock::now();
  Digest d;
  const Graph tri(3, {{0, 1}, {1, 2}, {0, 2}}, {Part::A, Part::B, Part::C});
  const EquationSystem st = cycle_equation_system(tri);
  const auto rt = convex_span_search(st);
  bool tri_ok = rt.equation.has_value() && verify_convex_in_span(st, *rt.equation);
  if (tri_ok) {
    auto c = rt.equation->dense();
    std::sort(c.begin(), c.end());
    tri_ok = c == std::vector<Coeff>{-2, 1, 1};
  }
  const Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {Part::A, Part::B, Part::A, Part::B});
  const auto r4 = convex_span_search(cycle_equation_system(c4));
  const bool c4_ok = !r4.equation.has_value();

  int found = 0, reverified = 0, disagreements = 0, positions = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PipelineResult pr = run_pipeline(40, default_density(40), seed);
    const Graph h = largest_component(pr.graph.graph()).graph;
    const EquationSystem s = cycle_equation_system(h);
    const auto r = convex_span_search(s);
    disagreements += r.disagreements;
    positions += static_cast<int>(r.candidates.size());
    if (r.equation) {
      ++found;
      reverified += verify_convex_in_span(s, *r.equation);
    }
    d.add(static_cast<std::uint64_t>(r.position + 1));
    d.add(r.candidates.size());
  }
  const double secs = seconds_since(t0);
  return {tri_ok && c4_ok && disagreements == 0 && reverified == found && secs < 600,
          fmt("triangle -> (1,1,-2) %s; C4 -> %s; 10 pipeline graphs (n=40, largest "
              "component): %d positions decided, %d float/exact disagreements, %d convex "
              "equations found (%d re-verified), %.1f s",
              tri_ok ? "yes" : "NO", c4_ok ? "none" : "FOUND", positions, disagreements, found,
              reverified, secs),
          d.value()};
}

// ----------------------------------------------------------------- 10
TripartiteGraph random_tripartite(Rng& rng, int max_n, double p) {
  for (;;) {
    const int n = static_cast<int>(rng.between(3, max_n));
    std::array<int, 3> sizes{};
    std::vector<int> part;
    for (int v = 0; v < n; ++v) ++sizes[rng.below(3)];
    for (int q = 0; q < 3; ++q) part.insert(part.end(), sizes[q], q);
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (part[u] != part[v] && rng.bernoulli(p)) e.emplace_back(u, v);
    auto h = TripartiteGraph::from_global(sizes, e);
    if (h.edge_count() > 0 && h.graph().connected()) return h;
  }
}

Outcome hom_solutions() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1010);
  Digest d;
  std::uint64_t homs = 0, solutions = 0;
  int enumerations = 0, incomplete = 0;
  for (std::int64_t m = 1; m <= 8; ++m)
    for (int rep = 0; rep < 4; ++rep) {
      std::vector<std::int64_t> r;
      for (std::int64_t x = 1; x <= m; ++x)
        if (rng.bernoulli(0.4)) r.push_back(x);
      if (r.empty()) r.push_back(rng.between(1, m));
      const TripartiteGraph rs = build_rs_graph({m, r});
      const TripartiteGraph h = random_tripartite(rng, 8, 0.6);
      for (const RoleMap& roles : kRoleMaps) {
        const EquationSystem sys = cycle_equation_system(h, roles);
        HomOptions opt;
        for (int v = 0; v < h.vertex_count(); ++v) {
          Bitset dom(rs.vertex_count());
          const Part target = roles[index_of(h.graph().part(v))];
          for (int i = 0; i < rs.part_size(target); ++i) dom.set(rs.vertex(target, i));
          opt.domains.push_back(dom);
        }
        const HomCount hc =
            for_each_homomorphism(h.graph(), rs.graph(), opt, [&](std::span<const int> hom) {
              const auto x = hom_to_assignment(h, roles, hom, rs);
              bool ok = true;
              for (const auto& row : sys.rows()) {
                Coeff acc = 0;
                for (auto [v, c] : row.terms()) acc += c * x[v];
                ok &= acc == 0;
              }
              ++homs;
              solutions += ok;
              return true;
            });
        ++enumerations;
        incomplete += !hc.complete;
        d.add(hc.count);
      }
    }
  const double secs = seconds_since(t0);
  return {homs > 0 && solutions == homs && incomplete == 0,
          fmt("%d enumerations (m = 1..8, 4 random H each, six role maps): %llu homomorphisms, "
              "%llu satisfy every fundamental-cycle equation, %.1f s",
              enumerations, static_cast<unsigned long long>(homs),
              static_cast<unsigned long long>(solutions), secs),
          d.value()};
}

// ----------------------------------------------------------------- 11
Outcome sampler_success() {
  const auto t0 = std::chrono::steady_clock::now();
  const Graph g = blowup(oracle::cycle_graph(5), 20);
  const CyclePacking p = greedy_edge_disjoint_packing(g, 5);
  const bool packing_ok = !validate_packing(g, p).has_value();
  SamplerConfig cfg;
  cfg.k = 2;
  cfg.ell = 3;
  cfg.epsilon = static_cast<double>(p.size()) / (g.vertex_count() * g.vertex_count());
  cfg.cap_q_at_n = true;
  const Sampler s(g, cfg, p);
  Digest d;
  int found = 0, verified = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const TrialResult t = s.trial(11, i);
    d.add(t.found);
    d.add(t.witness);
    if (!t.found) continue;
    ++found;
    const auto& w = t.witness;
    bool ok = w.size() == 7 && std::set<int>(w.begin(), w.end()).size() == 7;
    for (std::size_t j = 0; ok && j < w.size(); ++j)
      ok = oracle::adj(g, w[j], w[(j + 1) % w.size()]);
    verified += ok;
  }
  const double freq = found / 300.0;
  const double secs = seconds_since(t0);
  return {packing_ok && freq >= 0.66 && verified == found,
          fmt("blowup(C5,20), k=2, l=3, packing of %zu 5-cycles, eps=%.4f: formula q=%llu, %s "
              "to %llu draws per set; structured success %d/300 = %.3f, %d/%d witnesses "
              "re-verified as 7-cycles, %.1f s",
              p.size(), cfg.epsilon, static_cast<unsigned long long>(cfg.sample_size()),
              s.q_capped() ? "capped" : "not capped",
              static_cast<unsigned long long>(s.draws_per_set()), found, freq, verified, found,
              secs),
          d.value()};
}

// ----------------------------------------------------------------- 12
Outcome peeling() {
  Digest d;
  const Graph k40 = oracle::complete_graph(40);
  const PeelResult rk = shortest_odd_cycle_peel(k40, 0.2);
  bool k_ok = rk.outcome == PeelOutcome::OddCycle && rk.cycle.size() == 3 &&
              rk.cycle.size() <= 2 / 0.2;
  for (std::size_t j = 0; k_ok && j < rk.cycle.size(); ++j)
    k_ok = oracle::adj(k40, rk.cycle[j], rk.cycle[(j + 1) % rk.cycle.size()]);

  Rng rng(1212);
  int bipartite = 0;
  for (int i = 0; i < 20; ++i) {
    const int a = static_cast<int>(rng.between(10, 30)), b = static_cast<int>(rng.between(10, 30));
    const Graph g = oracle::random_bipartite(a, b, 0.3 + 0.5 * rng.uniform(), rng);
    const PeelResult r = shortest_odd_cycle_peel(g, 0.02);
    bipartite += r.outcome == PeelOutcome::RemainderBipartite;
    d.add(static_cast<std::uint64_t>(r.outcome));
    d.add(r.remaining);
  }
  return {k_ok && bipartite == 20,
          fmt("K40 at eps=0.2 -> odd cycle of length %zu (bound %g); random bipartite: "
              "%d/20 remainder bipartite",
              rk.cycle.size(), 2 / 0.2, bipartite),
          d.value()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    bool randomized;
  };
  const std::vector<Criterion> criteria = {
      {1, "RS construction exactness", rs_exactness, true},
      {2, "genus-one oracle equivalence", genus_equivalence, true},
      {3, "fixed genus verdicts", fixed_verdicts, false},
      {4, "certified graphs have six genus-one systems", lemma_bridge, true},
      {5, "tagged-cycle oracle", tagged_oracle, true},
      {6, "unique 3-colorability counts", unique_coloring, false},
      {7, "increasing-cycle unavoidability", increasing_cycles, false},
      {8, "pipeline soundness", pipeline_soundness, true},
      {9, "convex span search", convex_span, true},
      {10, "homomorphisms give solutions", hom_solutions, true},
      {11, "structured sampler success", sampler_success, true},
      {12, "odd-cycle peeling", peeling, true},
  };
  int failures = 0;
  std::vector<std::uint64_t> digests;
  for (const auto& c : criteria) {
    const Outcome o = c.run();
    digests.push_back(o.digest);
    failures += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }

  const auto t0 = std::chrono::steady_clock::now();
  int reruns = 0, same = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!criteria[i].randomized) continue;
    ++reruns;
    same += criteria[i].run().digest == digests[i];
  }
  const bool det = same == reruns;
  failures += !det;
  std::printf("%s 13 determinism: %d/%d seeded criteria reproduced identical verdicts and "
              "witnesses on rerun, %.1f s\n",
              det ? "PASS" : "FAIL", same, reruns, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
