#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "rlab/counting.hpp"

using namespace rlab;

TEST_CASE("triangles of K_{1,1,1} and CA-free graphs") {
  TripartiteGraph k111({1, 1, 1}, {{0, 0}}, {{0, 0}}, {{0, 0}});
  CHECK(count_triangles(k111.graph()) == 1);
  CHECK(list_triangles(k111) == std::vector<Triangle>{{0, 1, 2}});
  TripartiteGraph no_ca({2, 2, 2}, {{0, 0}, {1, 1}, {0, 1}}, {{0, 0}, {1, 1}}, {});
  CHECK(count_triangles(no_ca.graph()) == 0);
}

TEST_CASE("triangle listing matches brute force on random graphs") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = oracle::random_graph(5 + trial % 9, 0.5, rng);
    CHECK(count_triangles(g) == oracle::triangles(g));
    auto list = list_triangles(g);
    CHECK(list.size() == oracle::triangles(g));
    CHECK(std::is_sorted(list.begin(), list.end()));
    for (auto t : list) CHECK(is_cycle(g, t));
    auto per = triangles_per_vertex(g);
    CHECK(std::accumulate(per.begin(), per.end(), 0ULL) == 3 * list.size());
  }
}

TEST_CASE("homomorphism counts: fixed values") {
  Graph edge(2, {{0, 1}});
  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    Graph g = oracle::random_graph(6, 0.5, rng);
    CHECK(count_homomorphisms(edge, g).count == 2ULL * g.edge_count());
  }
  CHECK(count_homomorphisms(oracle::cycle_graph(5), oracle::cycle_graph(5)).count == 10);
  CHECK(count_homomorphisms(oracle::cycle_graph(4), edge).count == 2);
  CHECK(count_automorphisms(oracle::cycle_graph(5)) == 10);
  CHECK(count_automorphisms(oracle::complete_graph(4)) == 24);
  CHECK(count_copies(oracle::cycle_graph(3), oracle::complete_graph(4)) == 4);
  CHECK(count_copies(oracle::cycle_graph(4), oracle::complete_graph(4)) == 3);
}

TEST_CASE("homomorphism counts agree with full enumeration (|V| <= 7)") {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int hv = 1 + static_cast<int>(rng.below(4));
    int gv = 1 + static_cast<int>(rng.below(6));
    Graph h = oracle::random_graph(hv, 0.6, rng);
    Graph g = oracle::random_graph(gv, 0.6, rng);
    for (bool inj : {false, true}) {
      HomOptions opt;
      opt.injective = inj;
      CHECK(count_homomorphisms(h, g, opt).count == oracle::homs(h, g, inj));
    }
    // injective = |Aut| * copies
    HomOptions inj;
    inj.injective = true;
    auto copies = count_copies(h, g);
    REQUIRE(copies.has_value());
    CHECK(count_homomorphisms(h, g, inj).count == count_automorphisms(h) * *copies);
  }
}

TEST_CASE("homomorphism node cap signals budget") {
  HomOptions opt;
  opt.node_cap = 10;
  HomCount c = count_homomorphisms(oracle::cycle_graph(7), oracle::complete_graph(8), opt);
  CHECK_FALSE(c.complete);
  CHECK_FALSE(count_copies(oracle::cycle_graph(7), oracle::complete_graph(8), 10).has_value());
}

TEST_CASE("enumeration visits every homomorphism") {
  Graph h = oracle::cycle_graph(4);
  Graph g = oracle::complete_graph(3);
  std::uint64_t visited = 0;
  auto stats = for_each_homomorphism(h, g, {}, [&](std::span<const int> m) {
    for (const auto& e : h.edges()) CHECK(g.adjacent(m[e.u], m[e.v]));
    ++visited;
    return true;
  });
  CHECK(visited == stats.count);
  CHECK(visited == oracle::homs(h, g, false));
}

TEST_CASE("blowup") {
  Graph edge(2, {{0, 1}});
  Graph b = blowup(edge, 2);
  CHECK(b.vertex_count() == 4);
  CHECK(b.edge_count() == 4);
  // K_{2,2} is C4
  CHECK(count_automorphisms(b) == 8);
  CHECK(count_copies(oracle::cycle_graph(4), b) == 1);
  CHECK(blowup(edge, 1) == edge);

  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = oracle::random_graph(6, 0.4, rng, true);
    int t = 1 + trial % 3;
    Graph bg = blowup(g, t);
    CHECK(bg.vertex_count() == g.vertex_count() * t);
    CHECK(bg.edge_count() == g.edge_count() * t * t);
    // no edges inside a clone class
    for (int v = 0; v < g.vertex_count(); ++v)
      for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) CHECK_FALSE(bg.adjacent(v * t + i, v * t + j));
    // triangle-freeness preserved, and the part coloring lifts properly
    if (count_triangles(g) == 0) CHECK(count_triangles(bg) == 0);
    for (const auto& e : bg.edges()) CHECK(bg.part(e.u) != bg.part(e.v));
  }

  TripartiteGraph k111({1, 1, 1}, {{0, 0}}, {{0, 0}}, {{0, 0}});
  TripartiteGraph k222 = blowup(k111, 2);
  CHECK(k222.vertex_count() == 6);
  CHECK(k222.edge_count() == 12);
  CHECK(count_triangles(k222.graph()) == 8);
}
