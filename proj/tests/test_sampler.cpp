#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "rlab/counting.hpp"
#include "rlab/rs_graph.hpp"
#include "rlab/sampler.hpp"

using namespace rlab;

namespace {

// Edge-disjoint decomposition of blowup(C_len, t) into t^2 copies of C_len:
// cycle (a, b) uses clone a + i b (mod t) in class i. Needs gcd(len-1, t) = 1.
CyclePacking natural_packing(int len, int t) {
  CyclePacking p;
  p.cycle_length = len;
  for (int a = 0; a < t; ++a)
    for (int b = 0; b < t; ++b) {
      std::vector<int> c;
      for (int i = 0; i < len; ++i) c.push_back(i * t + (a + i * b) % t);
      p.cycles.push_back(c);
    }
  return p;
}

std::vector<int> cycle_counts(const Graph& g, const CyclePacking& p) {
  std::vector<int> load(g.vertex_count(), 0);
  for (const auto& c : p.cycles)
    for (int v : c) ++load[v];
  return load;
}

}  // namespace

TEST_CASE("config, sample size and phi") {
  CHECK(default_sample_size(1, 2, 1.0) == static_cast<std::uint64_t>(std::ceil(100 * std::log(20.0))));
  SamplerConfig c;
  c.k = 2;
  c.ell = 3;
  c.epsilon = 0.5;
  CHECK(c.sample_size() == static_cast<std::uint64_t>(std::ceil(400 * std::log(30.0) / 0.25)));
  CHECK(c.total_sample_size() == 7 * c.sample_size());
  CHECK_FALSE(c.size_precondition(1000));
  CHECK(c.size_precondition(9600));
  c.ell = 2;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  CHECK(path_to_cycle_map(1, 2) == std::vector<int>{1, 2, 3, 1});
  CHECK(path_to_cycle_map(1, 3) == std::vector<int>{1, 2, 3, 1, 2, 1});
  CHECK(path_to_cycle_map(2, 3) == std::vector<int>{1, 2, 3, 4, 5, 1});
  for (int k = 1; k <= 4; ++k)
    for (int ell = k + 1; ell <= 8; ++ell) {
      auto phi = path_to_cycle_map(k, ell);
      REQUIRE(static_cast<int>(phi.size()) == 2 * ell);
      CHECK(phi.front() == 1);
      CHECK(phi.back() == 1);
      for (std::size_t i = 1; i < phi.size(); ++i) {
        const int step = (phi[i] - phi[i - 1] + 2 * k + 1) % (2 * k + 1);
        CHECK((step == 1 || step == 2 * k));
      }
    }
}

TEST_CASE("refine_packing") {
  // fixpoint: every vertex of the blown-up triangle is in 7 cycles
  Graph g = blowup(oracle::cycle_graph(3), 7);
  CyclePacking nat = natural_packing(3, 7);
  REQUIRE_FALSE(validate_packing(g, nat).has_value());
  auto r = refine_packing(g, nat, 0.1);
  CHECK(r.c0.size() == nat.size());
  CHECK(r.v0.size() == 21u);
  CHECK(r.removed_cycles == 0);

  // a single cycle with threshold above 1 disappears
  CyclePacking one{3, {nat.cycles[0]}};
  auto e = refine_packing(g, one, 0.5);
  CHECK(e.c0.size() == 0);
  CHECK(e.v0.empty());

  // RS(20, {1..10}) with eps = |family| / n^2, and a larger eps that bites
  RsParameters rp{20, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}};
  TripartiteGraph rs = build_rs_graph(rp);
  CyclePacking fam = canonical_triangle_family(rp);
  const double n = rs.vertex_count();
  for (double eps : {fam.size() / (n * n), 0.05, 0.1}) {
    auto rr = refine_packing(rs.graph(), fam, eps);
    auto load = cycle_counts(rs.graph(), rr.c0);
    for (int v = 0; v < rs.vertex_count(); ++v) CHECK((load[v] == 0 || load[v] >= eps * n / 2));
    std::vector<int> expect_v0;
    for (int v = 0; v < rs.vertex_count(); ++v)
      if (load[v] > 0) expect_v0.push_back(v);
    CHECK(rr.v0 == expect_v0);
    CHECK(rr.c0.size() + rr.removed_cycles == fam.size());
    CHECK(static_cast<double>(rr.removed_cycles) <= eps * n / 2 * n);
    if (eps == fam.size() / (n * n)) CHECK(rr.c0.size() > 0);
    MESSAGE("RS(20): eps=" << eps << " |C0|=" << rr.c0.size() << " |V0|=" << rr.v0.size());
  }
}

TEST_CASE("cleaning structure on blown-up odd cycles") {
  for (int len : {3, 5}) {
    const int t = 7, k = (len - 1) / 2;
    Graph g = blowup(oracle::cycle_graph(len), t);
    CyclePacking nat = natural_packing(len, t);
    REQUIRE_FALSE(validate_packing(g, nat).has_value());
    SamplerConfig cfg;
    cfg.k = k;
    cfg.ell = k + 2;
    cfg.epsilon = 1.0 / (len * len);  // |packing| = t^2 = eps n^2
    auto r = refine_packing(g, nat, cfg.epsilon);
    REQUIRE(r.c0.size() == nat.size());
    for (int v0 : {0, 3, t + 1}) {
      auto cs = build_cleaning_structure(g, r.c0, v0, cfg);
      CHECK_FALSE(check_cleaning_structure(g, r.c0, cs, cfg).has_value());
      CHECK_FALSE(cs.degenerate);
      const int cls = v0 / t;
      // N is the two neighbouring classes; U_1 is one of them and the U_j
      // walk the classes in order, one direction (v0 removed)
      CHECK(static_cast<int>(cs.n_set.size()) == 2 * t);
      CHECK(cs.cv0_size == nat.size() - t);
      REQUIRE_FALSE(cs.u[0].empty());
      const int c1 = cs.u[0][0] / t;
      CHECK((c1 == (cls + 1) % len || c1 == (cls + len - 1) % len));
      bool forward = true, backward = true;
      for (int j = 1; j <= len; ++j)
        for (int dir : {1, -1}) {
          std::vector<int> expect;
          const int c = ((c1 + dir * (j - 1)) % len + len) % len;
          for (int x = 0; x < t; ++x)
            if (c * t + x != v0) expect.push_back(c * t + x);
          (dir == 1 ? forward : backward) &= cs.u[j - 1] == expect;
        }
      CHECK((forward || backward));
    }
  }

  // thresholds too high for the instance: degenerate
  Graph g = blowup(oracle::cycle_graph(3), 5);
  CyclePacking p = greedy_edge_disjoint_packing(g, 3);
  SamplerConfig cfg;
  cfg.epsilon = 50;  // eps^2 n / 50 far above any count
  auto cs = build_cleaning_structure(g, p, p.cycles[0][0], cfg);
  CHECK(cs.degenerate);
  CHECK_FALSE(check_cleaning_structure(g, p, cs, cfg).has_value());
  CHECK_THROWS_AS(build_cleaning_structure(g, CyclePacking{3, {}}, 0, cfg), std::invalid_argument);
}

TEST_CASE("cleaning post-conditions on random graphs") {
  Rng rng(5);
  int built = 0, nondegenerate = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = oracle::random_graph(30, 0.3, rng);
    const int k = 1 + trial % 2;
    CyclePacking p = greedy_edge_disjoint_packing(g, 2 * k + 1);
    if (p.size() == 0) continue;
    SamplerConfig cfg;
    cfg.k = k;
    cfg.ell = k + 1 + trial % 3;
    cfg.epsilon = static_cast<double>(p.size()) / (30.0 * 30.0);
    auto r = refine_packing(g, p, cfg.epsilon);
    for (int v0 : r.v0) {
      auto cs = build_cleaning_structure(g, r.c0, v0, cfg);
      ++built;
      nondegenerate += !cs.degenerate;
      CHECK_FALSE(check_cleaning_structure(g, r.c0, cs, cfg).has_value());
      for (int u : cs.u[0]) CHECK(oracle::adj(g, v0, u));
    }
  }
  CHECK(nondegenerate > 0);
  MESSAGE("structures built: " << built << ", non-degenerate: " << nondegenerate);
}

TEST_CASE("trials: bipartite, saturated, blown-up cycles") {
  Rng rng(8);
  Graph bip = oracle::random_bipartite(10, 10, 0.5, rng);
  SamplerConfig ob;
  ob.mode = SamplerMode::Oblivious;
  ob.q = 1'000'000;
  Sampler sb(bip, ob);
  for (std::uint64_t i = 0; i < 20; ++i) CHECK_FALSE(sb.trial(1, i).found);
  CHECK(estimate_success_probability(sb, 30, 2).frequency == 0);

  // q large enough to cover the graph: the search is exhaustive
  Graph c5 = oracle::cycle_graph(5);
  Sampler cover(c5, ob);
  CHECK(cover.saturates());
  auto t = cover.trial(3, 0);
  CHECK(t.found);
  CHECK(t.saturated);
  CHECK(is_cycle(c5, t.witness));
  CHECK(estimate_success_probability(cover, 10, 4).frequency == 1);

  // many triangles -> pentagons; many pentagons -> heptagons
  struct Case {
    int len, t, k, ell;
  };
  for (auto [len, blow, k, ell] : {Case{3, 20, 1, 2}, Case{5, 20, 2, 3}}) {
    Graph g = blowup(oracle::cycle_graph(len), blow);
    CyclePacking p = greedy_edge_disjoint_packing(g, len);
    REQUIRE_FALSE(validate_packing(g, p).has_value());
    const double n = g.vertex_count();
    SamplerConfig cfg;
    cfg.k = k;
    cfg.ell = ell;
    cfg.epsilon = p.size() / (n * n);
    Sampler s(g, cfg, p);
    auto est = estimate_success_probability(s, 300, 11);
    CHECK(est.frequency >= 2.0 / 3);
    CHECK(est.structured_only == 0);
    for (const auto& w : est.witnesses) {
      CHECK(static_cast<int>(w.size()) == 2 * ell + 1);
      CHECK(is_cycle(g, w));
    }
    MESSAGE("blowup(C" << len << ", " << blow << "): |packing|=" << p.size() << " eps=" << cfg.epsilon
                       << " q=" << cfg.sample_size() << " freq=" << est.frequency
                       << " precondition=" << cfg.size_precondition(g.vertex_count()));

    // small explicit q exercises the unsaturated path; structured success
    // implies oblivious success on the same samples
    for (std::uint64_t q : {1, 2, 4}) {
      SamplerConfig small = cfg;
      small.q = q;
      Sampler ss(g, small, p);
      CHECK_FALSE(ss.saturates());
      for (std::uint64_t i = 0; i < 100; ++i) {
        auto r = ss.trial(17, i);
        if (r.found) {
          CHECK(r.oblivious_found);
          CHECK(is_cycle(g, r.witness));
          CHECK(oracle::adj(g, r.witness.front(), r.witness.back()));
        }
        CHECK(r.distinct_sampled <= q * small.set_count());
      }
    }
  }
}

TEST_CASE("estimates: determinism, consistency, monotonicity in q") {
  Graph g = blowup(oracle::cycle_graph(5), 12);
  SamplerConfig cfg;
  cfg.k = 2;
  cfg.ell = 3;
  cfg.mode = SamplerMode::Oblivious;
  cfg.q = 3;
  Sampler s(g, cfg);
  auto a = estimate_success_probability(s, 200, 99, 1);
  auto b = estimate_success_probability(s, 200, 99, 3);
  CHECK(a.successes == b.successes);
  CHECK(a.witnesses == b.witnesses);

  // disjoint seeds: each estimate lies in the other's interval band
  auto c = estimate_success_probability(s, 400, 1000);
  auto d = estimate_success_probability(s, 400, 2000);
  CHECK(c.ci_low <= c.frequency);
  CHECK(c.frequency <= c.ci_high);
  CHECK(std::abs(c.frequency - d.frequency) <= (c.ci_high - c.ci_low) + (d.ci_high - d.ci_low));

  double prev_low = 0, prev_freq = 0;
  for (std::uint64_t q : {1, 2, 3, 5, 8, 13}) {
    SamplerConfig qc = cfg;
    qc.q = q;
    auto e = estimate_success_probability(Sampler(g, qc), 300, 7);
    CHECK(e.ci_high >= prev_low);
    MESSAGE("q=" << q << " freq=" << e.frequency << " [" << e.ci_low << ", " << e.ci_high << "]");
    prev_low = e.ci_low;
    prev_freq = e.frequency;
  }
  CHECK(prev_freq > 0.9);

  auto [lo, hi] = wilson_interval(0, 10);
  CHECK(lo == 0);
  CHECK(hi == doctest::Approx(0.2775).epsilon(1e-3));
}

TEST_CASE("family harness") {
  const GrowthFunction plus2 = growth_step(2);
  FamilyOptions opt;
  opt.trials = 50;
  opt.seed = 3;

  auto tri = family_test(blowup(oracle::cycle_graph(3), 8), plus2, 3, 0.5, opt);
  REQUIRE(tri.certified_length.has_value());
  CHECK(*tri.certified_length == 3);
  CHECK(tri.target_length == 5);
  REQUIRE(tri.estimate.has_value());
  CHECK(tri.estimate->frequency >= 2.0 / 3);
  CHECK(tri.config->epsilon == doctest::Approx(0.25 / 20));

  auto pent = family_test(blowup(oracle::cycle_graph(5), 8), plus2, 3, 0.5, opt);
  REQUIRE(pent.certified_length.has_value());
  CHECK(pent.entries.front().packing_size == 0);
  CHECK(*pent.certified_length == 5);
  CHECK(pent.target_length == 7);
  CHECK(pent.estimate->frequency >= 2.0 / 3);
  for (const auto& w : pent.estimate->witnesses) CHECK(w.size() == 7u);

  // sparser family from a table: 3 -> 9, so the target after 5 is 9
  auto tab = family_test(blowup(oracle::cycle_graph(5), 8), growth_table({{3, 9}, {9, 21}}), 3, 0.5, opt);
  CHECK(tab.family == std::vector<int>{3, 9});
  CHECK(tab.target_length == 9);
  CHECK(tab.estimate->frequency >= 2.0 / 3);
  CHECK_THROWS_AS(growth_table({{3, 4}}), std::invalid_argument);

  Graph kb = blowup(Graph(2, {{0, 1}}), 6);
  auto bip = family_test(kb, plus2, 3, 0.25, opt);
  CHECK_FALSE(bip.certified_length.has_value());
  REQUIRE(bip.peel.has_value());
  CHECK(bip.peel->outcome == PeelOutcome::RemainderBipartite);
  CHECK(bip.entries.size() == 7u);  // lengths 3, 5, ..., 15 <= 4/eps
}

TEST_CASE("q capped at the vertex count") {
  Graph g = blowup(oracle::cycle_graph(5), 20);
  CyclePacking p = greedy_edge_disjoint_packing(g, 5);
  SamplerConfig cfg;
  cfg.k = 2;
  cfg.ell = 3;
  cfg.epsilon = p.size() / 1e4;
  cfg.cap_q_at_n = true;
  Sampler s(g, cfg, p);
  CHECK(s.q_capped());
  CHECK(s.draws_per_set() == 100u);
  CHECK_FALSE(s.saturates());
  auto est = estimate_success_probability(s, 300, 1);
  CHECK(est.frequency >= 0.66);
  CHECK(est.structured_only == 0);

  cfg.q = 7;
  Sampler small(g, cfg, p);
  CHECK_FALSE(small.q_capped());
  CHECK(small.draws_per_set() == 7u);
}
