#include "rlab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rlab/parallel.hpp"
#include "rlab/random.hpp"

namespace rlab {

const char* sampler_mode_name(SamplerMode m) {
  return m == SamplerMode::Oblivious ? "oblivious" : "structured";
}

std::optional<SamplerMode> parse_sampler_mode(const std::string& s) {
  if (s == "oblivious") return SamplerMode::Oblivious;
  if (s == "structured") return SamplerMode::Structured;
  return std::nullopt;
}

std::uint64_t default_sample_size(int k, int ell, double epsilon) {
  const double q = 100.0 * k * k * std::log(10.0 * ell) / (epsilon * epsilon);
  if (!(q < 1e18)) throw std::invalid_argument("sample size overflows");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(q)));
}

void SamplerConfig::validate() const {
  if (k < 1 || ell <= k) throw std::invalid_argument("need 1 <= k < l");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
}

bool SamplerConfig::size_precondition(int n) const {
  return n >= 200.0 * ell * k * k / (epsilon * epsilon);
}

RefinedPacking refine_packing(const Graph& g, const CyclePacking& packing, double epsilon) {
  if (auto bad = validate_packing(g, packing)) throw std::invalid_argument(*bad);
  const int n = g.vertex_count();
  RefinedPacking out;
  out.threshold = epsilon * n / 2;
  std::vector<std::vector<std::size_t>> through(n);
  for (std::size_t c = 0; c < packing.size(); ++c)
    for (int v : packing.cycles[c]) through[v].push_back(c);
  std::vector<char> alive(packing.size(), 1);
  std::vector<std::size_t> load(n);
  for (int v = 0; v < n; ++v) load[v] = through[v].size();

  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (load[v] == 0 || load[v] >= out.threshold) continue;
      ++out.vertex_events;
      std::size_t dropped = 0;
      for (std::size_t c : through[v]) {
        if (!alive[c]) continue;
        alive[c] = 0;
        ++dropped;
        for (int w : packing.cycles[c]) --load[w];
      }
      out.removed_cycles += dropped;
      changed = true;
      break;
    }
  }
  out.c0.cycle_length = packing.cycle_length;
  for (std::size_t c = 0; c < packing.size(); ++c)
    if (alive[c]) out.c0.cycles.push_back(packing.cycles[c]);
  for (int v = 0; v < n; ++v)
    if (load[v] > 0) out.v0.push_back(v);

  // each event drops fewer than threshold cycles, and a vertex fires once
  if (out.vertex_events > static_cast<std::size_t>(n) ||
      static_cast<double>(out.removed_cycles) > out.vertex_events * out.threshold)
    throw std::logic_error("refinement removed more cycles than the bound allows");
  for (int v = 0; v < n; ++v)
    if (load[v] != 0 && load[v] < out.threshold)
      throw std::logic_error("refinement left a light vertex");
  return out;
}

std::vector<int> path_to_cycle_map(int k, int ell) {
  if (k < 1 || ell <= k) throw std::invalid_argument("need 1 <= k < l");
  std::vector<int> phi;
  for (int j = 1; j <= 2 * k + 1; ++j) phi.push_back(j);
  phi.push_back(1);
  while (static_cast<int>(phi.size()) < 2 * ell) {
    phi.push_back(2);
    phi.push_back(1);
  }
  return phi;
}

CleaningStructure build_cleaning_structure(const Graph& g, const CyclePacking& c0, int v0,
                                           const SamplerConfig& config) {
  config.validate();
  const int n = g.vertex_count(), len = 2 * config.k + 1;
  if (c0.cycle_length != len) throw std::invalid_argument("packing length is not 2k+1");
  CleaningStructure cs;
  cs.v0 = v0;
  cs.phi = path_to_cycle_map(config.k, config.ell);
  cs.degree_threshold = config.epsilon * config.epsilon * n / (50.0 * config.k * config.k);

  Bitset in_n(n);
  bool on_cycle = false;
  for (const auto& c : c0.cycles)
    for (int i = 0; i < len; ++i)
      if (c[i] == v0) {
        on_cycle = true;
        in_n.set(c[(i + 1) % len]);
        in_n.set(c[(i + len - 1) % len]);
      }
  if (!on_cycle) throw std::invalid_argument("v0 lies on no cycle of the packing");
  for (auto v = in_n.find_first(); v != Bitset::npos; v = in_n.find_next(v))
    cs.n_set.push_back(static_cast<int>(v));

  // C(v0) with f_C: start at the first N-vertex of the stored sequence.
  std::vector<std::vector<int>> lab;
  for (const auto& c : c0.cycles) {
    if (std::find(c.begin(), c.end(), v0) != c.end()) continue;
    int start = -1;
    for (int i = 0; i < len && start < 0; ++i)
      if (in_n.test(c[i])) start = i;
    if (start < 0) continue;
    std::vector<int> f(len);
    for (int j = 0; j < len; ++j) f[j] = c[(start + j) % len];
    lab.push_back(std::move(f));
  }
  cs.cv0_size = lab.size();

  std::vector<std::vector<int>> d(len, std::vector<int>(n, 0));
  for (const auto& f : lab)
    for (int j = 0; j < len; ++j) ++d[j][f[j]];
  std::vector<char> alive(lab.size(), 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (int j = 0; j < len && !changed; ++j)
      for (int u = 0; u < n && !changed; ++u) {
        if (d[j][u] == 0 || d[j][u] >= cs.degree_threshold) continue;
        for (std::size_t c = 0; c < lab.size(); ++c) {
          if (!alive[c] || lab[c][j] != u) continue;
          alive[c] = 0;
          for (int i = 0; i < len; ++i) --d[i][lab[c][i]];
        }
        changed = true;
      }
  }

  cs.c_star.cycle_length = len;
  for (std::size_t c = 0; c < lab.size(); ++c)
    if (alive[c]) {
      cs.c_star.cycles.push_back(lab[c]);
      cs.labelled.push_back(lab[c]);
    }
  cs.u.assign(len, {});
  for (int j = 0; j < len; ++j)
    for (int u = 0; u < n; ++u)
      if (d[j][u] > 0) cs.u[j].push_back(u);
  cs.degenerate = cs.c_star.cycles.empty();
  if (auto bad = check_cleaning_structure(g, c0, cs, config))
    throw std::logic_error("cleaning structure: " + *bad);
  return cs;
}

std::optional<std::string> check_cleaning_structure(const Graph& g, const CyclePacking& c0,
                                                    const CleaningStructure& cs,
                                                    const SamplerConfig& config) {
  const int len = 2 * config.k + 1, n = g.vertex_count();
  const auto& phi = cs.phi;
  if (static_cast<int>(phi.size()) != 2 * config.ell) return "phi has the wrong length";
  if (phi.front() != 1 || phi.back() != 1) return "phi does not start and end at 1";
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] < 1 || phi[i] > len) return "phi value out of range";
    if (i == 0) continue;
    const int step = (phi[i] - phi[i - 1] + len) % len;
    if (step != 1 && step != len - 1) return "phi is not a path homomorphism";
  }
  if (static_cast<int>(cs.u.size()) != len) return "wrong number of U sets";
  for (int u : cs.n_set)
    if (!g.adjacent(cs.v0, u)) return "N vertex not adjacent to v0";

  // every cycle of c_star comes from c0, avoids v0 and starts in N
  std::vector<std::vector<int>> d(len, std::vector<int>(n, 0));
  for (const auto& f : cs.labelled) {
    if (static_cast<int>(f.size()) != len) return "labelled cycle has wrong length";
    if (!std::binary_search(cs.n_set.begin(), cs.n_set.end(), f[0])) return "f_C(1) not in N";
    if (std::find(f.begin(), f.end(), cs.v0) != f.end()) return "cycle through v0 kept";
    if (!is_cycle(g, f)) return "labelled sequence is not a cycle";
    bool from_c0 = false;
    for (const auto& c : c0.cycles) {
      if (!std::is_permutation(c.begin(), c.end(), f.begin())) continue;
      from_c0 = true;
      break;
    }
    if (!from_c0) return "cleaned cycle is not in the packing";
    for (int j = 0; j < len; ++j) ++d[j][f[j]];
  }
  for (int j = 0; j < len; ++j) {
    std::vector<int> expect;
    for (int u = 0; u < n; ++u) {
      if (d[j][u] > 0 && d[j][u] < cs.degree_threshold) return "position class below threshold";
      if (d[j][u] > 0) expect.push_back(u);
    }
    if (expect != cs.u[j]) return "U set differs from the counts";
  }
  for (int u : cs.u[0])
    if (!std::binary_search(cs.n_set.begin(), cs.n_set.end(), u)) return "U_1 not inside N";
  for (int j = 0; j < len; ++j) {
    Bitset prev(n), next(n);
    for (int w : cs.u[(j + len - 1) % len]) prev.set(w);
    for (int w : cs.u[(j + 1) % len]) next.set(w);
    for (int u : cs.u[j])
      if (static_cast<double>((g.row(u) & prev).count()) < cs.degree_threshold ||
          static_cast<double>((g.row(u) & next).count()) < cs.degree_threshold)
        return "U vertex with too few neighbours in an adjacent U";
  }
  return std::nullopt;
}

Sampler::Sampler(const Graph& g, SamplerConfig config, std::optional<CyclePacking> packing)
    : g_(&g), config_(config) {
  config_.validate();
  q_ = config_.sample_size();
  if (config_.cap_q_at_n && q_ > static_cast<std::uint64_t>(g.vertex_count())) {
    q_ = static_cast<std::uint64_t>(g.vertex_count());
    q_capped_ = true;
  }
  if (config_.mode == SamplerMode::Oblivious) return;
  packing_ = packing ? std::move(*packing) : greedy_edge_disjoint_packing(g, 2 * config_.k + 1);
  if (packing_.cycle_length != 2 * config_.k + 1)
    throw std::invalid_argument("packing length is not 2k+1");
  refined_ = refine_packing(g, packing_, config_.epsilon);
  for (int v : refined_.v0)
    structures_.emplace(v, build_cleaning_structure(g, refined_.c0, v, config_));
}

const CleaningStructure* Sampler::structure(int v0) const {
  auto it = structures_.find(v0);
  return it == structures_.end() ? nullptr : &it->second;
}

bool Sampler::saturates() const {
  const int n = g_->vertex_count();
  return n > 0 && static_cast<double>(q_) > n * (std::log(n) + 40.0);
}

TrialResult Sampler::trial(std::uint64_t seed, std::uint64_t index) const {
  const Graph& g = *g_;
  const int n = g.vertex_count(), sets = config_.set_count();
  TrialResult res;
  if (n == 0) return res;
  res.saturated = saturates();

  std::vector<std::vector<int>> s(sets);
  Rng rng(seed, index);
  for (auto& si : s) {
    if (res.saturated) {
      for (int v = 0; v < n; ++v) si.push_back(v);
    } else {
      si.resize(q_);
      for (auto& v : si) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    }
  }
  Bitset all(n);
  for (const auto& si : s)
    for (int v : si) all.set(v);
  res.distinct_sampled = all.count();

  const int length = config_.cycle_length();
  const CycleSearch search = find_cycle(g, length, all, config_.search_node_cap);
  res.oblivious_found = search.status == SearchStatus::Found;
  res.search_budget_exceeded = search.status == SearchStatus::BudgetExceeded;

  if (config_.mode == SamplerMode::Oblivious) {
    res.found = res.oblivious_found;
    if (res.found) res.witness = search.cycle;
  } else {
    const CleaningStructure* cs = nullptr;
    for (int v : s[0])
      if ((cs = structure(v))) break;
    if (!cs) return res;
    res.v0 = cs->v0;
    if (cs->degenerate) {
      res.stage = -1;
      return res;
    }
    std::vector<Bitset> u(cs->u.size(), Bitset(n));
    for (std::size_t j = 0; j < cs->u.size(); ++j)
      for (int w : cs->u[j]) u[j].set(w);
    std::vector<int> path;
    Bitset used(n);
    used.set(cs->v0);
    for (int i = 1; i <= 2 * config_.ell; ++i) {
      const Bitset& target = u[cs->phi[i - 1] - 1];
      int pick = -1;
      for (int w : s[i]) {
        if (!target.test(w) || used.test(w)) continue;
        if (!path.empty() && !g.adjacent(path.back(), w)) continue;
        pick = w;
        break;
      }
      if (pick < 0) {
        res.stage = i;
        return res;
      }
      path.push_back(pick);
      used.set(pick);
    }
    res.stage = 2 * config_.ell + 1;
    res.found = true;
    res.witness.push_back(cs->v0);
    res.witness.insert(res.witness.end(), path.begin(), path.end());
  }
  if (res.found && (static_cast<int>(res.witness.size()) != length || !is_cycle(g, res.witness)))
    throw std::logic_error("sampler witness is not a cycle of the requested length");
  return res;
}

TrialResult run_sampler_trial(const Graph& g, const SamplerConfig& config, std::uint64_t seed) {
  return Sampler(g, config).trial(seed, 0);
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  const double z = 1.959963984540054, nn = static_cast<double>(n);
  const double p = k / nn, z2 = z * z;
  const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

SuccessEstimate estimate_success_probability(const Sampler& s, std::uint64_t trials,
                                             std::uint64_t seed, unsigned threads,
                                             std::size_t keep_witnesses) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  std::vector<TrialResult> out(trials);
  parallel_for(trials, threads, [&](std::size_t i) { out[i] = s.trial(seed, i); });
  SuccessEstimate e;
  e.trials = trials;
  for (const auto& t : out) {
    e.successes += t.found;
    e.oblivious_successes += t.oblivious_found;
    e.budget_exceeded += t.search_budget_exceeded;
    if (t.found && !t.oblivious_found && !t.search_budget_exceeded) ++e.structured_only;
    if (t.found && e.witnesses.size() < keep_witnesses) e.witnesses.push_back(t.witness);
  }
  e.frequency = static_cast<double>(e.successes) / trials;
  std::tie(e.ci_low, e.ci_high) = wilson_interval(e.successes, trials);
  return e;
}

GrowthFunction growth_step(int step) {
  if (step < 2 || step % 2) throw std::invalid_argument("growth step must be even and >= 2");
  return [step](int x) { return x + step; };
}

GrowthFunction growth_table(std::map<int, int> table) {
  for (auto [x, y] : table)
    if (x % 2 == 0 || y % 2 == 0 || y <= x)
      throw std::invalid_argument("growth table must map odd x to odd g(x) > x");
  return [t = std::move(table)](int x) {
    auto it = t.find(x);
    if (it == t.end()) throw std::out_of_range("growth table has no entry for " + std::to_string(x));
    return it->second;
  };
}

FamilyReport family_test(const Graph& g, const GrowthFunction& growth, int ell1, double epsilon,
                         const FamilyOptions& options) {
  if (!(epsilon > 0 && epsilon <= 0.5)) throw std::invalid_argument("epsilon must be in (0, 1/2]");
  if (ell1 < 3 || ell1 % 2 == 0) throw std::invalid_argument("l_1 must be odd and >= 3");
  const double n = g.vertex_count();
  FamilyReport rep;
  rep.epsilon = epsilon;
  std::optional<CyclePacking> certified;
  for (int len = 3; len <= 4 / epsilon; len += 2) {
    const int k = (len - 1) / 2;
    FamilyEntry e;
    e.length = len;
    CyclePacking p = greedy_edge_disjoint_packing(g, len);
    e.packing_size = p.size();
    e.threshold = epsilon * epsilon / (20.0 * k) * n * n;
    e.certified = p.size() > 0 && static_cast<double>(p.size()) >= e.threshold;
    rep.entries.push_back(e);
    if (e.certified) {
      rep.certified_length = len;
      certified = std::move(p);
      break;
    }
  }
  if (!rep.certified_length) {
    rep.peel = shortest_odd_cycle_peel(g, epsilon);
    return rep;
  }

  const int len = *rep.certified_length;
  rep.family.push_back(ell1);
  while (rep.family.back() <= len) {
    const int next = growth(rep.family.back());
    if (next <= rep.family.back() || next % 2 == 0)
      throw std::invalid_argument("growth function must map odd x to odd g(x) > x");
    rep.family.push_back(next);
  }
  rep.target_length = rep.family.back();

  SamplerConfig cfg;
  cfg.k = (len - 1) / 2;
  cfg.ell = (*rep.target_length - 1) / 2;
  cfg.epsilon = epsilon * epsilon / (20.0 * cfg.k);
  cfg.mode = options.mode;
  cfg.q = options.q;
  rep.config = cfg;
  rep.size_precondition = cfg.size_precondition(g.vertex_count());
  Sampler sampler(g, cfg, std::move(certified));
  rep.estimate = estimate_success_probability(sampler, options.trials, options.seed, options.threads);
  return rep;
}

}  // namespace rlab
