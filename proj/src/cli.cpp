#include "rlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlab/coloring.hpp"
#include "rlab/convexity.hpp"
#include "rlab/counting.hpp"
#include "rlab/cycle_space.hpp"
#include "rlab/cycles.hpp"
#include "rlab/equations.hpp"
#include "rlab/graph_io.hpp"
#include "rlab/parallel.hpp"
#include "rlab/pseudorandom.hpp"
#include "rlab/rs_graph.hpp"
#include "rlab/sampler.hpp"
#include "rlab/tagged.hpp"

namespace rlab::cli {

using Json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 0;
  std::string format = "json";
  std::string witness_dir = ".";
};

// Everything a subcommand hands back to the dispatcher.
struct Outcome {
  int code = kPass;
  std::string verdict = "pass";
  Json parameters = Json::object();
  Json results = Json::object();
  Json table = Json::array();  // rows for --format csv
  std::vector<std::string> witness_files;
};

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

Json pair_list(const std::vector<std::pair<int, int>>& v) {
  Json a = Json::array();
  for (auto [x, y] : v) a.push_back({x, y});
  return a;
}

std::string rational_text(const Rational& r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

Graph load_general(const std::string& path) { return as_graph(load_graph_file(path)); }

RoleMap role_map(const std::string& perm) {
  auto r = parse_role_map(perm);
  if (!r) throw UsageError("--perm must be one of ABC, ACB, BAC, BCA, CAB, CBA");
  return *r;
}

std::string write_witness(const Common& c, const std::string& name, const Json& w) {
  std::filesystem::create_directories(c.witness_dir);
  const std::string path = (std::filesystem::path(c.witness_dir) / (name + ".json")).string();
  save_text_file(path, w.dump(2) + "\n");
  return path;
}

Json coloring_json(const Graph& g, std::span<const std::uint8_t> coloring) {
  Json a = Json::array();
  for (int id = 0; id < g.edge_count(); ++id)
    a.push_back({{"u", g.edge(id).u}, {"v", g.edge(id).v}, {"color", coloring[id] ? "black" : "white"}});
  return a;
}

EdgeColoring coloring_from_json(const Graph& g, const Json& a) {
  EdgeColoring c(g.edge_count(), 0);
  std::vector<char> seen(g.edge_count(), 0);
  for (const auto& e : a) {
    const int id = g.edge_id(e.at("u").get<int>(), e.at("v").get<int>());
    if (id < 0) throw UsageError("witness coloring names a non-edge");
    c[id] = e.at("color").get<std::string>() == "black";
    seen[id] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw UsageError("witness coloring misses an edge");
  return c;
}

std::string parts_text(std::span<const Part> parts) {
  std::string s;
  for (Part p : parts) s += static_cast<char>(std::toupper(part_letter(p)));
  return s;
}

// ------------------------------------------------------------------- rs

Outcome cmd_rs_build(const Common& c, std::int64_t m, const std::vector<std::int64_t>& r_list,
                     const std::string& r_file) {
  RsParameters p{m, r_list};
  if (!r_file.empty()) {
    auto more = parse_r_file(read_text_file(r_file));
    p.r.insert(p.r.end(), more.begin(), more.end());
  }
  if (p.r.empty()) throw UsageError("give R with --r or --r-file");
  p = normalized(p);
  TripartiteGraph g = build_rs_graph(p);
  CyclePacking fam = canonical_triangle_family(p);
  Outcome o;
  o.parameters = {{"m", p.m}, {"R", p.r}};
  const auto bad = validate_packing(g.graph(), fam);
  o.results = {{"vertex_count", g.vertex_count()},
               {"edge_count", g.edge_count()},
               {"triangle_count", count_triangles(g.graph())},
               {"packing_size", fam.size()},
               {"packing_valid", !bad.has_value()}};
  if (!c.out.empty()) {
    save_text_file(c.out, serialize_graph(g));
    o.results["graph_file"] = c.out;
  } else {
    o.results["graph"] = serialize_graph(g);
  }
  if (bad) o.code = kFail, o.verdict = "fail";
  return o;
}

// ------------------------------------------------------------------ eqs

Outcome cmd_eqs_extract(const Common& c, const std::string& graph, const std::string& perm) {
  Graph g = as_graph(load_graph_file(graph));
  EquationSystem s = cycle_equation_system(g, role_map(perm));
  Outcome o;
  o.parameters = {{"graph", graph}, {"perm", perm}};
  o.results = {{"rows", s.row_count()},
               {"variables", s.variable_count()},
               {"translation_invariant", s.translation_invariant()}};
  if (!c.out.empty()) {
    save_text_file(c.out, serialize_equation_system(s));
    o.results["system_file"] = c.out;
  } else {
    o.results["system"] = serialize_equation_system(s);
  }
  return o;
}

Json genus_witness(const EquationSystem& s, const std::vector<int>& t) {
  return {{"kind", "genus-subset"}, {"system", serialize_equation_system(s)}, {"subset", t}};
}

Outcome cmd_eqs_genus(const Common& c, const std::string& system, int cap) {
  EquationSystem s = parse_equation_system(read_text_file(system));
  GenusOptions opt;
  opt.cap = cap;
  GenusResult r = is_genus_one(s, opt);
  Outcome o;
  o.parameters = {{"system", system}, {"cap", cap}};
  o.results = {{"genus_one", verdict_name(r.verdict)}, {"engine", r.engine}, {"nodes", r.nodes}};
  if (!r.note.empty()) o.results["note"] = r.note;
  if (r.verdict == Verdict::True) return o;
  o.code = kFail;
  o.verdict = r.verdict == Verdict::False ? "fail" : "inconclusive";
  if (r.verdict == Verdict::False) {
    o.results["witness"] = r.witness;
    o.witness_files.push_back(write_witness(c, "eqs-genus-subset", genus_witness(s, r.witness)));
  }
  return o;
}

// ------------------------------------------------------------------ sgo

Outcome cmd_sgo_certify(const Common& c, const std::string& graph, std::uint64_t budget,
                        std::uint64_t samples) {
  Graph g = load_general(graph);
  CertifyOptions opt;
  opt.budget = budget;
  opt.samples = samples;
  opt.seed = c.seed;
  opt.threads = c.threads;
  CertifyResult r = certify_strongly_genus_one(g, opt);
  Outcome o;
  o.parameters = {{"graph", graph}, {"budget", budget}, {"samples", samples}};
  o.results = {{"status", certify_status_name(r.status)},
               {"mode", r.mode},
               {"colorings_checked", r.colorings_checked},
               {"colorings_total", r.colorings_total},
               {"partition", parts_text(r.partition)}};
  if (!r.note.empty()) o.results["note"] = r.note;
  switch (r.status) {
    case CertifyStatus::Certified: return o;
    case CertifyStatus::Counterexample: {
      o.code = kFail;
      o.verdict = "counterexample";
      Json w = {{"kind", "sgo-counterexample"},
                {"graph", serialize_graph(g)},
                {"partition", parts_text(r.partition)},
                {"coloring", coloring_json(g, r.counterexample)}};
      o.results["counterexample"] = w["coloring"];
      o.witness_files.push_back(write_witness(c, "sgo-counterexample", w));
      return o;
    }
    case CertifyStatus::NotUniquely3Colorable: {
      o.code = kFail;
      o.verdict = "fail";
      Json w = {{"kind", "sgo-not-unique"}, {"graph", serialize_graph(g)}};
      o.witness_files.push_back(write_witness(c, "sgo-not-unique", w));
      return o;
    }
    case CertifyStatus::Inconclusive: break;
  }
  o.code = kFail;
  o.verdict = "inconclusive";
  return o;
}

// --------------------------------------------------------------- pseudo

Outcome cmd_pseudo_run(const Common& c, int n, double p, const std::string& check,
                       const std::string& rule, std::uint64_t trials, bool exact,
                       const std::string& graph_out) {
  if (n < 1) throw UsageError("--n must be positive");
  if (p < 0) p = default_density(n);
  DeletionRule dr;
  if (rule == "lex") dr = DeletionRule::Lexicographic;
  else if (rule == "ca") dr = DeletionRule::CaFirst;
  else throw UsageError("--rule must be lex or ca");

  std::vector<Property> props;
  if (check == "all") {
    props.assign(std::begin(kAllProperties), std::end(kAllProperties));
  } else if (check != "none") {
    std::stringstream ss(check);
    for (std::string tok; std::getline(ss, tok, ',');) {
      auto prop = parse_property(tok);
      if (!prop) throw UsageError("unknown property '" + tok + "'");
      props.push_back(*prop);
    }
  }

  PipelineResult pr = run_pipeline(n, p, c.seed, dr);
  const PipelineRecord& rec = pr.record;
  Outcome o;
  o.parameters = {{"n", n}, {"p", p}, {"rule", rule}, {"check", check},
                  {"trials", trials}, {"exact", exact}};
  o.results["record"] = {{"n", rec.n},
                         {"p", rec.p},
                         {"seed", rec.seed},
                         {"triangle_count_before", rec.triangle_count_before},
                         {"deleted_count", rec.deleted_edges.size()},
                         {"deletion_bound_n45", std::pow(n, 0.8)},
                         {"max_triangles_per_vertex", rec.max_triangles_per_vertex()},
                         {"max_deleted_per_vertex", rec.max_deleted_per_vertex()},
                         {"deleted_edges", pair_list(rec.deleted_edges)},
                         {"edge_count_after", pr.graph.edge_count()}};
  if (!graph_out.empty()) {
    save_text_file(graph_out, serialize_graph(pr.graph));
    o.results["graph_file"] = graph_out;
  }
  Json verdicts = Json::array();
  bool any_fail = false;
  for (Property prop : props) {
    CheckOptions opt;
    opt.trials = trials;
    opt.seed = c.seed;
    opt.exact = exact && (prop == Property::TriangleFree || prop == Property::UniqueColoring);
    CheckResult r = property_check(pr.graph, prop, opt);
    Json row = {{"property", property_name(prop)},
                {"status", check_status_name(r.status)},
                {"exact", r.exact},
                {"trials_run", r.trials_run},
                {"detail", r.detail}};
    if (r.status == CheckStatus::Fail) {
      any_fail = true;
      Json w = {{"kind", "pseudo-property"},
                {"property", property_name(prop)},
                {"graph", serialize_graph(pr.graph)},
                {"third_of_edges", opt.third_of_edges},
                {"expansion_factor", opt.expansion_factor},
                {"one_edge", opt.one_edge},
                {"x", r.witness.x},
                {"y", r.witness.y},
                {"z", r.witness.z},
                {"edges", pair_list(r.witness.edges)}};
      const std::string name = std::string("pseudo-") + property_name(prop) + "-n" +
                               std::to_string(n) + "-s" + std::to_string(c.seed);
      row["witness_file"] = write_witness(c, name, w);
      o.witness_files.push_back(row["witness_file"]);
    }
    verdicts.push_back(row);
    o.table.push_back({{"property", row["property"]}, {"status", row["status"]},
                       {"exact", row["exact"]}, {"trials_run", row["trials_run"]}});
  }
  o.results["properties"] = verdicts;
  if (any_fail) o.code = kFail, o.verdict = "fail";
  return o;
}

// --------------------------------------------------------------- convex

Outcome cmd_convex_search(const Common& c, const std::string& system, const std::string& graph,
                          const std::string& perm, bool all) {
  EquationSystem s;
  Outcome o;
  if (!system.empty() == !graph.empty()) throw UsageError("give exactly one of --system, --graph");
  if (!system.empty()) {
    s = parse_equation_system(read_text_file(system));
    o.parameters = {{"system", system}};
  } else {
    Graph g = load_general(graph);
    o.parameters = {{"graph", graph}, {"perm", perm}};
    if (!g.connected()) {
      Component comp = largest_component(g);
      o.results["largest_component_vertices"] = comp.vertices.size();
      g = comp.graph;
    }
    s = cycle_equation_system(g, role_map(perm));
  }
  o.parameters["all_positions"] = all;
  ConvexOptions opt;
  opt.stop_at_first = !all;
  opt.threads = c.threads;
  ConvexSearchResult r = convex_span_search(s, opt);
  o.results["rows"] = s.row_count();
  o.results["variables"] = s.variable_count();
  o.results["found"] = r.equation.has_value();
  if (r.equation) {
    o.results["equation"] = format_equation(*r.equation);
    o.results["position"] = r.position;
    Json lam = Json::array();
    for (const auto& l : r.multipliers) lam.push_back(rational_text(l));
    o.results["multipliers"] = lam;
    o.results["reverified"] = verify_convex_in_span(s, *r.equation);
  }
  o.results["disagreements"] = r.disagreements;
  Json cands = Json::array();
  for (const auto& cand : r.candidates) {
    Json row = {{"position", cand.position},
                {"feasible", cand.feasible},
                {"float_feasible", cand.float_feasible},
                {"method", cand.method}};
    o.table.push_back(row);
    if (!cand.separating.empty()) row["separating_solution"] = cand.separating;
    cands.push_back(row);
  }
  o.results["candidates"] = cands;
  o.verdict = r.equation ? "found" : "none";
  if (r.disagreements > 0) o.verdict += "-with-disagreements";
  return o;
}

// -------------------------------------------------------------- sampler

struct SamplerArgs {
  std::string graph;
  int k = 1, ell = 2;
  double eps = -1;
  std::uint64_t trials = 100;
  std::string mode = "structured";
  std::uint64_t q = 0;
  bool cap_q = false;
  int ell1 = 3;
  int g_step = 2;
  std::string g_table;
};

Json config_json(const SamplerConfig& cfg) {
  return {{"k", cfg.k},
          {"l", cfg.ell},
          {"epsilon", cfg.epsilon},
          {"q", cfg.sample_size()},
          {"set_count", cfg.set_count()},
          {"total_sample_size", cfg.total_sample_size()},
          {"mode", sampler_mode_name(cfg.mode)},
          {"cap_q_at_n", cfg.cap_q_at_n}};
}

Json estimate_json(const SuccessEstimate& e) {
  Json w = Json::array();
  for (const auto& c : e.witnesses) w.push_back(c);
  return {{"trials", e.trials},
          {"successes", e.successes},
          {"frequency", e.frequency},
          {"ci95", {e.ci_low, e.ci_high}},
          {"oblivious_successes", e.oblivious_successes},
          {"structured_only", e.structured_only},
          {"budget_exceeded", e.budget_exceeded},
          {"witnesses", w}};
}

SamplerMode mode_of(const std::string& m) {
  auto r = parse_sampler_mode(m);
  if (!r) throw UsageError("--mode must be structured or oblivious");
  return *r;
}

Outcome cmd_sampler(const Common& c, const std::string& action, const SamplerArgs& a) {
  Graph g = load_general(a.graph);
  const double n = g.vertex_count();
  Outcome o;
  if (action == "family") {
    if (a.eps < 0) throw UsageError("family needs --eps");
    GrowthFunction growth = growth_step(a.g_step);
    if (!a.g_table.empty()) {
      std::map<int, int> t;
      std::stringstream ss(a.g_table);
      for (std::string tok; std::getline(ss, tok, ',');) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw UsageError("--g-table entries look like 3:5");
        t[std::stoi(tok.substr(0, colon))] = std::stoi(tok.substr(colon + 1));
      }
      growth = growth_table(t);
    }
    FamilyOptions fo;
    fo.trials = a.trials;
    fo.seed = c.seed;
    fo.threads = c.threads;
    fo.mode = mode_of(a.mode);
    fo.q = a.q;
    FamilyReport r = family_test(g, growth, a.ell1, a.eps, fo);
    o.parameters = {{"graph", a.graph}, {"eps", a.eps}, {"l1", a.ell1},
                    {"g", a.g_table.empty() ? "x+" + std::to_string(a.g_step) : a.g_table},
                    {"trials", a.trials}, {"mode", a.mode}};
    Json entries = Json::array();
    for (const auto& e : r.entries) {
      Json row = {{"length", e.length}, {"packing_size", e.packing_size},
                  {"threshold", e.threshold}, {"certified", e.certified}};
      entries.push_back(row);
      o.table.push_back(row);
    }
    o.results["entries"] = entries;
    if (r.certified_length) {
      o.results["certified_length"] = *r.certified_length;
      o.results["family"] = r.family;
      o.results["target_length"] = *r.target_length;
      o.results["config"] = config_json(*r.config);
      o.results["size_precondition"] = r.size_precondition;
      o.results["estimate"] = estimate_json(*r.estimate);
      if (r.estimate->frequency < 2.0 / 3) o.code = kFail, o.verdict = "fail";
    } else {
      static const char* names[] = {"odd-cycle", "remainder-bipartite", "remainder-empty"};
      o.verdict = "no-certified-length";
      o.results["peel"] = {{"outcome", names[static_cast<int>(r.peel->outcome)]},
                           {"remaining", r.peel->remaining.size()},
                           {"cycle", r.peel->cycle},
                           {"threshold", r.peel->threshold}};
    }
    return o;
  }

  SamplerConfig cfg;
  cfg.k = a.k;
  cfg.ell = a.ell;
  cfg.mode = mode_of(a.mode);
  cfg.q = a.q;
  cfg.cap_q_at_n = a.cap_q;
  std::optional<CyclePacking> packing;
  if (cfg.mode == SamplerMode::Structured || a.eps < 0) {
    cfg.validate();
    packing = greedy_edge_disjoint_packing(g, 2 * cfg.k + 1);
    o.results["packing_size"] = packing->size();
  }
  cfg.epsilon = a.eps > 0 ? a.eps : (packing && n > 0 ? packing->size() / (n * n) : 0);
  if (!(cfg.epsilon > 0)) throw UsageError("no (2k+1)-cycles to derive --eps from; pass --eps");
  Sampler s(g, cfg, packing);
  o.parameters = {{"graph", a.graph}, {"trials", a.trials}};
  o.results["config"] = config_json(cfg);
  o.results["draws_per_set"] = s.draws_per_set();
  o.results["q_capped"] = s.q_capped();
  o.results["saturated"] = s.saturates();
  o.results["size_precondition"] = cfg.size_precondition(g.vertex_count());
  if (cfg.mode == SamplerMode::Structured) {
    o.results["c0_size"] = s.refined().c0.size();
    o.results["v0_size"] = s.refined().v0.size();
    o.results["refine_threshold"] = s.refined().threshold;
  }
  if (action == "trial") {
    TrialResult t = s.trial(c.seed, 0);
    o.results["found"] = t.found;
    o.results["witness"] = t.witness;
    o.results["oblivious_found"] = t.oblivious_found;
    o.results["stage"] = t.stage;
    o.results["v0"] = t.v0;
    o.results["distinct_sampled"] = t.distinct_sampled;
    if (!t.found) o.code = kFail, o.verdict = "not-found";
    else o.verdict = "found";
    return o;
  }
  if (action != "estimate") throw UsageError("sampler action must be trial, estimate or family");
  SuccessEstimate e = estimate_success_probability(s, a.trials, c.seed, c.threads);
  o.results["estimate"] = estimate_json(e);
  o.table.push_back({{"q", s.draws_per_set()}, {"trials", e.trials}, {"successes", e.successes},
                     {"frequency", e.frequency}, {"ci_low", e.ci_low}, {"ci_high", e.ci_high}});
  if (e.frequency < 2.0 / 3) o.code = kFail, o.verdict = "fail";
  return o;
}

// --------------------------------------------------------------- oracle

// Plain enumeration of all proper non-empty variable subsets.
std::optional<std::vector<int>> brute_genus_witness(const EquationSystem& s) {
  const int k = s.variable_count();
  if (k > 24) throw UsageError("oracle genus enumerates 2^k subsets; k <= 24 required");
  const auto rows = s.dense_rows();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
    bool all_zero = true;
    for (const auto& row : rows) {
      Coeff sum = 0;
      for (int v = 0; v < k; ++v)
        if (mask >> v & 1) sum += row[v];
      if (sum != 0) {
        all_zero = false;
        break;
      }
    }
    if (!all_zero) continue;
    std::vector<int> t;
    for (int v = 0; v < k; ++v)
      if (mask >> v & 1) t.push_back(v);
    return t;
  }
  return std::nullopt;
}

Outcome cmd_oracle(const Common& c, const std::string& what, const std::string& graph,
                   const std::string& system, int q, int t, double eps) {
  Outcome o;
  if (what == "genus") {
    if (system.empty()) throw UsageError("oracle genus needs --system");
    EquationSystem s = parse_equation_system(read_text_file(system));
    o.parameters = {{"system", system}};
    if (!s.translation_invariant()) {
      o.results["genus_one"] = "false";
      o.results["reason"] = "not translation-invariant";
      o.code = kFail, o.verdict = "fail";
      return o;
    }
    auto w = brute_genus_witness(s);
    o.results["genus_one"] = w ? "false" : "true";
    if (w) {
      o.code = kFail, o.verdict = "fail";
      o.results["witness"] = *w;
      o.witness_files.push_back(write_witness(c, "oracle-genus-subset", genus_witness(s, *w)));
    }
    return o;
  }
  if (graph.empty()) throw UsageError("oracle " + what + " needs --graph");
  Graph g = load_general(graph);
  o.parameters = {{"graph", graph}};
  if (what == "colorings") {
    o.parameters["q"] = q;
    const std::uint64_t count = count_proper_colorings(g, q);
    o.results["colorings"] = count;
    o.results["uniquely_colorable"] = g.connected() && count == std::tgamma(q + 1.0);
  } else if (what == "triangles") {
    o.results["triangles"] = count_triangles(g);
    o.results["per_vertex_max"] = [&] {
      auto v = triangles_per_vertex(g);
      return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
    }();
  } else if (what == "increasing") {
    o.parameters["t"] = t;
    IncreasingResult r = increasing_cycle_unavoidable(g, t);
    o.results["unavoidable"] = r.unavoidable;
    o.results["colorings_checked"] = r.colorings_checked;
    if (!r.unavoidable) {
      o.code = kFail, o.verdict = "fail";
      o.results["coloring"] = r.witness;
      Json w = {{"kind", "increasing-free-coloring"},
                {"graph", serialize_graph(g)},
                {"t", t},
                {"coloring", r.witness}};
      o.witness_files.push_back(write_witness(c, "oracle-increasing-free", w));
    }
  } else if (what == "peel") {
    o.parameters["eps"] = eps;
    PeelResult r = shortest_odd_cycle_peel(g, eps);
    static const char* names[] = {"odd-cycle", "remainder-bipartite", "remainder-empty"};
    o.results["outcome"] = names[static_cast<int>(r.outcome)];
    o.results["remaining"] = r.remaining.size();
    o.results["cycle"] = r.cycle;
    o.results["cycle_length"] = r.cycle.size();
    o.results["threshold"] = r.threshold;
    o.results["length_bound"] = 2 / eps;
    if (r.outcome == PeelOutcome::OddCycle &&
        (!is_cycle(g, r.cycle) || r.cycle.size() % 2 == 0 || r.cycle.size() > 2 / eps))
      o.code = kFail, o.verdict = "fail";
  } else {
    throw UsageError("oracle must be genus, colorings, triangles, increasing or peel");
  }
  return o;
}

// --------------------------------------------------------------- verify

std::vector<int> vec(const Json& j) { return j.get<std::vector<int>>(); }

// Each branch re-derives the failing property from the witness alone.
std::optional<std::string> check_pseudo(const Json& w) {
  const auto any = parse_graph(w.at("graph").get<std::string>());
  const auto* hp = std::get_if<TripartiteGraph>(&any);
  if (!hp) return "witness graph is not tripartite";
  const TripartiteGraph& h = *hp;
  const Graph& g = h.graph();
  const std::string prop = w.at("property");
  const auto x = vec(w.at("x")), y = vec(w.at("y")), z = vec(w.at("z"));
  auto part_of = [&](const std::vector<int>& s) -> std::optional<Part> {
    if (s.empty()) return std::nullopt;
    for (int v : s)
      if (v < 0 || v >= g.vertex_count() || g.part(v) != g.part(s[0])) return std::nullopt;
    return g.part(s[0]);
  };
  auto distinct = [](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
  };
  auto ceil_div = [](std::size_t a, std::size_t b) { return (a + b - 1) / b; };

  if (prop == "triangle-free") {
    if (x.size() != 3 || !g.adjacent(x[0], x[1]) || !g.adjacent(x[1], x[2]) || !g.adjacent(x[0], x[2]))
      return "witness is not a triangle";
    return std::nullopt;
  }
  if (prop == "half-subgraph-connectivity") {
    std::set<std::pair<int, int>> ab;
    for (auto [a, b] : h.edges_ab()) ab.insert({h.vertex(Part::A, a), h.vertex(Part::B, b)});
    std::set<std::pair<int, int>> f;
    for (const auto& e : w.at("edges")) {
      std::pair<int, int> p{e[0].get<int>(), e[1].get<int>()};
      if (!ab.count(p)) return "witness edge is not an A-B edge";
      f.insert(p);
    }
    const std::size_t need = ceil_div(ab.size(), w.at("third_of_edges").get<bool>() ? 3 : 2);
    if (f.size() < need) return "witness keeps too few edges";
    // components of (A u B, f) by depth-first search
    std::vector<std::vector<int>> adj(g.vertex_count());
    for (auto [u, v] : f) adj[u].push_back(v), adj[v].push_back(u);
    std::vector<int> comp(g.vertex_count(), -1);
    const int na = h.part_size(Part::A), nb = h.part_size(Part::B);
    for (int s = 0; s < na + nb; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = s;
      int ca = 0, cb = 0;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        (u < na ? ca : cb)++;
        for (int v : adj[u])
          if (comp[v] < 0) comp[v] = s, stack.push_back(v);
      }
      if (10 * ca >= na && 10 * cb >= nb) return "a component has n/10 vertices on both sides";
    }
    return std::nullopt;
  }
  if (prop == "common-neighborhood") {
    auto px = part_of(x), py = part_of(y);
    if (!px || !py || *px == *py || !distinct(x) || !distinct(y)) return "bad witness sets";
    const Part q = static_cast<Part>(3 - index_of(*px) - index_of(*py));
    if (x.size() < ceil_div(h.part_size(*px), 10) || y.size() < ceil_div(h.part_size(*py), 10))
      return "witness sets are too small";
    std::size_t common = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (g.part(v) != q) continue;
      bool hx = false, hy = false;
      for (int a : x) hx |= g.adjacent(v, a);
      for (int b : y) hy |= g.adjacent(v, b);
      common += hx && hy;
    }
    if (common >= ceil_div(99 * h.part_size(q), 100)) return "common neighbourhood is large";
    return std::nullopt;
  }
  if (prop == "expansion") {
    auto pz = part_of(z);
    if (!pz || !distinct(z)) return "bad witness set";
    if (z.size() > static_cast<std::size_t>(h.part_size(*pz)) / 12) return "witness set too large";
    const int f = w.at("expansion_factor").get<int>();
    for (Part q : kParts) {
      if (q == *pz) continue;
      std::set<int> nb;
      for (int v : z)
        for (int u : g.neighbors(v))
          if (g.part(u) == q) nb.insert(u);
      if (nb.size() <= static_cast<std::size_t>(f) * z.size()) return std::nullopt;
    }
    return "witness set expands into both other parts";
  }
  if (prop == "big-sets") {
    auto px = part_of(x), py = part_of(y);
    if (!px || !py || *px == *py || !distinct(x) || !distinct(y)) return "bad witness sets";
    if (x.size() < ceil_div(h.part_size(*px), 100) || y.size() < ceil_div(h.part_size(*py), 100))
      return "witness sets are too small";
    std::size_t e = 0;
    for (int a : x)
      for (int b : y) e += g.adjacent(a, b);
    const std::size_t need = w.at("one_edge").get<bool>() ? 1 : h.part_size(*px);
    if (e >= need) return "enough edges between the sets";
    return std::nullopt;
  }
  if (prop == "unique-3-coloring") {
    if (!g.connected()) return std::nullopt;
    // the part labels are a proper coloring; a vertex seeing at most one other
    // part can be recoloured, so the coloring is not unique
    if (x.size() == 1 && x[0] >= 0 && x[0] < g.vertex_count()) {
      bool proper = true;
      for (const auto& e : g.edges()) proper &= g.part(e.u) != g.part(e.v);
      std::set<Part> seen;
      for (int u : g.neighbors(x[0])) seen.insert(g.part(u));
      if (proper && seen.size() <= 1) return std::nullopt;
    }
    auto c = count_proper_colorings_capped(g, 3, 6, 50'000'000);
    if (!c.complete) return "coloring count did not finish";
    if (c.count == 6) return "graph has exactly 6 proper 3-colorings";
    return std::nullopt;
  }
  return "unknown property " + prop;
}

std::optional<std::string> check_witness(const Json& w) {
  const std::string kind = w.at("kind");
  if (kind == "genus-subset") {
    EquationSystem s = parse_equation_system(w.at("system").get<std::string>());
    const auto t = vec(w.at("subset"));
    std::set<int> ts(t.begin(), t.end());
    if (ts.empty() || static_cast<int>(ts.size()) >= s.variable_count() ||
        *ts.begin() < 0 || *ts.rbegin() >= s.variable_count())
      return "subset is not proper and non-empty";
    for (const auto& row : s.rows()) {
      Coeff sum = 0;
      for (auto [v, coef] : row.terms())
        if (ts.count(v)) sum += coef;
      if (sum != 0) return "a row does not vanish on the subset";
    }
    return std::nullopt;
  }
  if (kind == "sgo-counterexample" || kind == "sgo-not-unique") {
    Graph g = as_graph(parse_graph(w.at("graph").get<std::string>()));
    const bool unique = g.connected() && count_proper_3_colorings(g, 6) == 6;
    if (kind == "sgo-not-unique") {
      if (unique) return "graph is uniquely 3-colorable";
      return std::nullopt;
    }
    if (!unique) return "graph is not uniquely 3-colorable";
    auto part = unique_3_partition(g);
    const EdgeColoring col = coloring_from_json(g, w.at("coloring"));
    if (!both_colors_present(col)) return "coloring uses one color";
    if (has_tagged_cycle(g.with_parts(*part), col)) return "coloring has a tagged cycle";
    return std::nullopt;
  }
  if (kind == "increasing-free-coloring") {
    Graph g = as_graph(parse_graph(w.at("graph").get<std::string>()));
    const auto col = vec(w.at("coloring"));
    const int t = w.at("t");
    if (static_cast<int>(col.size()) != g.vertex_count()) return "coloring has the wrong length";
    for (int c : col)
      if (c < 0 || c >= t) return "color out of range";
    for (const auto& e : g.edges())
      if (col[e.u] == col[e.v]) return "coloring is not proper";
    if (find_increasing_cycle(g, col)) return "coloring has an increasing cycle";
    return std::nullopt;
  }
  if (kind == "pseudo-property") return check_pseudo(w);
  return "unknown witness kind " + kind;
}

Outcome cmd_verify(const std::string& path) {
  Json w;
  try {
    w = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  Outcome o;
  o.parameters = {{"witness", path}};
  o.results["kind"] = w.value("kind", "");
  auto problem = check_witness(w);
  o.results["confirmed"] = !problem.has_value();
  if (problem) {
    o.results["problem"] = *problem;
    o.code = kFail;
    o.verdict = "refuted";
  } else {
    o.verdict = "confirmed";
  }
  return o;
}

// ---------------------------------------------------------------- output

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else {
    out.emplace_back(prefix, j);
  }
}

std::string to_csv(const Json& report, const Json& table) {
  std::ostringstream s;
  if (!table.empty()) {
    std::vector<std::string> cols;
    for (auto it = table[0].begin(); it != table[0].end(); ++it) cols.push_back(it.key());
    for (std::size_t i = 0; i < cols.size(); ++i) s << (i ? "," : "") << cols[i];
    s << "\n";
    for (const auto& row : table) {
      for (std::size_t i = 0; i < cols.size(); ++i)
        s << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "");
      s << "\n";
    }
    return s.str();
  }
  std::vector<std::pair<std::string, Json>> flat;
  flatten(report, "", flat);
  s << "key,value\n";
  for (const auto& [k, v] : flat) s << csv_cell(k) << "," << csv_cell(v) << "\n";
  return s.str();
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + tok + "'");
    }
    if (used != tok.size()) throw UsageError("bad integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string strip_timing(const std::string& report_json) {
  Json j = Json::parse(report_json);
  j.erase("wall_clock_ms");
  return j.dump(2);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"removal-lemma workbench"};
  app.name("rlab");
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "seed (u64)");
    sub->add_option("--out", c.out, "output path");
    sub->add_option("--threads", c.threads, "worker threads (0 = all cores)");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--witness-dir", c.witness_dir, "directory for witness files");
  };
  std::function<Outcome()> action;

  // rs build
  auto* rs = app.add_subcommand("rs", "RS(m, R) constructions")->require_subcommand(1);
  auto* rs_build = rs->add_subcommand("build", "build RS(m, R)");
  add_common(rs_build);
  std::int64_t m = 0;
  std::string r_text, r_file;
  rs_build->add_option("--m", m, "m")->required();
  rs_build->add_option("--r", r_text, "R as a comma list");
  rs_build->add_option("--r-file", r_file, "R file")->check(CLI::ExistingFile);
  rs_build->callback([&] {
    action = [&] { return cmd_rs_build(c, m, r_text.empty() ? std::vector<std::int64_t>{} : parse_int_list(r_text), r_file); };
  });

  // eqs extract | genus
  auto* eqs = app.add_subcommand("eqs", "equation systems")->require_subcommand(1);
  std::string graph, perm = "ABC", system;
  auto* eqs_extract = eqs->add_subcommand("extract", "cycle system of a graph");
  add_common(eqs_extract);
  eqs_extract->add_option("--graph", graph)->required()->check(CLI::ExistingFile);
  eqs_extract->add_option("--perm", perm);
  eqs_extract->callback([&] { action = [&] { return cmd_eqs_extract(c, graph, perm); }; });
  auto* eqs_genus = eqs->add_subcommand("genus", "exact genus-one check");
  add_common(eqs_genus);
  int cap = 24;
  eqs_genus->add_option("--system", system)->required()->check(CLI::ExistingFile);
  eqs_genus->add_option("--cap", cap);
  eqs_genus->callback([&] { action = [&] { return cmd_eqs_genus(c, system, cap); }; });

  // sgo certify
  auto* sgo = app.add_subcommand("sgo", "strongly genus-one certification")->require_subcommand(1);
  auto* sgo_certify = sgo->add_subcommand("certify", "certify a graph");
  add_common(sgo_certify);
  std::uint64_t budget = 0, samples = 100000;
  sgo_certify->add_option("--graph", graph)->required()->check(CLI::ExistingFile);
  sgo_certify->add_option("--budget", budget, "max colorings (0 = all)");
  sgo_certify->add_option("--samples", samples, "Monte Carlo colorings beyond the exact cap");
  sgo_certify->callback([&] { action = [&] { return cmd_sgo_certify(c, graph, budget, samples); }; });

  // pseudo run
  auto* pseudo = app.add_subcommand("pseudo", "triangle-deletion pipeline")->require_subcommand(1);
  auto* pseudo_run = pseudo->add_subcommand("run", "sample, delete, check");
  add_common(pseudo_run);
  int n = 0;
  double p = -1;
  std::string check = "all", rule = "lex", graph_out;
  std::uint64_t trials = 1000;
  bool exact = false;
  pseudo_run->add_option("--n", n)->required();
  pseudo_run->add_option("--p", p, "edge probability (default n^-3/4)");
  pseudo_run->add_option("--check", check, "all, none, or a comma list of properties");
  pseudo_run->add_option("--rule", rule, "lex or ca");
  pseudo_run->add_option("--trials", trials, "falsification trials per property");
  pseudo_run->add_flag("--exact", exact, "exact checks where available");
  pseudo_run->add_option("--graph-out", graph_out, "write the output graph");
  pseudo_run->callback([&] {
    action = [&] { return cmd_pseudo_run(c, n, p, check, rule, trials, exact, graph_out); };
  });

  // convex search
  auto* convex = app.add_subcommand("convex", "convex equations in a cycle span")->require_subcommand(1);
  auto* convex_search = convex->add_subcommand("search", "LP search");
  add_common(convex_search);
  bool all_positions = false;
  convex_search->add_option("--system", system)->check(CLI::ExistingFile);
  convex_search->add_option("--graph", graph)->check(CLI::ExistingFile);
  convex_search->add_option("--perm", perm);
  convex_search->add_flag("--all", all_positions, "decide every position");
  convex_search->callback([&] {
    action = [&] { return cmd_convex_search(c, system, graph, perm, all_positions); };
  });

  // sampler trial | estimate | family
  auto* sampler = app.add_subcommand("sampler", "odd-cycle sampling")->require_subcommand(1);
  SamplerArgs sa;
  std::string sampler_action;
  const std::pair<const char*, const char*> sampler_subs[] = {
      {"trial", "one sampling trial"},
      {"estimate", "success frequency with a Wilson interval"},
      {"family", "pick the target length from a growth function, then estimate"}};
  for (auto [name, about] : sampler_subs) {
    auto* sub = sampler->add_subcommand(name, about);
    add_common(sub);
    sub->add_option("--graph", sa.graph)->required()->check(CLI::ExistingFile);
    sub->add_option("--k", sa.k);
    sub->add_option("--l", sa.ell);
    sub->add_option("--eps", sa.eps, "epsilon (default |packing|/n^2)");
    sub->add_option("--trials", sa.trials);
    sub->add_option("--mode", sa.mode, "structured or oblivious");
    sub->add_option("--q", sa.q, "draws per set (default: formula)");
    sub->add_flag("--cap-q", sa.cap_q, "cap q at the vertex count");
    sub->add_option("--l1", sa.ell1, "family: first length");
    sub->add_option("--g-step", sa.g_step, "family: g(x) = x + step");
    sub->add_option("--g-table", sa.g_table, "family: g as x:g(x),...");
    sub->callback([&, name] {
      sampler_action = name;
      action = [&] { return cmd_sampler(c, sampler_action, sa); };
    });
  }

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force reference checks");
  add_common(oracle);
  std::string what;
  int q = 3, t = 3;
  double eps = 0.1;
  oracle->add_option("what", what, "genus, colorings, triangles, increasing, peel")->required();
  oracle->add_option("--graph", graph)->check(CLI::ExistingFile);
  oracle->add_option("--system", system)->check(CLI::ExistingFile);
  oracle->add_option("--q", q);
  oracle->add_option("--t", t);
  oracle->add_option("--eps", eps);
  oracle->callback([&] { action = [&] { return cmd_oracle(c, what, graph, system, q, t, eps); }; });

  // verify
  auto* verify = app.add_subcommand("verify", "re-check a witness file");
  add_common(verify);
  std::string witness;
  verify->add_option("--witness", witness)->required()->check(CLI::ExistingFile);
  verify->callback([&] { action = [&] { return cmd_verify(witness); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  if (c.threads == 0) c.threads = default_threads();

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = action();
  } catch (const UsageError& e) {
    err << "rlab: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "rlab: parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "rlab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "rlab: " << e.what() << "\n";
    return kUsage;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  Json report;
  report["command"] = join(args);
  report["seed"] = c.seed;
  report["threads"] = c.threads;
  report["parameters"] = o.parameters;
  report["verdict"] = o.verdict;
  report["results"] = o.results;
  report["witness_files"] = o.witness_files;
  report["wall_clock_ms"] = ms;

  std::string text = c.format == "csv" ? to_csv(report, o.table) : report.dump(2) + "\n";
  // rs build and eqs extract use --out for their artifact; the report then
  // goes next to it (rs) or to standard output.
  const bool out_is_artifact = rs_build->parsed() || eqs_extract->parsed();
  if (!c.out.empty() && !out_is_artifact) {
    save_text_file(c.out, text);
  } else {
    if (rs_build->parsed() && !c.out.empty()) save_text_file(c.out + ".json", report.dump(2) + "\n");
    out << text;
  }
  return o.code;
}

}  // namespace rlab::cli
